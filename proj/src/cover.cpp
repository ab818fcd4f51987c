#include "cover.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace octic {

// --- CurveGraph basics ---------------------------------------------------------

bool CurveGraph::has_node(const std::string& id) const {
    for (const CurveNode& n : nodes)
        if (n.id == id) return true;
    return false;
}

CurveNode& CurveGraph::node(const std::string& id) {
    for (CurveNode& n : nodes)
        if (n.id == id) return n;
    throw std::invalid_argument("CurveGraph::node: no node " + id);
}

const CurveNode& CurveGraph::node(const std::string& id) const {
    for (const CurveNode& n : nodes)
        if (n.id == id) return n;
    throw std::invalid_argument("CurveGraph::node: no node " + id);
}

void CurveGraph::add_node(std::string id, Int square, Int mult, CurveKind kind) {
    if (has_node(id)) throw std::invalid_argument("CurveGraph::add_node: duplicate " + id);
    nodes.push_back({std::move(id), std::move(square), std::move(mult), kind});
}

void CurveGraph::add_contact(const std::string& a, const std::string& b, Int mult) {
    node(a);
    node(b);
    if (a == b) throw std::invalid_argument("CurveGraph::add_contact: self-contact");
    if (mult < 1) throw std::invalid_argument("CurveGraph::add_contact: order < 1");
    MeetPoint p;
    p.curves = {a, b};
    if (mult >= 2) {
        p.tang_a = 0;
        p.tang_b = 1;
        p.tang_order = mult;
    }
    points.push_back(std::move(p));
}

void add_tangent_germ(CurveGraph& G, const std::string& curve, const Int& m,
                      const std::string& germ_id) {
    G.add_node(germ_id, 0, 1, CurveKind::BranchGerm);
    G.add_contact(curve, germ_id, m);
}

void add_two_branch_germ(CurveGraph& G, const std::string& curve, const Int& k,
                         const std::string& germ_id1, const std::string& germ_id2) {
    if (k < 1) throw std::invalid_argument("add_two_branch_germ: k < 1");
    G.add_node(germ_id1, 0, 1, CurveKind::BranchGerm);
    G.add_node(germ_id2, 0, 1, CurveKind::BranchGerm);
    MeetPoint p;
    p.curves = {curve, germ_id1, germ_id2};
    if (k >= 2) {
        p.tang_a = 1;
        p.tang_b = 2;
        p.tang_order = k;
    }
    G.points.push_back(std::move(p));
}

void add_cusp_germ(CurveGraph& G, const std::string& curve, const Int& k,
                   const std::string& germ_id) {
    if (k < 1) throw std::invalid_argument("add_cusp_germ: k < 1");
    G.add_node(germ_id, 0, 1, CurveKind::BranchGerm);
    MeetPoint p;
    p.curves = {curve};
    p.cusp_curve = germ_id;
    p.cusp_k = k;
    G.points.push_back(std::move(p));
}

namespace {

std::string fresh_exceptional_id(const CurveGraph& G) {
    long long best = 0;
    for (const CurveNode& n : G.nodes) {
        if (n.id.size() < 2 || n.id[0] != 'E') continue;
        bool digits = true;
        for (size_t i = 1; i < n.id.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(n.id[i]))) digits = false;
        if (digits) best = std::max(best, std::stoll(n.id.substr(1)));
    }
    return "E" + std::to_string(best + 1);
}

}  // namespace

// --- blow-up -------------------------------------------------------------------

CurveGraph blow_up(const CurveGraph& G, size_t point_index, std::string new_id) {
    if (point_index >= G.points.size())
        throw std::invalid_argument("blow_up: no such point");
    CurveGraph H = G;
    MeetPoint p = H.points[point_index];
    H.points.erase(H.points.begin() + static_cast<long>(point_index));
    if (new_id.empty()) new_id = fresh_exceptional_id(H);

    // Multiplicity of the pulled-back branch divisor at the point: smooth
    // local branches count once, a cusp y^2 = x^(2k+1) counts twice.
    Int e_mult = 0;
    for (const std::string& c : p.curves) e_mult += H.node(c).mult;
    if (p.has_cusp()) e_mult += 2 * H.node(p.cusp_curve).mult;

    // Squares drop by the local multiplicity squared.
    for (const std::string& c : p.curves) H.node(c).square -= 1;
    if (p.has_cusp()) H.node(p.cusp_curve).square -= 4;

    H.add_node(new_id, -1, e_mult, CurveKind::Exceptional);

    // Strict transforms: branches with distinct tangent directions now meet
    // the exceptional curve at distinct points; a tangent pair lands on a
    // common point with contact order dropped by one; a cusp keeps its
    // singular point on the exceptional curve until its parameter runs out,
    // then becomes smooth and simply tangent to the exceptional curve.
    for (size_t i = 0; i < p.curves.size(); ++i) {
        if (static_cast<int>(i) == p.tang_a || static_cast<int>(i) == p.tang_b) continue;
        MeetPoint q;
        q.curves = {new_id, p.curves[i]};
        H.points.push_back(std::move(q));
    }
    if (p.has_tangency()) {
        MeetPoint q;
        q.curves = {new_id, p.curves[static_cast<size_t>(p.tang_a)],
                    p.curves[static_cast<size_t>(p.tang_b)]};
        if (p.tang_order - 1 >= 2) {
            q.tang_a = 1;
            q.tang_b = 2;
            q.tang_order = p.tang_order - 1;
        }
        H.points.push_back(std::move(q));
    }
    if (p.has_cusp()) {
        MeetPoint q;
        if (p.cusp_k - 1 >= 1) {
            q.curves = {new_id};
            q.cusp_curve = p.cusp_curve;
            q.cusp_k = p.cusp_k - 1;
        } else {
            q.curves = {new_id, p.cusp_curve};
            q.tang_a = 0;
            q.tang_b = 1;
            q.tang_order = 2;
        }
        H.points.push_back(std::move(q));
    }
    return H;
}

CurveGraph blow_up_free_point(const CurveGraph& G, const std::string& node_id,
                              std::string new_id) {
    CurveGraph H = G;
    if (new_id.empty()) new_id = fresh_exceptional_id(H);
    CurveNode& n = H.node(node_id);
    n.square -= 1;
    Int m = n.mult;
    H.add_node(new_id, -1, m, CurveKind::Exceptional);
    MeetPoint q;
    q.curves = {new_id, node_id};
    H.points.push_back(std::move(q));
    return H;
}

CurveGraph blow_down(const CurveGraph& G, const std::string& node_id) {
    const CurveNode& e = G.node(node_id);
    if (e.square != -1)
        throw std::invalid_argument("blow_down: " + node_id + " is not a (-1)-curve");
    std::vector<std::string> nbrs;
    CurveGraph H;
    H.nodes = G.nodes;
    for (const MeetPoint& p : G.points) {
        bool touches = std::find(p.curves.begin(), p.curves.end(), node_id) != p.curves.end() ||
                       p.cusp_curve == node_id;
        if (!touches) {
            H.points.push_back(p);
            continue;
        }
        if (p.has_tangency() || p.has_cusp() || p.curves.size() != 2)
            throw std::invalid_argument("blow_down: " + node_id + " has a non-transverse meeting");
        nbrs.push_back(p.curves[0] == node_id ? p.curves[1] : p.curves[0]);
    }
    for (const std::string& n : nbrs) H.node(n).square += 1;
    H.nodes.erase(std::remove_if(H.nodes.begin(), H.nodes.end(),
                                 [&](const CurveNode& n) { return n.id == node_id; }),
                  H.nodes.end());
    if (nbrs.size() >= 2) {
        // The images of the former neighbours all pass through the image
        // point, pairwise transversely (their directions were distinct).
        MeetPoint q;
        q.curves = nbrs;
        H.points.push_back(std::move(q));
    }
    return H;
}

CurveGraph branch_parity_adjust(const CurveGraph& G, const std::map<std::string, Int>& mults) {
    CurveGraph H = G;
    for (const auto& [id, m] : mults) H.node(id).mult = m;
    return H;
}

// --- log resolution ------------------------------------------------------------

namespace {

// A point blocks SNC-ness if it carries any non-transverse local data, has
// more than two branches, or is a transverse meeting of two branch curves.
bool point_needs_blow_up(const CurveGraph& G, const MeetPoint& p) {
    if (p.has_tangency() || p.has_cusp()) return true;
    if (p.curves.size() != 2) return true;
    return G.node(p.curves[0]).in_branch() && G.node(p.curves[1]).in_branch();
}

}  // namespace

bool is_snc(const CurveGraph& G) {
    for (const MeetPoint& p : G.points)
        if (point_needs_blow_up(G, p)) return false;
    return true;
}

CurveGraph log_resolve(const CurveGraph& G) {
    CurveGraph H = G;
    // Each blow-up strictly decreases (total contact order) + 3*(cusp
    // parameters) + (branch-branch adjacencies); the cap is a safety net.
    for (int guard = 0; guard < 100000; ++guard) {
        size_t idx = H.points.size();
        for (size_t i = 0; i < H.points.size(); ++i)
            if (point_needs_blow_up(H, H.points[i])) {
                idx = i;
                break;
            }
        if (idx == H.points.size()) return H;
        H = blow_up(H, idx);
    }
    throw std::runtime_error("log_resolve: did not terminate");
}

// --- double cover --------------------------------------------------------------

CoverGraph double_cover(const CurveGraph& G) {
    if (!is_snc(G))
        throw std::invalid_argument("double_cover: configuration is not log resolved");

    // Branch incidences per curve: points where it meets an odd-multiplicity
    // curve (including the branch germs themselves).
    std::map<std::string, int> incid;
    for (const CurveNode& n : G.nodes) incid[n.id] = 0;
    for (const MeetPoint& p : G.points) {
        if (G.node(p.curves[1]).in_branch()) incid[p.curves[0]] += 1;
        if (G.node(p.curves[0]).in_branch()) incid[p.curves[1]] += 1;
    }

    CoverGraph C;
    enum class Lift { Branch, Single, Split };
    std::map<std::string, Lift> lift;
    for (const CurveNode& n : G.nodes) {
        if (n.kind == CurveKind::BranchGerm) continue;
        if (n.in_branch()) {
            if (n.square % 2 != 0)
                throw std::invalid_argument(
                    "cover not defined on this configuration: branch curve " + n.id +
                    " has odd self-intersection " + n.square.str());
            lift[n.id] = Lift::Branch;
            C.nodes.push_back({n.id, n.square / 2});
        } else if (incid[n.id] > 0) {
            if (incid[n.id] % 2 != 0)
                throw std::invalid_argument(
                    "cover not defined on this configuration: curve " + n.id +
                    " meets the branch locus " + std::to_string(incid[n.id]) + " times");
            lift[n.id] = Lift::Single;
            C.nodes.push_back({n.id, 2 * n.square});
        } else {
            lift[n.id] = Lift::Split;
            C.nodes.push_back({n.id + "_a", n.square});
            C.nodes.push_back({n.id + "_b", n.square});
        }
    }

    // Count check: one lift per branch or incident curve, two per curve
    // disjoint from the branch locus.
    {
        size_t expect = 0;
        for (const CurveNode& n : G.nodes) {
            if (n.kind == CurveKind::BranchGerm) continue;
            expect += (lift[n.id] == Lift::Split) ? 2 : 1;
        }
        if (C.nodes.size() != expect)
            throw std::logic_error("double_cover: lifted-curve count mismatch");
    }

    for (const MeetPoint& p : G.points) {
        const CurveNode& a = G.node(p.curves[0]);
        const CurveNode& b = G.node(p.curves[1]);
        if (a.kind == CurveKind::BranchGerm || b.kind == CurveKind::BranchGerm) continue;
        bool abr = a.in_branch(), bbr = b.in_branch();
        if (abr && bbr) throw std::logic_error("double_cover: branch curves meet");
        if (abr || bbr) {
            // A branch point: one preimage, joining the two single lifts.
            C.edges.emplace_back(a.id, b.id);
            continue;
        }
        // Away from the branch the cover is unramified: two preimage points.
        Lift la = lift[a.id], lb = lift[b.id];
        if (la == Lift::Single && lb == Lift::Single) {
            C.edges.emplace_back(a.id, b.id);
            C.edges.emplace_back(a.id, b.id);
        } else if (la == Lift::Single) {
            C.edges.emplace_back(a.id, b.id + "_a");
            C.edges.emplace_back(a.id, b.id + "_b");
        } else if (lb == Lift::Single) {
            C.edges.emplace_back(a.id + "_a", b.id);
            C.edges.emplace_back(a.id + "_b", b.id);
        } else {
            C.edges.emplace_back(a.id + "_a", b.id + "_a");
            C.edges.emplace_back(a.id + "_b", b.id + "_b");
        }
    }
    return C;
}

// --- families ------------------------------------------------------------------

namespace {

long long to_ll(const Int& v) { return v.convert_to<long long>(); }

}  // namespace

CoverGraph family_graph(FamilyCase c, Int t1, Int t2) {
    CoverGraph G;
    auto add = [&](const std::string& id, Int sq) { G.nodes.push_back({id, std::move(sq)}); };
    auto join = [&](const std::string& a, const std::string& b) { G.edges.emplace_back(a, b); };
    switch (c) {
        case FamilyCase::IIa:
            add("c", -4);
            for (int i = 1; i <= 4; ++i) {
                add("l" + std::to_string(i), -2);
                join("c", "l" + std::to_string(i));
            }
            break;
        case FamilyCase::IIb: {
            if (t1 < 1) throw std::invalid_argument("family_graph: IIb needs t >= 1");
            add("d", -4);
            add("e", -2);
            add("f", -2);
            join("d", "e");
            join("d", "f");
            std::string prev = "d";
            for (long long i = 1; i <= to_ll(t1); ++i) {
                std::string id = "a" + std::to_string(i);
                add(id, -2);
                join(prev, id);
                prev = id;
            }
            add("g", -2);
            add("h", -2);
            join(prev, "g");
            join(prev, "h");
            break;
        }
        case FamilyCase::IIc: {
            if (t1 < 1 || t2 < 1) throw std::invalid_argument("family_graph: IIc needs t1,t2 >= 1");
            add("d", -4);
            for (int side = 0; side < 2; ++side) {
                std::string tag = side == 0 ? "a" : "b";
                long long len = to_ll(side == 0 ? t1 : t2);
                std::string prev = "d";
                for (long long i = 1; i <= len; ++i) {
                    std::string id = tag + std::to_string(i);
                    add(id, -2);
                    join(prev, id);
                    prev = id;
                }
                add(tag + "_g", -2);
                add(tag + "_h", -2);
                join(prev, tag + "_g");
                join(prev, tag + "_h");
            }
            break;
        }
        case FamilyCase::IId:
            // Five -2 curves in a chain, the centre also carrying a -4
            // which in turn carries one more -2.
            for (const char* id : {"e2", "d2", "a2", "b2", "c2"}) add(id, -2);
            add("f2", -4);
            add("g2", -2);
            join("e2", "d2");
            join("d2", "a2");
            join("a2", "b2");
            join("b2", "c2");
            join("a2", "f2");
            join("f2", "g2");
            break;
        case FamilyCase::IIe:
            // Seven -2 curves in a chain with a single -4 leg at the centre.
            for (const char* id : {"g1", "e1", "d1", "a1", "b1", "c1", "h1"}) add(id, -2);
            add("f1", -4);
            join("g1", "e1");
            join("e1", "d1");
            join("d1", "a1");
            join("a1", "b1");
            join("b1", "c1");
            join("c1", "h1");
            join("a1", "f1");
            break;
    }
    return G;
}

FamilyBounds family_bounds(FamilyCase c, const Int& t1, const Int& t2) {
    FamilyBounds r;
    if (c == FamilyCase::IIb && t1 > 19) {
        r.ok = false;
        r.warning = "chain length t = " + t1.str() +
                    " exceeds the sharp bound 19 for this family";
    }
    if (c == FamilyCase::IIc && t1 + t2 > 38) {
        r.ok = false;
        r.warning = "t1 + t2 = " + Int(t1 + t2).str() +
                    " exceeds the proven bound 38 (conjectured sharp bound: 21)";
    }
    return r;
}

// --- canonical codes -----------------------------------------------------------

namespace {

struct Adj {
    std::vector<std::string> ids;
    std::map<std::string, Int> square;
    std::map<std::string, std::vector<std::string>> nbr;
};

Adj adjacency(const CoverGraph& G) {
    Adj A;
    for (const CoverNode& n : G.nodes) {
        A.ids.push_back(n.id);
        A.square[n.id] = n.square;
        A.nbr[n.id];
    }
    for (const auto& [a, b] : G.edges) {
        A.nbr.at(a).push_back(b);
        A.nbr.at(b).push_back(a);
    }
    return A;
}

// Canonical rooted-tree code with square labels (AHU encoding).
std::string tree_code(const Adj& A, const std::string& v, const std::string& parent) {
    std::vector<std::string> kids;
    for (const std::string& w : A.nbr.at(v))
        if (w != parent) kids.push_back(tree_code(A, w, v));
    std::sort(kids.begin(), kids.end());
    std::string out = "(" + A.square.at(v).str();
    for (const std::string& k : kids) out += k;
    return out + ")";
}

}  // namespace

std::string canonical_code(const CoverGraph& G) {
    Adj A = adjacency(G);
    // Split into connected components; each must be a tree (our dual graphs
    // of resolved singularities always are).
    std::set<std::string> seen;
    std::vector<std::string> component_codes;
    for (const std::string& root : A.ids) {
        if (seen.count(root)) continue;
        std::vector<std::string> comp{root};
        seen.insert(root);
        size_t edges_in_comp = 0;
        for (size_t i = 0; i < comp.size(); ++i) {
            for (const std::string& w : A.nbr.at(comp[i])) {
                ++edges_in_comp;
                if (seen.insert(w).second) comp.push_back(w);
            }
        }
        if (edges_in_comp / 2 + 1 != comp.size())
            throw std::invalid_argument("canonical_code: component is not a tree");
        std::string best;
        for (const std::string& v : comp) {
            std::string code = tree_code(A, v, "");
            if (best.empty() || code < best) best = code;
        }
        component_codes.push_back(best);
    }
    std::sort(component_codes.begin(), component_codes.end());
    std::string out;
    for (const std::string& c : component_codes) out += c;
    return out;
}

FamilyMatch match_family(const CoverGraph& G) {
    std::string code = canonical_code(G);
    FamilyMatch m;
    size_t n = G.nodes.size();
    if (code == canonical_code(family_graph(FamilyCase::IIa))) {
        m.kind = FamilyMatch::StarIIa;
        return m;
    }
    if (n == 7 && code == canonical_code(family_graph(FamilyCase::IId))) {
        m.kind = FamilyMatch::ShapeIId;
        return m;
    }
    if (n == 8 && code == canonical_code(family_graph(FamilyCase::IIe))) {
        m.kind = FamilyMatch::ShapeIIe;
        return m;
    }
    if (n >= 6 && code == canonical_code(family_graph(FamilyCase::IIb, Int(n - 5)))) {
        m.kind = FamilyMatch::ChainIIb;
        m.t1 = Int(n - 5);
        return m;
    }
    if (n >= 7) {
        // IIc(t1, t2) has t1 + t2 + 5 nodes.
        for (size_t t1 = 1; t1 <= n - 6; ++t1) {
            size_t t2 = n - 5 - t1;
            if (code == canonical_code(family_graph(FamilyCase::IIc, Int(t1), Int(t2)))) {
                m.kind = FamilyMatch::ForkIIc;
                m.t1 = Int(t1);
                m.t2 = Int(t2);
                return m;
            }
        }
    }
    return m;
}

std::map<std::string, Rat> graph_discrepancies(const CoverGraph& G) {
    size_t n = G.nodes.size();
    std::map<std::string, size_t> idx;
    for (size_t i = 0; i < n; ++i) idx[G.nodes[i].id] = i;
    MatQ N(n, VecQ(n, Rat(0)));
    VecQ beta(n);
    for (size_t i = 0; i < n; ++i) {
        N[i][i] = Rat(G.nodes[i].square);
        beta[i] = Rat(-2 - G.nodes[i].square);
    }
    for (const auto& [a, b] : G.edges) {
        N[idx.at(a)][idx.at(b)] += 1;
        N[idx.at(b)][idx.at(a)] += 1;
    }
    VecQ alpha = solve_linear(N, beta);
    std::map<std::string, Rat> out;
    for (size_t i = 0; i < n; ++i) out[G.nodes[i].id] = alpha[i];
    return out;
}

std::optional<std::vector<Int>> cover_chain(const CoverGraph& G, const std::string& root) {
    Adj A = adjacency(G);
    if (!A.nbr.count(root)) return std::nullopt;
    // Collect the component of `root`.
    std::set<std::string> comp{root};
    std::vector<std::string> stack{root};
    while (!stack.empty()) {
        std::string v = stack.back();
        stack.pop_back();
        for (const std::string& w : A.nbr.at(v))
            if (comp.insert(w).second) stack.push_back(w);
    }
    size_t edge_count = 0;
    std::vector<std::string> ends;
    for (const std::string& v : comp) {
        size_t deg = A.nbr.at(v).size();
        edge_count += deg;
        if (deg > 2) return std::nullopt;
        if (deg <= 1) ends.push_back(v);
    }
    if (edge_count / 2 + 1 != comp.size()) return std::nullopt;  // cycle
    std::sort(ends.begin(), ends.end());
    std::string cur = comp.size() == 1 ? root : ends.front(), prev;
    std::vector<Int> squares;
    for (size_t i = 0; i < comp.size(); ++i) {
        squares.push_back(A.square.at(cur));
        for (const std::string& w : A.nbr.at(cur))
            if (w != prev) {
                prev = cur;
                cur = w;
                break;
            }
    }
    return squares;
}

// --- serialization -------------------------------------------------------------

std::string cover_to_dot(const CoverGraph& G) {
    std::ostringstream os;
    os << "graph cover {\n  node [shape=circle];\n";
    std::vector<CoverNode> ns = G.nodes;
    std::sort(ns.begin(), ns.end(), [](const CoverNode& a, const CoverNode& b) { return a.id < b.id; });
    for (const CoverNode& n : ns)
        os << "  \"" << n.id << "\" [label=\"" << n.id << "\\n" << n.square.str() << "\"];\n";
    auto es = G.edges;
    for (auto& e : es)
        if (e.second < e.first) std::swap(e.first, e.second);
    std::sort(es.begin(), es.end());
    for (const auto& [a, b] : es) os << "  \"" << a << "\" -- \"" << b << "\";\n";
    os << "}\n";
    return os.str();
}

std::string curve_to_dot(const CurveGraph& G) {
    std::ostringstream os;
    os << "graph curves {\n  node [shape=circle];\n";
    std::vector<CurveNode> ns = G.nodes;
    std::sort(ns.begin(), ns.end(), [](const CurveNode& a, const CurveNode& b) { return a.id < b.id; });
    for (const CurveNode& n : ns) {
        os << "  \"" << n.id << "\" [label=\"" << n.id << "\\n" << n.square.str() << "\"";
        if (n.in_branch()) os << " style=bold";
        if (n.kind == CurveKind::BranchGerm) os << " shape=box";
        os << "];\n";
    }
    struct E {
        std::string a, b;
        Int m;
    };
    std::vector<E> es;
    for (const MeetPoint& p : G.points) {
        for (size_t i = 0; i < p.curves.size(); ++i)
            for (size_t j = i + 1; j < p.curves.size(); ++j) {
                Int m = 1;
                if (static_cast<int>(i) == p.tang_a && static_cast<int>(j) == p.tang_b)
                    m = p.tang_order;
                E e{p.curves[i], p.curves[j], m};
                if (e.b < e.a) std::swap(e.a, e.b);
                es.push_back(std::move(e));
            }
        if (p.has_cusp())
            for (const std::string& c : p.curves) {
                E e{c, p.cusp_curve, 2};
                if (e.b < e.a) std::swap(e.a, e.b);
                es.push_back(std::move(e));
            }
    }
    std::sort(es.begin(), es.end(),
              [](const E& x, const E& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    for (const E& e : es) {
        os << "  \"" << e.a << "\" -- \"" << e.b << "\"";
        if (e.m > 1) os << " [label=\"" << e.m.str() << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace octic
