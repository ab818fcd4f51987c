#include "classify.hpp"

#include <algorithm>
#include <set>

namespace octic {

Int octic_degree(const SurfaceSpec& spec) {
    switch (spec.kind) {
        case SurfaceSpec::P: return 8 * spec.a * spec.b * spec.c;
        case SurfaceSpec::HP: return 8 * spec.c;
        case SurfaceSpec::HPpair: return 8 * spec.a * spec.b;
    }
    throw std::logic_error("octic_degree: bad kind");
}

// --- non-normality sweep -----------------------------------------------------

const std::vector<std::array<Int, 3>>& sweep_exceptions() {
    static const std::vector<std::array<Int, 3>> list = {
        {1, 1, 1}, {1, 1, 2}, {1, 2, 5}, {1, 5, 13}, {1, 13, 34}, {2, 5, 29}};
    return list;
}

std::optional<Vec> sweep_witness(const MutationWord& w) {
    // The base word is the first two letters, except that words starting 11
    // are governed by their first three.  Words shorter than their base word
    // carry one of the exceptional triples and have no witness.
    if (w.size() < 2) return std::nullopt;
    if (w[0] == 0) return w[1] == 0 ? Vec{-1, 1} : Vec{13, 1};
    if (w[1] == 0) return Vec{0, 1};
    if (w.size() < 3) return std::nullopt;
    return w[2] == 0 ? Vec{0, 1} : Vec{14, 1};
}

namespace {

bool is_sweep_exception(const std::array<Int, 3>& t) {
    const auto& ex = sweep_exceptions();
    return std::find(ex.begin(), ex.end(), t) != ex.end();
}

}  // namespace

SweepRecord sweep_word(const MutationWord& word) {
    SweepRecord r;
    r.word = word;
    MarkovTriangle T = markov_triangle(word);
    r.triple = T.triple;
    r.exceptional = is_sweep_exception(T.triple.sorted());

    // Trade both bottom corners (a smooth corner trades to nothing) and
    // measure how far each marked cut-parallel curve can sweep inward.
    TropDiagram D = diagram_for(T);
    for (const RatPoint& p : {T.p0, T.p1}) {
        try {
            D = nodal_trade(D, vertex_index(D.poly, p));
        } catch (const std::invalid_argument&) {
        }
    }
    std::vector<Vec> supp = lattice_points(D.poly);
    for (size_t k = 0; k < D.cuts.size(); ++k) {
        MarkedOffset mo;
        mo.cut = k;
        mo.normal = trade_marked_normal(D, D.cuts[k]);
        mo.full = support_offset(D.origin, mo.normal, supp);
        // Interior rule: support points on the fixed bottom line y = 0 sit
        // at the endpoint of the sweeping segment, never in its relative
        // interior, so they cannot halt the sweep and are excluded.
        bool any = false;
        for (const Vec& s : supp) {
            if (s.y == 0) continue;
            Rat off = dot(D.origin - RatPoint(s), mo.normal);
            if (!any || off > mo.interior) {
                mo.interior = off;
                any = true;
            }
        }
        if (!any) throw std::logic_error("sweep_word: no interior support");
        if (r.offsets.empty() || mo.interior < r.min_interior) r.min_interior = mo.interior;
        r.offsets.push_back(std::move(mo));
    }
    r.oracle_nonnormal = !r.offsets.empty() && r.min_interior <= -2;

    r.witness = sweep_witness(word);
    if (r.witness) {
        try {
            r.certificate_holds = persistence_certificate(word, *r.witness).holds();
        } catch (const std::invalid_argument&) {
            r.certificate_holds = false;
        }
    }
    return r;
}

namespace {

SweepResult sweep_impl(int depth, bool parallel) {
    if (depth < 2) throw std::invalid_argument("nonnormality_sweep: depth must be >= 2");
    std::vector<TopographNode> nodes = topograph(depth);
    SweepResult res;
    res.depth = depth;
    res.records.resize(nodes.size());

    auto run = [&](size_t i) {
        if (i < 2) {
            // (1,1,1) and (1,1,2) predate the root triangle: no diagram,
            // exceptional by the list.
            SweepRecord r;
            r.triple = {nodes[i].triple[0], nodes[i].triple[1], nodes[i].triple[2]};
            r.exceptional = true;
            res.records[i] = std::move(r);
        } else {
            res.records[i] = sweep_word(nodes[i].word);
        }
    };

#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(nodes.size()); ++i) run(static_cast<size_t>(i));
    } else {
        for (size_t i = 0; i < nodes.size(); ++i) run(i);
    }
#else
    (void)parallel;
    for (size_t i = 0; i < nodes.size(); ++i) run(i);
#endif

    bool agree = true;
    std::set<std::array<Int, 3>> present, uncertified;
    for (const SweepRecord& r : res.records) {
        agree = agree && r.agree();
        present.insert(r.triple.sorted());
        if (!r.certificate_holds) uncertified.insert(r.triple.sorted());
    }
    res.survivors.assign(uncertified.begin(), uncertified.end());

    std::set<std::array<Int, 3>> expected;
    for (const auto& t : sweep_exceptions())
        if (present.count(t)) expected.insert(t);
    res.consistent = agree && uncertified == expected;
    return res;
}

}  // namespace

SweepResult nonnormality_sweep(int depth, bool parallel) { return sweep_impl(depth, parallel); }

SweepResult nonnormality_sweep_serial(int depth) { return sweep_impl(depth, false); }

// --- case labels -------------------------------------------------------------

std::string case_str(BranchCase c) {
    switch (c) {
        case BranchCase::I: return "I";
        case BranchCase::IIa: return "IIa";
        case BranchCase::IIb: return "IIb";
        case BranchCase::IIc: return "IIc";
        case BranchCase::IId: return "IId";
        case BranchCase::IIe: return "IIe";
        case BranchCase::III: return "III";
        case BranchCase::IV: return "IV";
    }
    throw std::logic_error("case_str: bad case");
}

std::optional<BranchCase> parse_case(const std::string& s) {
    for (BranchCase c : {BranchCase::I, BranchCase::IIa, BranchCase::IIb, BranchCase::IIc,
                         BranchCase::IId, BranchCase::IIe, BranchCase::III, BranchCase::IV})
        if (case_str(c) == s) return c;
    return std::nullopt;
}

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::NormalLC: return "normal-lc-stratum";
        case Verdict::NotLogCanonical: return "not-log-canonical";
        case Verdict::NonNormal: return "non-normal";
    }
    throw std::logic_error("verdict_str: bad verdict");
}

std::string CaseVerdict::label() const {
    return surface.str() + " " + (branch_case ? case_str(*branch_case) : std::string("generic"));
}

// --- cover outcomes ----------------------------------------------------------

namespace {

std::string base_id(const std::string& id) {
    if (id.size() > 2 && (id.compare(id.size() - 2, 2, "_a") == 0 ||
                          id.compare(id.size() - 2, 2, "_b") == 0))
        return id.substr(0, id.size() - 2);
    return id;
}

// Chain of squares -> quotient singularity, contracting any (-1)-curves
// first.  Returns nullopt for a chain that contracts away completely.
std::optional<CyclicQuotient> chain_singularity(const std::vector<Int>& squares) {
    std::vector<Int> down = blow_down_chain(squares);
    if (down.empty() || (down.size() == 1 && down[0] >= -1)) return std::nullopt;
    HJChain d;
    for (const Int& s : down) {
        if (s >= -1) throw std::invalid_argument("chain_singularity: not a quotient chain");
        d.push_back(-s);
    }
    // Reading the chain from the other end gives the dual representative;
    // canonicalise to the smaller q.
    Rat v = hj_eval(d);
    CyclicQuotient s(num(v), den(v));
    CyclicQuotient t = s.dual_form();
    return t.q < s.q ? t : s;
}

}  // namespace

CoverOutcome cover_outcome(const CurveGraph& G0) {
    CoverOutcome out;
    if (G0.nodes.empty()) return out;
    CurveGraph R = log_resolve(G0);
    CoverGraph cv = double_cover(R);

    // Keep only the lifts of exceptional curves: boundary curves survive on
    // the cover and are not contracted.
    std::vector<std::string> kept;
    std::map<std::string, Int> square;
    for (const CoverNode& n : cv.nodes) {
        if (R.node(base_id(n.id)).kind != CurveKind::Exceptional) continue;
        kept.push_back(n.id);
        square[n.id] = n.square;
    }
    std::sort(kept.begin(), kept.end());
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [a, b] : cv.edges) {
        if (!square.count(a) || !square.count(b)) continue;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }

    // Connected components, in the order of their least node id.
    std::set<std::string> seen;
    for (const std::string& root : kept) {
        if (seen.count(root)) continue;
        std::vector<std::string> comp{root};
        seen.insert(root);
        for (size_t i = 0; i < comp.size(); ++i)
            for (const std::string& nb : adj[comp[i]])
                if (seen.insert(nb).second) comp.push_back(nb);
        std::sort(comp.begin(), comp.end());

        CoverGraph sub;
        for (const std::string& id : comp) sub.nodes.push_back({id, square[id]});
        for (const auto& [a, b] : cv.edges) {
            if (!std::binary_search(comp.begin(), comp.end(), a) ||
                !std::binary_search(comp.begin(), comp.end(), b))
                continue;
            sub.edges.emplace_back(a, b);
        }

        // A path component contracts to a cyclic quotient singularity.
        std::string endpoint;
        for (const std::string& id : comp)
            if (adj[id].size() <= 1) {
                endpoint = id;
                break;
            }
        std::optional<std::vector<Int>> chain;
        if (!endpoint.empty()) chain = cover_chain(sub, endpoint);
        if (chain) {
            if (auto s = chain_singularity(*chain)) out.basket.push_back(*s);
            continue;
        }

        // Otherwise match against the known dual-graph families and solve
        // the discrepancies exactly.
        FamilyMatch m = match_family(sub);
        if (!out.family || m.kind != FamilyMatch::None) out.family = m;
        for (const auto& [id, a] : graph_discrepancies(sub)) {
            out.alpha[id] = a;
            if (!out.min_alpha || a < *out.min_alpha) out.min_alpha = a;
        }
    }

    std::sort(out.basket.begin(), out.basket.end(),
              [](const CyclicQuotient& a, const CyclicQuotient& b) {
                  return a.n != b.n ? a.n > b.n : a.q > b.q;
              });
    return out;
}

// --- per-surface analysis ----------------------------------------------------

namespace {

const BoundaryItem& item_by_label(const DisplacementTable& T, const std::string& label) {
    for (const BoundaryItem& it : T.items)
        if (it.label == label) return it;
    throw std::logic_error("no boundary item " + label);
}

Int exact_int(const Rat& r, const char* what) {
    if (den(r) != 1) throw std::logic_error(std::string(what) + ": not an integer: " + rat_str(r));
    return num(r);
}

// Smallest odd multiple clearing the displacement denominators of a fan:
// the branch multiplicity of ray i is nscale * eps_i, odd meaning the curve
// joins the branch locus.
Int fan_nscale(const DisplacementTable& T, const FanRecord& f) {
    Int l = 1;
    for (size_t idx : f.item_indices) {
        Int d = den(T.items[idx].eps);
        l = l / gcd(l, d) * d;
    }
    if (l % 2 == 0)
        throw std::logic_error("fan_nscale: no odd multiple makes the branch class Cartier");
    return l;
}

std::vector<Int> contact_partition(BranchCase c) {
    switch (c) {
        case BranchCase::IIa: return {1, 1, 1, 1};
        case BranchCase::IIb: return {2, 1, 1};
        case BranchCase::IIc: return {2, 2};
        case BranchCase::IId: return {3, 1};
        case BranchCase::IIe: return {4};
        default: throw std::invalid_argument("contact_partition: not a II subcase");
    }
}

bool is_II_subcase(BranchCase c) {
    return c == BranchCase::IIa || c == BranchCase::IIb || c == BranchCase::IIc ||
           c == BranchCase::IId || c == BranchCase::IIe;
}

// The -4 curve with the branch meeting it at total order 4 in the given
// contact partition.
CurveGraph quartic_partition_graph(const std::vector<Int>& parts) {
    CurveGraph G;
    G.add_node("C", -4, 1, CurveKind::Exceptional);
    int n = 0;
    for (const Int& m : parts) add_tangent_germ(G, "C", m, "B" + std::to_string(++n));
    return G;
}

// Append the resolution chain of fan f (curves C<i>, branch multiplicities
// nscale * eps, transverse branch germs per affine length) to G; returns
// the id of the last chain curve.
std::string add_fan_chain(CurveGraph& G, const DisplacementTable& T, const FanRecord& f,
                          const std::string& prefix) {
    Int nscale = fan_nscale(T, f);
    std::string prev;
    int germ = 0;
    for (size_t j = 0; j < f.item_indices.size(); ++j) {
        const BoundaryItem& it = T.items[f.item_indices[j]];
        std::string id = prefix + "C" + std::to_string(j + 1);
        G.add_node(id, -f.chain[j], exact_int(it.eps * nscale, "fan multiplicity"),
                   CurveKind::Exceptional);
        if (!prev.empty()) G.add_contact(prev, id);
        for (Int k = 0; k < exact_int(it.length, "affine length"); ++k)
            add_tangent_germ(G, id, 1, prefix + "B" + std::to_string(++germ));
        prev = id;
    }
    return prev;
}

// The local configuration whose double cover carries the basket of
// quotient singularities, read off the displacement table.
CurveGraph basket_input(const SurfaceSpec& spec, const DisplacementTable& T) {
    CurveGraph G;
    std::string key = spec.str();
    if (key == "P:1,1,2") {
        // Single -4 curve over the quarter point.
        const BoundaryItem& e1 = item_by_label(T, "e1");
        G.add_node("C", -4, exact_int(e1.eps, "multiplicity"), CurveKind::Exceptional);
        for (Int k = 1; k <= exact_int(e1.length, "length"); ++k)
            add_tangent_germ(G, "C", 1, "B" + k.str());
        return G;
    }
    if (key == "P:1,2,5") {
        // Wahl chain, the (-1) boundary curve D_x joining it to the -4
        // curve over the quarter point.
        std::string last = add_fan_chain(G, T, T.fans[0], "");
        const BoundaryItem& ex = item_by_label(T, "e_x");
        const BoundaryItem& e5 = item_by_label(T, "e5");
        G.add_node("Dx", -1, exact_int(ex.eps, "multiplicity"), CurveKind::Boundary);
        G.add_node("C5", -4, exact_int(e5.eps, "multiplicity"), CurveKind::Exceptional);
        G.add_contact(last, "Dx");
        G.add_contact("Dx", "C5");
        for (Int k = 1; k <= exact_int(e5.length, "length"); ++k)
            add_tangent_germ(G, "C5", 1, "B5_" + k.str());
        return G;
    }
    if (key == "HP:5") {
        add_fan_chain(G, T, T.fans[0], "");
        return G;
    }
    return G;  // no non-Gorenstein basket elsewhere
}

}  // namespace

std::vector<std::optional<BranchCase>> surface_cases(const SurfaceSpec& spec) {
    std::string key = spec.str();
    using C = BranchCase;
    if (key == "P:1,1,2")
        return {C::I, C::IIa, C::IIb, C::IIc, C::IId, C::IIe, C::III};
    if (key == "P:1,2,5")
        return {C::I, C::IIa, C::IIb, C::IIc, C::IId, C::IIe, C::III, C::IV};
    if (key == "HP:5") return {C::I, C::IV};
    return {std::nullopt};
}

std::optional<SurfaceSpec> degeneration_parent(const SurfaceSpec& spec) {
    if (spec.kind == SurfaceSpec::HP) return std::nullopt;
    std::array<Int, 3> t = surface_triangle(spec).triple.sorted();
    auto hp = [](Int c) {
        SurfaceSpec s;
        s.kind = SurfaceSpec::HP;
        s.c = std::move(c);
        return s;
    };
    if (t == std::array<Int, 3>{2, 5, 29}) return hp(29);
    if (t == std::array<Int, 3>{1, 5, 13}) return hp(13);
    if (t == std::array<Int, 3>{1, 13, 34}) return hp(34);
    return std::nullopt;
}

std::vector<Vec> case_support(const SurfaceSpec& spec, std::optional<BranchCase> c) {
    // Generic (full) support is meaningful for every surface, even ones
    // whose analysed case list starts at I.
    auto cases = surface_cases(spec);
    if (c && std::find(cases.begin(), cases.end(), c) == cases.end())
        throw std::invalid_argument("case_support: " + spec.str() + " has no case " +
                                    case_str(*c));
    TropDiagram D = build_surface(spec);
    std::vector<Vec> all = lattice_points(D.poly);
    std::vector<Vec> drop;
    std::string key = spec.str();
    if (key == "P:1,1,2" && c) {
        if (*c == BranchCase::III)
            drop = {{0, 4}, {0, 3}, {1, 3}, {2, 3}, {3, 3}, {4, 3}};
        else if (*c != BranchCase::I)
            drop = {{0, 4}};
    } else if (key == "P:1,2,5" && c) {
        if (*c == BranchCase::III)
            drop = {{1, 3}, {7, 2}, {13, 1}, {19, 0}, {20, 0}};
        else if (*c == BranchCase::IV)
            drop = {{1, 3}};
        else if (*c != BranchCase::I)
            drop = {{20, 0}};
    } else if (key == "HP:5" && c && *c == BranchCase::IV) {
        drop = {{1, 3}};
    }
    if (drop.empty()) return all;
    std::vector<Vec> out;
    for (const Vec& p : all)
        if (std::find(drop.begin(), drop.end(), p) == drop.end()) out.push_back(p);
    return out;
}

CaseVerdict classify_surface(const SurfaceSpec& spec, std::optional<BranchCase> c) {
    CaseVerdict out;
    out.surface = spec;
    out.branch_case = c;

    if (auto parent = degeneration_parent(spec)) {
        CaseVerdict up = classify_surface(*parent);
        out.verdict = up.verdict;
        out.chain_report = up.chain_report;
        out.support_note = "every octic here degenerates an octic on " + parent->str();
        out.detail = "inherited from " + parent->str() + ": " + up.detail;
        return out;
    }

    std::vector<Vec> support = case_support(spec, c);
    TropDiagram D = build_surface(spec);
    {
        size_t full = lattice_points(D.poly).size();
        out.support_note = support.size() == full
                               ? "generic support"
                               : "support missing " + std::to_string(full - support.size()) +
                                     " point(s)";
    }
    DisplacementTable T = displace_edges(D, support);

    // Boundary curves forced into the branch divisor; multiplicity >= 2
    // makes the double cover non-normal along that curve.
    for (const BoundaryItem& it : T.items) {
        if (it.fan >= 0 || it.fuse >= 0 || it.eps < 1) continue;
        Int m = exact_int(it.eps, "edge multiplicity");
        out.branch_components.push_back({it.label, m});
        if (m >= 2) {
            out.verdict = Verdict::NonNormal;
            out.detail = it.label + " lies in the branch divisor with multiplicity " + m.str();
        }
    }
    if (out.verdict == Verdict::NonNormal) return out;

    // Discrepancies along every exceptional chain.
    for (size_t f = 0; f < T.fans.size(); ++f) {
        DiscrepancyReport rep = fan_discrepancies(T, f);
        if (!out.chain_report || rep.verdict == DiscrepancyReport::NotLogCanonical)
            out.chain_report = rep;
        if (rep.verdict == DiscrepancyReport::NotLogCanonical) {
            out.verdict = Verdict::NotLogCanonical;
            Rat lo = rep.alpha[0];
            for (const Rat& a : rep.alpha) lo = std::min(lo, a);
            out.detail = "chain discrepancy " + rat_str(lo) + " < -1 at the " +
                         T.fans[f].sing.str() + " point";
            return out;
        }
    }

    // Case II subcases: the contact partition of the branch against the -4
    // curve decides between quotients of simple elliptic / cusp
    // singularities and non-log-canonical shapes.
    if (c && is_II_subcase(*c)) {
        CoverOutcome local = cover_outcome(quartic_partition_graph(contact_partition(*c)));
        out.cover_family = local.family;
        out.cover_alpha = local.alpha;
        if (local.min_alpha && *local.min_alpha < -1) {
            out.verdict = Verdict::NotLogCanonical;
            out.detail = "cover dual graph has discrepancy " + rat_str(*local.min_alpha) + " < -1";
            return out;
        }
        out.detail = *c == BranchCase::IIa
                         ? "Z/2-quotient of a simple elliptic singularity"
                         : "Z/2-quotient of a cusp singularity";
    }

    // Surviving stratum: compute the basket of quotient singularities of
    // the double cover from the boundary configuration.
    out.verdict = Verdict::NormalLC;
    CoverOutcome co = cover_outcome(basket_input(spec, T));
    out.basket = co.basket;
    if (!out.cover_family) {
        out.cover_family = co.family;
        for (const auto& [id, a] : co.alpha) out.cover_alpha.emplace(id, a);
        if (co.min_alpha && *co.min_alpha < -1)
            throw std::logic_error("classify_surface: basket cover contradicts the chain test");
    }
    if (out.detail.empty()) {
        out.detail = out.basket.empty() ? "no quotient singularities beyond the branch curve"
                                        : "quotient singularities:";
        for (const CyclicQuotient& s : out.basket) out.detail += " " + s.str();
    }
    return out;
}

// --- the assembled classification --------------------------------------------

int dim_aut(const SurfaceSpec& spec) {
    // Recorded constants; the symbolic derivation is out of scope.
    std::string key = spec.str();
    if (key == "P:1,1,1") return 8;
    if (key == "P:1,1,2" || key == "HP:5") return 9;
    if (key == "P:1,2,5") return 10;
    throw std::invalid_argument("dim_aut: no recorded value for " + key);
}

namespace {

int case_codim(BranchCase c) {
    switch (c) {
        case BranchCase::I: return 0;
        case BranchCase::IIa: return 1;
        case BranchCase::IIb: return 2;
        case BranchCase::IIc: return 3;
        default: throw std::invalid_argument("case_codim: not a stratum case");
    }
}

}  // namespace

ClassificationReport full_classification(int depth) {
    if (depth < 2) throw std::invalid_argument("full_classification: depth must be >= 2");
    ClassificationReport rep;
    rep.depth = depth;

    // The theta-function basis: lattice points of the root triangle, a
    // mutation invariant.
    rep.theta_basis =
        static_cast<int>(lattice_points(build_surface(parse_surface("P:1,2,5")).poly).size());
    if (rep.theta_basis != 45)
        throw std::logic_error("full_classification: theta basis is not 45");
    rep.moduli_dim = rep.theta_basis - 1;

    rep.sweep = nonnormality_sweep(depth);
    if (!rep.sweep.consistent)
        throw std::logic_error("full_classification: sweep certificates inconsistent");

    std::vector<std::string> specs = {"P:1,1,1",     "P:1,1,2",      "P:1,2,5",     "HP:5",
                                      "HP:13",       "HP:29",        "HP:34",       "P:2,5,29",
                                      "HPpair:5,29", "HPpair:2,29",  "P:1,5,13",    "P:1,13,34"};
    std::set<std::string> alive;
    for (const std::string& s : specs) {
        SurfaceSpec spec = parse_surface(s);
        if (auto parent = degeneration_parent(spec)) {
            rep.exclusions.push_back({s, parent->str()});
            rep.verdicts.push_back(classify_surface(spec));
            continue;
        }
        for (std::optional<BranchCase> c : surface_cases(spec)) {
            rep.verdicts.push_back(classify_surface(spec, c));
            if (rep.verdicts.back().verdict == Verdict::NormalLC) alive.insert(s);
        }
    }
    rep.survivors.assign(alive.begin(), alive.end());
    if (rep.survivors != std::vector<std::string>{"HP:5", "P:1,1,1", "P:1,1,2", "P:1,2,5"})
        throw std::logic_error("full_classification: surviving base set mismatch");

    rep.smooth_dim = rep.moduli_dim - dim_aut(parse_surface("P:1,1,1"));

    // Strata of singular branch data: normal-lc cases I..IIc, each subcase
    // one condition deeper.
    static const std::map<std::string, std::map<std::string, int>> expected_dims = {
        {"P:1,1,2", {{"I", 35}, {"IIa", 34}, {"IIb", 33}, {"IIc", 32}}},
        {"P:1,2,5", {{"I", 34}, {"IIa", 33}, {"IIb", 32}, {"IIc", 31}}},
        {"HP:5", {{"I", 35}}},
    };
    for (const CaseVerdict& v : rep.verdicts) {
        if (v.verdict != Verdict::NormalLC || !v.branch_case) continue;
        Stratum s;
        s.surface = v.surface;
        s.c = *v.branch_case;
        s.dim = rep.moduli_dim - dim_aut(v.surface) - case_codim(s.c);
        auto it = expected_dims.find(v.surface.str());
        if (it == expected_dims.end() || !it->second.count(case_str(s.c)) ||
            it->second.at(case_str(s.c)) != s.dim)
            throw std::logic_error("full_classification: stratum dimension mismatch at " +
                                   v.label());
        rep.strata.push_back(std::move(s));
    }
    size_t expected_count = 0;
    for (const auto& [k, m] : expected_dims) expected_count += m.size();
    if (rep.strata.size() != expected_count)
        throw std::logic_error("full_classification: stratum count mismatch");

    for (const std::string& y : {"P:1,1,2", "P:1,2,5"}) {
        rep.adjacencies.push_back({y + " IIc", y + " IIb"});
        rep.adjacencies.push_back({y + " IIb", y + " IIa"});
        rep.adjacencies.push_back({y + " IIa", y + " I"});
    }
    for (const std::string& c : {"I", "IIa", "IIb", "IIc"})
        rep.adjacencies.push_back({"P:1,2,5 " + c, "P:1,1,2 " + c});
    rep.adjacencies.push_back({"P:1,2,5 I", "HP:5 I"});
    return rep;
}

}  // namespace octic
