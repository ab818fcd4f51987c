#include "trop.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace octic {

namespace {

int sign_of(const Int& x) { return x > 0 ? 1 : x < 0 ? -1 : 0; }
int sign_of(const Rat& x) { return x > 0 ? 1 : x < 0 ? -1 : 0; }

// Counter-clockwise quarter turn: takes an edge direction to its inward
// normal for a CCW polygon.
Vec rot90(const Vec& v) { return {-v.y, v.x}; }

// Intersection of the lines <c - x, n1> = b1 and <c - x, n2> = b2.
RatPoint line_meet(const RatPoint& c, const Vec& n1, const Rat& b1, const Vec& n2,
                   const Rat& b2) {
    Int d = wedge(n1, n2);
    if (d == 0) throw std::invalid_argument("line_meet: parallel lines");
    Rat tx = (b1 * n2.y - b2 * n1.y) / d;
    Rat ty = (b2 * n1.x - b1 * n2.x) / d;
    return {c.x - tx, c.y - ty};
}

// Does the ray from v in direction d hit p (with p != v)?
bool on_ray(const RatPoint& v, const Vec& d, const RatPoint& p) {
    RatPoint u = p - v;
    return wedge(u, RatPoint(d)) == 0 && dot(u, d) > 0;
}

}  // namespace

std::optional<size_t> TropDiagram::cut_at(const RatPoint& v) const {
    for (size_t i = 0; i < cuts.size(); ++i)
        if (cuts[i].vertex == v) return i;
    return std::nullopt;
}

size_t vertex_index(const ConvexPolygon& P, const RatPoint& p) {
    for (size_t i = 0; i < P.size(); ++i)
        if (P[i] == p) return i;
    throw std::invalid_argument("vertex_index: not a vertex: " + p.str());
}

Vec edge_inward_normal(const ConvexPolygon& P, size_t i) {
    RatPoint e = P[i + 1] - P[i % P.size()];
    // Clear denominators to a primitive lattice direction.
    Int m = den(e.x) * den(e.y) / gcd(den(e.x), den(e.y));
    Vec d(num(e.x) * (m / den(e.x)), num(e.y) * (m / den(e.y)));
    return primitive(rot90(d));
}

TropDiagram diagram_for(const MarkovTriangle& T) {
    return TropDiagram{T.poly, barycentre(), {}, {}};
}

TropDiagram diagram_from_polygon(const ConvexPolygon& P) {
    // Eigenlines of the Wahl corners must concur; intersect the first two
    // and check the rest.
    std::vector<std::pair<RatPoint, Vec>> lines;
    for (size_t i = 0; i < P.size(); ++i) {
        try {
            WahlVertexData d = wahl_vertex(P, i);
            lines.emplace_back(P[i], d.w);
        } catch (const std::invalid_argument&) {
            // not a Wahl corner; no eigenline constraint
        }
    }
    if (lines.size() < 2)
        throw std::invalid_argument("diagram_from_polygon: need two Wahl corners to fix an origin");
    const auto& [p0, w0] = lines[0];
    const auto& [p1, w1] = lines[1];
    Int d = wedge(w0, w1);
    if (d == 0) throw std::invalid_argument("diagram_from_polygon: parallel eigenlines");
    Rat t = wedge(p1 - p0, RatPoint(w1)) / d;
    RatPoint origin{p0.x + t * w0.x, p0.y + t * w0.y};
    for (const auto& [p, w] : lines)
        if (wedge(origin - p, RatPoint(w)) != 0)
            throw std::invalid_argument("diagram_from_polygon: eigenlines do not concur");
    if (!P.contains(origin))
        throw std::invalid_argument("diagram_from_polygon: origin outside polygon");
    return TropDiagram{P, origin, {}, {}};
}

// --- corner fans ---------------------------------------------------------

CornerFan resolution_fan(const Vec& rho_out, const Vec& rho_in) {
    if (content(rho_out) != 1 || content(rho_in) != 1)
        throw std::invalid_argument("resolution_fan: normals must be primitive");
    Int n = wedge(rho_in, rho_out);
    if (n < 1) throw std::invalid_argument("resolution_fan: cone not positively oriented");
    CornerFan fan;
    fan.n = n;
    fan.q = 0;
    if (n == 1) return fan;

    // Move the cone to <(1,0), (h,-n)> with 0 <= h < n by a unimodular map.
    Int g, px, py;  // px*rho_out.x + py*rho_out.y = 1
    {
        Int a = rho_out.x, b = rho_out.y, u0 = 1, v0 = 0, u1 = 0, v1 = 1;
        while (b != 0) {
            Int q = a / b;  // truncated division is fine for the gcd loop
            a -= q * b;
            std::swap(a, b);
            u0 -= q * u1;
            std::swap(u0, u1);
            v0 -= q * v1;
            std::swap(v0, v1);
        }
        if (a < 0) { a = -a; u0 = -u0; v0 = -v0; }
        g = a;
        px = u0;
        py = v0;
    }
    if (g != 1) throw std::logic_error("resolution_fan: gcd failure");
    Mat2 T{Rat(px), Rat(py), Rat(-rho_out.y), Rat(rho_out.x)};
    Vec tin = T.apply(rho_in);
    if (tin.y != -n) throw std::logic_error("resolution_fan: normalization failed");
    Int h = ((tin.x % n) + n) % n;
    Int s = (tin.x - h) / n;
    Mat2 S{1, Rat(s), 0, 1};  // fixes (1,0), sends (tin.x,-n) to (h,-n)
    Mat2 U = S * T;
    Mat2 Uinv = U.inverse();

    // The cone <(1,0),(h,-n)> presents the singularity 1/n(1, n-h): in the
    // basis (nu1, nu0) with nu0 = (1,0) and nu1 = (1,-1) (forced by
    // wedge(nu0, nu1) = -1) the second generator is n*nu1 - (n-h)*nu0.  The
    // resolution rays follow the two-term recursion
    // nu_{j+1} = d_j nu_j - nu_{j-1} with d = hj_expand(n, n-h); the chain
    // relation and smoothness are re-verified below.
    fan.chain = hj_expand(n, n - h);
    std::vector<Vec> rays;
    {
        Vec prev = rho_out;
        Vec cur = Uinv.apply(Vec{1, -1});
        for (size_t j = 0; j < fan.chain.size(); ++j) {
            rays.push_back(cur);
            Vec next = cur * fan.chain[j] - prev;
            prev = cur;
            cur = next;
        }
        if (cur != rho_in) throw std::logic_error("resolution_fan: ray recursion failed");
    }
    fan.chain.clear();

    // Self-intersection chain and smoothness checks.
    std::vector<Vec> full;
    full.push_back(rho_out);
    for (const Vec& r : rays) full.push_back(r);
    full.push_back(rho_in);
    for (size_t i = 0; i + 1 < full.size(); ++i)
        if (wedge(full[i], full[i + 1]) != -1)
            throw std::logic_error("resolution_fan: resolution not smooth");
    for (size_t j = 1; j + 1 < full.size(); ++j) {
        Int dj = -wedge(full[j - 1], full[j + 1]);
        if (full[j - 1] + full[j + 1] != full[j] * dj)
            throw std::logic_error("resolution_fan: chain relation failed");
        if (dj < 2) throw std::logic_error("resolution_fan: chain entry < 2");
        fan.chain.push_back(dj);
    }
    fan.rays = std::move(rays);
    Rat v = hj_eval(fan.chain);
    if (num(v) != n) throw std::logic_error("resolution_fan: chain value mismatch");
    fan.q = den(v);
    return fan;
}

CornerFan corner_fan(const ConvexPolygon& P, size_t i) {
    size_t nv = P.size();
    return resolution_fan(edge_inward_normal(P, i), edge_inward_normal(P, (i + nv - 1) % nv));
}

CyclicQuotient corner_singularity(const ConvexPolygon& P, size_t i) {
    CornerFan f = corner_fan(P, i);
    if (f.n == 1) throw std::invalid_argument("corner_singularity: smooth corner");
    return CyclicQuotient(f.n, f.q);
}

// --- trades ----------------------------------------------------------------

TropDiagram nodal_trade(const TropDiagram& D, size_t vi, bool allow_smooth) {
    const RatPoint& v = D.poly[vi];
    if (D.cut_at(v)) throw std::invalid_argument("nodal_trade: corner already traded");
    WahlVertexData wd = wahl_vertex(D.poly, vi);
    if (wd.index == 1 && !allow_smooth) return D;  // smooth corner: trading is a no-op
    if (!on_ray(v, wd.w, D.origin))
        throw std::logic_error("nodal_trade: eigendirection does not point at the origin");
    TropDiagram out = D;
    out.cuts.push_back(TropCut{v, wd.w, wd.monodromy, wd.index});
    return out;
}

TropDiagram absorb_cut(const TropDiagram& D, size_t ci) {
    if (ci >= D.cuts.size()) throw std::invalid_argument("absorb_cut: no such cut");
    const TropCut& cut = D.cuts[ci];
    size_t vi = vertex_index(D.poly, cut.vertex);
    WahlVertexData wd = wahl_vertex(D.poly, vi);
    if (wd.w != cut.dir)
        throw std::invalid_argument("absorb_cut: cut is not the corner eigendirection");
    if (wd.monodromy != cut.monodromy)
        throw std::invalid_argument("absorb_cut: monodromy does not match the corner");
    TropDiagram out = D;
    out.cuts.erase(out.cuts.begin() + ci);
    out.markers.push_back(TropMarker{cut.vertex, corner_singularity(D.poly, vi)});
    return out;
}

TropDiagram mutate_diagram(const TropDiagram& D, size_t vi, MutateDir dir, bool allow_smooth) {
    const RatPoint& v = D.poly[vi];
    WahlVertexData wd = wahl_vertex(D.poly, vi);
    auto existing = D.cut_at(v);
    if (existing) {
        const TropCut& c = D.cuts[*existing];
        if (c.dir != wd.w || c.monodromy != wd.monodromy)
            throw std::invalid_argument("mutate_diagram: existing cut incompatible with corner");
    } else if (wd.index == 1 && !allow_smooth) {
        throw std::invalid_argument("mutate_diagram: smooth corner (pass allow_smooth)");
    }

    PolygonMutation m = mutate_polygon_ex(D.poly, vi, dir);
    // The origin lies on the fixed eigenline, so it does not move.
    TropDiagram out{m.poly, D.origin, {}, {}};

    auto moved = [&](const RatPoint& p) {
        return sign_of(wedge(RatPoint(m.w), p - m.centre)) == m.moved_side;
    };
    Mat2 Sinv = m.shear.inverse();
    for (size_t i = 0; i < D.cuts.size(); ++i) {
        if (existing && i == *existing) continue;
        TropCut c = D.cuts[i];
        if (moved(c.vertex)) {
            c.vertex = m.centre + m.shear.apply(c.vertex - m.centre);
            c.dir = m.shear.apply(c.dir);
            c.monodromy = m.shear * c.monodromy * Sinv;
        }
        vertex_index(out.poly, c.vertex);  // must still be a corner
        out.cuts.push_back(c);
    }
    for (TropMarker mk : D.markers) {
        if (moved(mk.pos)) mk.pos = m.centre + m.shear.apply(mk.pos - m.centre);
        out.markers.push_back(mk);
    }
    // The traded node slides along the eigenline to the far exit point; the
    // direction flips, the monodromy (quadratic in the eigendirection) does
    // not.
    TropCut slid{m.exit, -wd.w, wd.monodromy, wd.index};
    vertex_index(out.poly, slid.vertex);
    if (!on_ray(slid.vertex, slid.dir, out.origin))
        throw std::logic_error("mutate_diagram: slid cut misses the origin");
    out.cuts.push_back(slid);
    return out;
}

// --- displacement engine -----------------------------------------------------

Rat support_offset(const RatPoint& origin, const Vec& rho, const std::vector<Vec>& support) {
    if (support.empty()) throw std::invalid_argument("support_offset: empty support");
    Rat best;
    bool first = true;
    for (const Vec& s : support) {
        Rat v = dot(origin - RatPoint(s), rho);
        if (first || v > best) {
            best = v;
            first = false;
        }
    }
    return best;
}

namespace {

struct CycleBuild {
    std::vector<BoundaryItem> items;
    std::vector<FanRecord> fans;
};

// Build the counter-clockwise boundary cycle: for each vertex, first the
// corner items (fan rays, listed from the incoming-edge side), then the
// outgoing edge.
CycleBuild build_cycle(const TropDiagram& D) {
    const ConvexPolygon& P = D.poly;
    size_t nv = P.size();

    // Fans at untreated singular corners, ordered by descending index for
    // the global e1..ek numbering.
    struct PendingFan {
        size_t corner;
        CornerFan fan;
    };
    std::vector<PendingFan> pending;
    for (size_t i = 0; i < nv; ++i) {
        if (D.cut_at(P[i])) continue;
        CornerFan f = corner_fan(P, i);
        if (f.n > 1) pending.push_back({i, std::move(f)});
    }
    std::stable_sort(pending.begin(), pending.end(),
                     [](const PendingFan& a, const PendingFan& b) { return a.fan.n > b.fan.n; });

    CycleBuild out;
    std::map<size_t, size_t> fan_of_corner;  // corner -> fan record index
    std::map<size_t, Int> ray_label_base;
    Int next_label = 1;
    for (const PendingFan& pf : pending) {
        fan_of_corner[pf.corner] = out.fans.size();
        ray_label_base[pf.corner] = next_label;
        next_label += Int(pf.fan.rays.size());
        out.fans.push_back(FanRecord{pf.corner, CyclicQuotient(pf.fan.n, pf.fan.q),
                                     pf.fan.chain, {}});
    }

    // Edge labels: e_z for inward normal (0,1), e_y for (1,0), e_x for the
    // remaining edge of a triangle, e_w<i> otherwise.
    std::vector<std::string> edge_label(nv);
    std::vector<size_t> other;
    for (size_t i = 0; i < nv; ++i) {
        Vec n = edge_inward_normal(P, i);
        if (n == Vec(0, 1))
            edge_label[i] = "e_z";
        else if (n == Vec(1, 0))
            edge_label[i] = "e_y";
        else
            other.push_back(i);
    }
    if (other.size() == 1 && nv == 3)
        edge_label[other[0]] = "e_x";
    else
        for (size_t k = 0; k < other.size(); ++k)
            edge_label[other[k]] = "e_w" + std::to_string(k + 1);

    std::vector<int> edge_item(nv, -1);
    for (size_t i = 0; i < nv; ++i) {
        // Corner i: fan rays between the incoming and outgoing edges.
        auto it = fan_of_corner.find(i);
        if (it != fan_of_corner.end()) {
            const CornerFan* fp = nullptr;
            for (const PendingFan& pf : pending)
                if (pf.corner == i) fp = &pf.fan;
            if (!fp) throw std::logic_error("build_cycle: fan lookup");
            const CornerFan& f = *fp;
            FanRecord& rec = out.fans[it->second];
            size_t k = f.rays.size();
            rec.item_indices.assign(k, 0);
            for (size_t j = k; j-- > 0;) {  // cycle order: nu_k .. nu_1
                BoundaryItem item;
                item.label = "e" + (ray_label_base[i] + Int(j)).str();
                item.normal = f.rays[j];
                item.anchor = P[i];
                item.fan = int(it->second);
                rec.item_indices[j] = out.items.size();
                out.items.push_back(std::move(item));
            }
        }
        // Outgoing edge i.
        BoundaryItem e;
        e.label = edge_label[i];
        e.normal = edge_inward_normal(P, i);
        e.anchor = P[i];
        edge_item[i] = int(out.items.size());
        out.items.push_back(std::move(e));
    }

    // Fuse edge pairs at traded corners.
    for (const TropCut& c : D.cuts) {
        size_t vi = vertex_index(P, c.vertex);
        int in_e = edge_item[(vi + nv - 1) % nv];
        int out_e = edge_item[vi];
        if (out.items[in_e].fuse < 0) out.items[in_e].fuse = out_e;
        if (out.items[out_e].fuse < 0) out.items[out_e].fuse = in_e;
    }
    return out;
}

}  // namespace

DisplacementTable displace_edges(const TropDiagram& D, const std::vector<Vec>& support) {
    const ConvexPolygon& P = D.poly;
    size_t nv = P.size();
    CycleBuild cb = build_cycle(D);
    DisplacementTable T;
    T.items = std::move(cb.items);
    T.fans = std::move(cb.fans);
    T.origin = D.origin;
    size_t ni = T.items.size();

    for (BoundaryItem& it : T.items) {
        it.b0 = dot(D.origin - it.anchor, it.normal);
        it.bt = it.fuse >= 0 ? it.b0 : support_offset(D.origin, it.normal, support);
        it.eps = it.b0 - it.bt;
        it.drawn_normal = it.normal;
        for (size_t k = 0; k < D.cuts.size(); ++k)
            if (dot(it.normal, D.cuts[k].dir) == 0) it.parallel_cut = int(k);
    }

    // Transport: when the boundary reaches (or passes) a cut's node, the
    // curves between the cut-parallel ray and the traded corner are seen
    // through the monodromy.
    for (size_t k = 0; k < D.cuts.size(); ++k) {
        const TropCut& cut = D.cuts[k];
        int par = -1;
        for (size_t i = 0; i < ni; ++i)
            if (T.items[i].fan >= 0 && int(k) == T.items[i].parallel_cut) par = int(i);
        if (par < 0 || T.items[par].bt > 0) continue;
        const FanRecord& rec = T.fans[T.items[par].fan];
        size_t q = rec.corner;
        size_t v = vertex_index(P, cut.vertex);
        // Ray order within the fan record is nu_1..nu_k (nu_1 nearest the
        // outgoing edge at q).
        size_t pos = 0;
        while (pos < rec.item_indices.size() && rec.item_indices[pos] != size_t(par)) ++pos;
        if (pos == rec.item_indices.size()) throw std::logic_error("displace_edges: parallel ray lost");

        bool incoming_side;  // cut vertex at the far end of the incoming edge of q
        if ((v + 1) % nv == q)
            incoming_side = true;
        else if ((q + 1) % nv == v)
            incoming_side = false;
        else
            continue;  // cut not adjacent to this fan's corner: no transport rule needed
        Mat2 tr = incoming_side ? cut.monodromy.transpose() : cut.monodromy.transpose().inverse();
        std::vector<size_t> beyond;
        if (incoming_side)
            for (size_t j = pos + 1; j < rec.item_indices.size(); ++j) beyond.push_back(rec.item_indices[j]);
        else
            for (size_t j = 0; j < pos; ++j) beyond.push_back(rec.item_indices[j]);
        // The fused polygon edge between q and v crosses the cut too: the
        // edge from v to q (incoming side) or from q to v (outgoing side).
        {
            size_t edge_vertex = incoming_side ? v : q;
            Vec en = edge_inward_normal(P, edge_vertex);
            for (size_t i = 0; i < ni; ++i)
                if (T.items[i].fan < 0 && T.items[i].anchor == P[edge_vertex] &&
                    T.items[i].normal == en)
                    beyond.push_back(i);
        }
        for (size_t i : beyond) {
            T.items[i].drawn_normal = tr.apply(T.items[i].normal);
            T.items[i].crossed_cut = int(k);
        }
    }

    // The offset of a curve seen through a monodromy is the support offset
    // of the line it is actually drawn on; recompute it (fused edges keep
    // their clamped offset, which the transport carries onto the same line
    // as their partner).
    for (BoundaryItem& it : T.items) {
        if (it.crossed_cut >= 0 && it.fuse < 0) {
            it.bt = support_offset(D.origin, it.drawn_normal, support);
            it.eps = it.b0 - it.bt;
        }
        it.runs_along_cut = it.parallel_cut >= 0 && it.bt == 0;
        if (it.fuse < 0 && it.bt < 0) T.node_outside = true;
    }

    // Displaced segments: intersect each drawn line with the nearest
    // non-parallel neighbours in the cycle.
    auto line_of = [&](size_t i) { return std::pair<Vec, Rat>(T.items[i].drawn_normal, T.items[i].bt); };
    for (size_t i = 0; i < ni; ++i) {
        auto [n0, b0] = line_of(i);
        size_t prev = (i + ni - 1) % ni, next = (i + 1) % ni;
        size_t guard = 0;
        while (wedge(T.items[prev].drawn_normal, n0) == 0) {
            prev = (prev + ni - 1) % ni;
            if (++guard > ni) throw std::logic_error("displace_edges: all lines parallel");
        }
        guard = 0;
        while (wedge(n0, T.items[next].drawn_normal) == 0) {
            next = (next + 1) % ni;
            if (++guard > ni) throw std::logic_error("displace_edges: all lines parallel");
        }
        auto [np, bp] = line_of(prev);
        auto [nn, bn] = line_of(next);
        BoundaryItem& it = T.items[i];
        it.seg_begin = line_meet(D.origin, np, bp, n0, b0);
        it.seg_end = line_meet(D.origin, n0, b0, nn, bn);
        Rat len = affine_length(it.seg_begin, it.seg_end);
        Vec dir{n0.y, -n0.x};  // CCW travel direction along the edge
        if (dot(it.seg_end - it.seg_begin, dir) < 0) len = -len;
        it.length = len;
    }
    return T;
}

DiscrepancyReport fan_discrepancies(const DisplacementTable& T, size_t fan_index) {
    if (fan_index >= T.fans.size()) throw std::invalid_argument("fan_discrepancies: no such fan");
    const FanRecord& rec = T.fans[fan_index];
    VecQ pairing;
    for (size_t idx : rec.item_indices) pairing.push_back(T.items[idx].length);
    return discrepancies(rec.chain, pairing);
}

Vec trade_marked_normal(const TropDiagram& D, const TropCut& cut) {
    Vec rho{cut.dir.y, -cut.dir.x};
    const ConvexPolygon& P = D.poly;
    size_t nv = P.size();
    for (size_t i = 0; i < nv; ++i) {
        if (D.cut_at(P[i])) continue;
        Vec out = edge_inward_normal(P, i);
        Vec in = edge_inward_normal(P, (i + nv - 1) % nv);
        if (wedge(in, out) <= 1) continue;
        for (const Vec& cand : {rho, -rho})
            if (wedge(in, cand) > 0 && wedge(cand, out) > 0) return cand;
    }
    throw std::invalid_argument("trade_marked_normal: no singular corner sees the cut direction");
}

// --- non-toric resolution ----------------------------------------------------

NonToricResolution resolve_diagram_cuts(const TropDiagram& D) {
    const ConvexPolygon& P = D.poly;
    size_t nv = P.size();

    struct Curve {
        std::string label;
        Vec n_prev_side;  // normal used against the previous neighbour
        Vec n_next_side;  // normal used against the next neighbour
        Mat2 to_prev;     // transport applied to the next neighbour's normal
                          // when it is read from the previous side's chart
        Int square = 0;
        bool is_ray = false;
    };

    CycleBuild cb = build_cycle(D);
    // Merge fused pairs into single curves and attach transports.
    std::vector<Curve> cyc;
    std::vector<int> merged_into(cb.items.size(), -1);
    for (size_t i = 0; i < cb.items.size(); ++i) {
        const BoundaryItem& it = cb.items[i];
        if (merged_into[i] >= 0) continue;
        Curve c;
        c.label = it.label;
        c.n_prev_side = c.n_next_side = it.normal;
        c.to_prev = Mat2::identity();
        c.is_ray = it.fan >= 0;
        if (it.fuse >= 0 && size_t(it.fuse) == (i + 1) % cb.items.size()) {
            // it = incoming edge, fuse = outgoing edge at a traded corner.
            const BoundaryItem& partner = cb.items[it.fuse];
            size_t vi = vertex_index(P, partner.anchor);
            auto ci = D.cut_at(P[vi]);
            if (!ci) throw std::logic_error("resolve_diagram_cuts: fused pair without cut");
            Mat2 Mt = D.cuts[*ci].monodromy.transpose();
            if (Mt.apply(partner.normal) != it.normal)
                throw std::logic_error("resolve_diagram_cuts: monodromy does not identify the fused pair");
            c.label = it.label + "~" + partner.label;
            c.n_next_side = partner.normal;
            c.to_prev = Mt;
            merged_into[it.fuse] = int(cyc.size());
        }
        cyc.push_back(std::move(c));
    }
    size_t nc = cyc.size();
    if (nc < 3) throw std::invalid_argument("resolve_diagram_cuts: boundary too short");

    // Squares from the cycle of normals: prev + next = a * self.
    for (size_t i = 0; i < nc; ++i) {
        const Vec& self = cyc[i].n_prev_side;
        Vec np = cyc[(i + nc - 1) % nc].n_next_side;
        Vec nn = cyc[i].to_prev.apply(cyc[(i + 1) % nc].n_prev_side);
        Vec sum = np + nn;
        Int a;
        if (self.x != 0) {
            if (sum.x % self.x != 0) throw std::logic_error("resolve_diagram_cuts: ray relation failed");
            a = sum.x / self.x;
        } else {
            if (sum.y % self.y != 0) throw std::logic_error("resolve_diagram_cuts: ray relation failed");
            a = sum.y / self.y;
        }
        if (self * a != sum) throw std::logic_error("resolve_diagram_cuts: ray relation failed");
        cyc[i].square = -a;
    }

    NonToricResolution R;
    // Resolution directions: primitive edge directions of the rays, ordered
    // by label, x-component (or failing that y) made positive.
    for (const FanRecord& rec : cb.fans)
        for (size_t idx : rec.item_indices) {
            Vec n = cb.items[idx].normal;
            Vec d{n.y, -n.x};
            if (d.x < 0 || (d.x == 0 && d.y < 0)) d = -d;
            R.resolution_directions.push_back(d);
        }

    // Work clockwise (reverse cycle order) to match the classical picture.
    std::vector<Curve> work(cyc.rbegin(), cyc.rend());
    for (const Curve& c : work) R.initial.push_back({c.label, c.square});

    // Blowing down the exceptional curve of each hidden node raises its
    // cut-parallel neighbour's square by one.
    for (const TropCut& cut : D.cuts) {
        int hit = -1;
        for (size_t i = 0; i < work.size(); ++i)
            if (work[i].is_ray && dot(work[i].n_prev_side, cut.dir) == 0) hit = int(i);
        if (hit < 0) throw std::invalid_argument("resolve_diagram_cuts: no curve parallel to a cut");
        work[hit].square += 1;
    }

    // Contract (-1)-curves cyclically, latest in the list first.
    for (;;) {
        int pick = -1;
        for (size_t i = 0; i < work.size(); ++i)
            if (work[i].square == -1) pick = int(i);
        if (pick < 0) break;
        if (work.size() <= 3)
            throw std::logic_error("resolve_diagram_cuts: contracted below a cycle");
        size_t n = work.size();
        work[(pick + 1) % n].square += 1;
        work[(pick + n - 1) % n].square += 1;
        R.contracted.push_back(work[pick].label);
        work.erase(work.begin() + pick);
    }
    for (const Curve& c : work) R.final_cycle.push_back({c.label, c.square});
    return R;
}

// --- surface builders --------------------------------------------------------

std::string SurfaceSpec::str() const {
    switch (kind) {
        case P: return "P:" + a.str() + "," + b.str() + "," + c.str();
        case HP: return "HP:" + c.str();
        case HPpair: return "HPpair:" + a.str() + "," + b.str();
    }
    throw std::logic_error("SurfaceSpec::str");
}

SurfaceSpec parse_surface(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("parse_surface: expected KIND:args, got '" + s + "'");
    std::string kind = s.substr(0, colon);
    std::vector<Int> args;
    std::string rest = s.substr(colon + 1);
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("parse_surface: bad number '" + tok + "'");
        args.emplace_back(tok);
    }
    SurfaceSpec spec{};
    if (kind == "P" && args.size() == 3) {
        spec.kind = SurfaceSpec::P;
        spec.a = args[0];
        spec.b = args[1];
        spec.c = args[2];
        if (!MarkovTriple{spec.a, spec.b, spec.c}.valid())
            throw std::invalid_argument("parse_surface: " + s + " is not a Markov triple");
    } else if (kind == "HP" && args.size() == 1) {
        spec.kind = SurfaceSpec::HP;
        spec.c = args[0];
    } else if (kind == "HPpair" && args.size() == 2) {
        spec.kind = SurfaceSpec::HPpair;
        spec.a = args[0];
        spec.b = args[1];
    } else {
        throw std::invalid_argument("parse_surface: unknown form '" + s + "'");
    }
    return spec;
}

namespace {

// Breadth-first search of mutation words whose carried triple satisfies a
// predicate.  Bit 0 mutates at p0, bit 1 at p1, starting from (1,2,5).
template <typename Pred>
std::optional<MutationWord> find_word(Pred&& good, int max_depth) {
    struct Node {
        MarkovTriple t;
        MutationWord w;
    };
    std::vector<Node> frontier{{MarkovTriple{1, 2, 5}, {}}};
    std::set<std::array<Int, 3>> seen;
    for (int depth = 0; depth <= max_depth; ++depth) {
        std::vector<Node> next;
        for (const Node& n : frontier) {
            if (good(n.t)) return n.w;
            for (int bit : {0, 1}) {
                MarkovTriple m = bit == 0 ? MarkovTriple{n.t.c, n.t.b, 3 * n.t.b * n.t.c - n.t.a}
                                          : MarkovTriple{n.t.a, n.t.c, 3 * n.t.a * n.t.c - n.t.b};
                MutationWord w = n.w;
                w.push_back(bit);
                next.push_back({m, std::move(w)});
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

MarkovTriangle special_triangle(const Int& c) {
    // The two triangles below the base of the mutation tree.
    std::vector<RatPoint> verts = c == 1
        ? std::vector<RatPoint>{{0, 0}, {8, 0}, {0, 8}}
        : std::vector<RatPoint>{{0, 0}, {16, 0}, {0, 4}};
    ConvexPolygon poly(verts);
    MarkovTriangle T{poly,
                     MarkovTriple{1, 1, c},
                     {},
                     verts[0],
                     verts[1],
                     verts[2],
                     wahl_vertex(poly, vertex_index(poly, verts[0])),
                     wahl_vertex(poly, vertex_index(poly, verts[1])),
                     wahl_vertex(poly, vertex_index(poly, verts[2]))};
    return T;
}

Int markov_completion(const Int& a, const Int& b) {
    Int disc = 9 * a * a * b * b - 4 * (a * a + b * b);
    if (disc < 0) throw std::invalid_argument("markov_completion: no completion");
    Int s = sqrt(disc);
    if (s * s != disc || (3 * a * b - s) % 2 != 0)
        throw std::invalid_argument("markov_completion: {" + a.str() + "," + b.str() +
                                    "} does not extend to a Markov triple");
    return (3 * a * b - s) / 2;
}

}  // namespace

MarkovTriangle surface_triangle(const SurfaceSpec& spec) {
    switch (spec.kind) {
        case SurfaceSpec::P: {
            std::array<Int, 3> t{spec.a, spec.b, spec.c};
            std::sort(t.begin(), t.end());
            if (!MarkovTriple{t[0], t[1], t[2]}.valid())
                throw std::invalid_argument("surface_triangle: not a Markov triple: " + spec.str());
            if (t[0] == 1 && t[1] == 1) return special_triangle(t[2]);
            auto w = find_word([&](const MarkovTriple& m) { return m.sorted() == t; }, 64);
            if (!w) throw std::invalid_argument("surface_triangle: triple not found: " + spec.str());
            return markov_triangle(*w);
        }
        case SurfaceSpec::HP: {
            auto w = find_word([&](const MarkovTriple& m) { return m.c == spec.c; }, 64);
            if (!w) throw std::invalid_argument("surface_triangle: no triple with c = " + spec.c.str());
            return markov_triangle(*w);
        }
        case SurfaceSpec::HPpair: {
            Int comp = markov_completion(spec.a, spec.b);
            if (comp == 1)
                throw std::invalid_argument("surface_triangle: completion is smooth; use HP instead");
            std::array<Int, 3> t{spec.a, spec.b, comp};
            std::sort(t.begin(), t.end());
            auto w = find_word([&](const MarkovTriple& m) { return m.sorted() == t; }, 64);
            if (!w) throw std::invalid_argument("surface_triangle: pair not found: " + spec.str());
            return markov_triangle(*w);
        }
    }
    throw std::logic_error("surface_triangle");
}

TropDiagram build_surface(const SurfaceSpec& spec) {
    MarkovTriangle T = surface_triangle(spec);
    TropDiagram D = diagram_for(T);
    auto slot_value = [&](int k) { return k == 0 ? T.triple.a : k == 1 ? T.triple.b : T.triple.c; };
    auto slot_vertex = [&](int k) {
        return vertex_index(D.poly, k == 0 ? T.p0 : k == 1 ? T.p1 : T.p2);
    };
    switch (spec.kind) {
        case SurfaceSpec::P:
            break;
        case SurfaceSpec::HP: {
            // Trade every singular corner except the one carrying c.
            bool kept = false;
            for (int k = 2; k >= 0; --k) {
                if (!kept && slot_value(k) == spec.c) {
                    kept = true;
                    continue;
                }
                if (slot_value(k) > 1) D = nodal_trade(D, slot_vertex(k));
            }
            break;
        }
        case SurfaceSpec::HPpair: {
            Int comp = markov_completion(spec.a, spec.b);
            std::multiset<Int> keep{spec.a, spec.b};
            bool traded = false;
            for (int k = 0; k < 3; ++k) {
                Int v = slot_value(k);
                auto it = keep.find(v);
                if (it != keep.end()) {
                    keep.erase(it);
                    continue;
                }
                if (v != comp) throw std::logic_error("build_surface: slot mismatch");
                D = nodal_trade(D, slot_vertex(k));
                traded = true;
            }
            if (!traded) throw std::logic_error("build_surface: nothing traded");
            break;
        }
    }
    return D;
}

}  // namespace octic
