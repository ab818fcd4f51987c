#include "markov.hpp"

#include <algorithm>
#include <map>

namespace octic {

std::array<Int, 3> MarkovTriple::sorted() const {
    std::array<Int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

MarkovTriple mutate_triple(const MarkovTriple& t, Slot s) {
    if (!t.valid()) throw std::invalid_argument("mutate_triple: not a Markov triple");
    switch (s) {
        case Slot::A: return {3 * t.b * t.c - t.a, t.b, t.c};
        case Slot::B: return {t.a, 3 * t.a * t.c - t.b, t.c};
        case Slot::C: return {t.a, t.b, 3 * t.a * t.b - t.c};
    }
    throw std::logic_error("unreachable");
}

std::string word_str(const MutationWord& w) {
    std::string s;
    for (int b : w) s += char('0' + b);
    return s;
}

static MarkovTriple triple_for_word(const MutationWord& word) {
    MarkovTriple t{1, 2, 5};
    for (int bit : word) {
        if (bit == 0)
            t = {t.c, t.b, 3 * t.b * t.c - t.a};
        else
            t = {t.a, t.c, 3 * t.a * t.c - t.b};
    }
    return t;
}

std::vector<TopographNode> topograph(int depth) {
    if (depth < 0) throw std::invalid_argument("topograph: negative depth");
    std::vector<TopographNode> nodes;
    nodes.push_back({{1, 1, 1}, {}, {}});
    if (depth >= 1) {
        nodes.push_back({{1, 1, 2}, {}, {}});
        nodes[0].children.push_back(1);
    }
    if (depth >= 2) {
        nodes.push_back({{1, 2, 5}, {}, {}});
        nodes[1].children.push_back(2);
        // Branch by words from (1,2,5); extending a word by one bit is one
        // mutation (the third mutation returns to the parent).
        struct Item {
            size_t idx;
            MutationWord word;
            MarkovTriple triple;
        };
        std::vector<Item> frontier{{2, {}, {1, 2, 5}}};
        for (int d = 3; d <= depth; ++d) {
            std::vector<Item> next;
            for (const auto& it : frontier) {
                for (int bit : {0, 1}) {
                    MutationWord w = it.word;
                    w.push_back(bit);
                    MarkovTriple t = bit == 0
                        ? MarkovTriple{it.triple.c, it.triple.b,
                                       3 * it.triple.b * it.triple.c - it.triple.a}
                        : MarkovTriple{it.triple.a, it.triple.c,
                                       3 * it.triple.a * it.triple.c - it.triple.b};
                    size_t idx = nodes.size();
                    nodes.push_back({t.sorted(), w, {}});
                    nodes[it.idx].children.push_back(idx);
                    next.push_back({idx, std::move(w), t});
                }
            }
            frontier = std::move(next);
        }
    }
    return nodes;
}

Mat2 shear_minus(const Vec& w) {
    // u - (u /\ w) w, written out: columns act on (1,0) and (0,1).
    Rat wx(w.x), wy(w.y);
    return {1 - wx * wy, wx * wx, -wy * wy, 1 + wx * wy};
}

Mat2 shear_plus(const Vec& w) {
    Rat wx(w.x), wy(w.y);
    return {1 + wx * wy, -wx * wx, wy * wy, 1 - wx * wy};
}

static Vec edge_primitive(const RatPoint& from, const RatPoint& to) {
    RatPoint d = to - from;
    Int m = den(d.x) * den(d.y) / gcd(den(d.x), den(d.y));
    return primitive(Vec(num(d.x) * (m / den(d.x)), num(d.y) * (m / den(d.y))));
}

WahlVertexData wahl_vertex(const ConvexPolygon& P, size_t i) {
    size_t n = P.size();
    WahlVertexData d;
    d.u1 = edge_primitive(P[i], P[i + 1]);
    d.u2 = edge_primitive(P[i], P[(i + n - 1) % n]);
    Int k = wedge(d.u1, d.u2);
    if (k <= 0) throw std::logic_error("wahl_vertex: non-convex corner");
    Int c = boost::multiprecision::sqrt(k);
    if (c * c != k) throw std::invalid_argument("not a Wahl vertex: u1 /\\ u2 not a square");
    Vec s = d.u1 + d.u2;
    if (s.x % c != 0 || s.y % c != 0)
        throw std::invalid_argument("not a Wahl vertex: u1 + u2 not divisible by the index");
    d.index = c;
    d.w = {s.x / c, s.y / c};
    d.monodromy = shear_plus(d.w);
    return d;
}

static ConvexPolygon polygon_dropping_collinear(std::vector<RatPoint> pts) {
    // Remove duplicate and collinear vertices from a convex cycle.
    for (bool changed = true; changed;) {
        changed = false;
        size_t n = pts.size();
        if (n < 3) throw std::invalid_argument("polygon degenerated");
        for (size_t i = 0; i < n; ++i) {
            const RatPoint& prev = pts[(i + n - 1) % n];
            const RatPoint& cur = pts[i];
            const RatPoint& next = pts[(i + 1) % n];
            if (cur == next || wedge(cur - prev, next - cur) == 0) {
                pts.erase(pts.begin() + i);
                changed = true;
                break;
            }
        }
    }
    return ConvexPolygon(pts);
}

ConvexPolygon mutate_polygon(const ConvexPolygon& P, size_t i, MutateDir dir) {
    return mutate_polygon_ex(P, i, dir).poly;
}

PolygonMutation mutate_polygon_ex(const ConvexPolygon& P, size_t i, MutateDir dir) {
    WahlVertexData d = wahl_vertex(P, i);
    size_t n = P.size();
    const RatPoint v = P[i];
    RatPoint wq{Rat(d.w.x), Rat(d.w.y)};
    auto side = [&](const RatPoint& p) {
        Rat s = wedge(wq, p - v);
        return s > 0 ? 1 : s < 0 ? -1 : 0;
    };
    int side_u1 = d.u1.x * d.w.y - d.u1.y * d.w.x < 0 ? 1 : -1;  // side(v + u1)
    // Walk counter-clockwise from v; the first vertices lie on the u1 side.
    std::vector<RatPoint> part1{v}, part2;
    std::optional<RatPoint> crossing;
    for (size_t k = 1; k < n; ++k) {
        RatPoint p = P[(i + k) % n];
        int s = side(p);
        if (!crossing) {
            if (s == side_u1) {
                part1.push_back(p);
            } else if (s == 0) {
                crossing = p;
            } else {
                // The eigenline crosses the previous edge; intersect.
                const RatPoint& q = part1.back();
                RatPoint e = p - q;
                Rat t = wedge(wq, v - q) / wedge(wq, e);
                crossing = q + e * t;
                part2.push_back(p);
            }
        } else {
            part2.push_back(p);
        }
    }
    if (!crossing) throw std::invalid_argument("mutate_polygon: eigenline misses the interior");
    part1.push_back(*crossing);
    // part1 = [v, u1-side vertices..., X]; part2 = remaining u2-side vertices.
    Mat2 M = dir == MutateDir::Clockwise ? shear_plus(d.w) : shear_minus(d.w);
    auto apply_about_v = [&](const RatPoint& p) { return v + M.apply(p - v); };
    std::vector<RatPoint> cycle;
    if (dir == MutateDir::Clockwise) {
        cycle = part1;  // keep the u1 side, shear the u2 side
        for (const RatPoint& p : part2) cycle.push_back(apply_about_v(p));
    } else {
        cycle.push_back(v);
        for (size_t k = 1; k + 1 < part1.size(); ++k) cycle.push_back(apply_about_v(part1[k]));
        cycle.push_back(*crossing);
        for (const RatPoint& p : part2) cycle.push_back(p);
    }
    PolygonMutation m{polygon_dropping_collinear(std::move(cycle)),
                      v,
                      *crossing,
                      d.w,
                      M,
                      dir == MutateDir::Clockwise ? -side_u1 : side_u1};
    return m;
}

RatPoint barycentre() { return {Rat(8, 3), Rat(8, 3)}; }

static MarkovTriangle finish_triangle(ConvexPolygon poly, MarkovTriple t, MutationWord word) {
    MarkovTriangle T{std::move(poly), std::move(t), std::move(word), {}, {}, {}, {}, {}, {}};
    const auto& vs = T.poly.vertices();
    if (vs.size() != 3) throw std::logic_error("markov_triangle: not a triangle");
    std::vector<size_t> bottom, top;
    for (size_t i = 0; i < 3; ++i) (vs[i].y == 0 ? bottom : top).push_back(i);
    if (bottom.size() != 2 || top.size() != 1)
        throw std::logic_error("markov_triangle: bottom edge not on the x-axis");
    size_t i0 = bottom[0], i1 = bottom[1];
    if (vs[i1].x < vs[i0].x) std::swap(i0, i1);
    T.p0 = vs[i0];
    T.p1 = vs[i1];
    T.p2 = vs[top[0]];
    T.w0 = wahl_vertex(T.poly, i0);
    T.w1 = wahl_vertex(T.poly, i1);
    T.w2 = wahl_vertex(T.poly, top[0]);
    return T;
}

MarkovTriangle markov_triangle(const MutationWord& word) {
    ConvexPolygon poly({RatPoint(Rat(0), Rat(0)), RatPoint(Rat(20), Rat(0)),
                        RatPoint(Rat(0), Rat(16, 5))});
    MarkovTriple t{1, 2, 5};
    for (int bit : word) {
        MarkovTriangle T = finish_triangle(poly, t, {});
        const auto& vs = T.poly.vertices();
        size_t idx = 0;
        RatPoint target = bit == 0 ? T.p0 : T.p1;
        while (vs[idx] != target) ++idx;
        poly = mutate_polygon(T.poly, idx,
                              bit == 0 ? MutateDir::Clockwise : MutateDir::Anticlockwise);
        if (bit == 0)
            t = {t.c, t.b, 3 * t.b * t.c - t.a};
        else
            t = {t.a, t.c, 3 * t.a * t.c - t.b};
    }
    return finish_triangle(std::move(poly), std::move(t), word);
}

NCoords MarkovTriangle::n_coords(const RatPoint& n) const {
    auto coord = [&](const RatPoint& p, const Vec& w) {
        return wedge(n - p, RatPoint(Rat(w.x), Rat(w.y)));
    };
    return {coord(p0, w0.w), coord(p1, w1.w), coord(p2, w2.w)};
}

std::string type_str(TriangleType t) {
    switch (t) {
        case TriangleType::Five: return "5";
        case TriangleType::A: return "A";
        case TriangleType::B: return "B";
        case TriangleType::C: return "C";
    }
    return "?";
}

const ConvexPolygon& reference_polygon(TriangleType t) {
    static const ConvexPolygon five({RatPoint(Rat(0), Rat(0)), RatPoint(Rat(0), Rat(3)),
                                     RatPoint(Rat(1), Rat(3)), RatPoint(Rat(20), Rat(0))});
    static const ConvexPolygon a({RatPoint(Rat(0), Rat(0)), RatPoint(Rat(0), Rat(3)),
                                  RatPoint(Rat(14), Rat(1)), RatPoint(Rat(20), Rat(0))});
    static const ConvexPolygon b({RatPoint(Rat(-3), Rat(0)), RatPoint(Rat(2), Rat(2)),
                                  RatPoint(Rat(7), Rat(2)), RatPoint(Rat(14), Rat(1)),
                                  RatPoint(Rat(20), Rat(0))});
    static const ConvexPolygon c({RatPoint(Rat(-3), Rat(0)), RatPoint(Rat(-1), Rat(1)),
                                  RatPoint(Rat(2), Rat(2)), RatPoint(Rat(7), Rat(2)),
                                  RatPoint(Rat(20), Rat(0))});
    switch (t) {
        case TriangleType::Five: return five;
        case TriangleType::A: return a;
        case TriangleType::B: return b;
        case TriangleType::C: return c;
    }
    throw std::logic_error("unreachable");
}

TypeResult classify_type(const MutationWord& word) {
    TypeResult r;
    if (word.empty())
        r.by_rule = TriangleType::Five;
    else if (std::all_of(word.begin(), word.end(), [](int b) { return b == 1; }))
        r.by_rule = TriangleType::A;
    else if (word.front() == 1)
        r.by_rule = TriangleType::B;
    else
        r.by_rule = TriangleType::C;

    std::vector<Vec> pts = lattice_points(markov_triangle(word).poly);
    r.by_lattice = r.by_rule;
    bool found = false;
    for (TriangleType t :
         {TriangleType::Five, TriangleType::A, TriangleType::B, TriangleType::C}) {
        if (lattice_points(reference_polygon(t)) == pts) {
            r.by_lattice = t;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("classify_type: lattice points match no reference set");
    r.rule_agrees = r.by_lattice == r.by_rule;
    return r;
}

PersistenceCertificate persistence_certificate(const MutationWord& word, const Vec& n) {
    MarkovTriangle T = markov_triangle(word);
    RatPoint p{Rat(n.x), Rat(n.y)};
    ConvexPolygon inner({T.p0, T.p1, barycentre()});
    if (!inner.contains(p))
        throw std::invalid_argument("persistence_certificate: point outside the inner triangle");
    PersistenceCertificate cert;
    cert.word = word;
    cert.n = n;
    cert.coords = T.n_coords(p);
    const Rat& n0 = cert.coords.n0;
    const Rat& n1 = cert.coords.n1;
    const Rat& n2 = cert.coords.n2;
    cert.branch0 = n2 >= (1 - 3 * Rat(T.triple.b)) * n0 && n0 >= 2;
    cert.branch1 = n2 <= (1 - 3 * Rat(T.triple.a)) * n1 && n1 <= -2;
    return cert;
}

}  // namespace octic
