#include "emit.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace octic {

const char* tool_version() { return "1.0.0"; }

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string input_hash(const std::string& data) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(data)));
    return buf;
}

// --- rationals and geometry --------------------------------------------------

Json rat_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const Json& j) {
    auto r = parse_rat(j.get<std::string>());
    if (!r) throw std::invalid_argument("bad rational: " + j.dump());
    return *r;
}

Json vec_json(const Vec& v) { return Json::array({v.x.str(), v.y.str()}); }

Vec vec_from_json(const Json& j) {
    Rat x = rat_from_json(j.at(0)), y = rat_from_json(j.at(1));
    return RatPoint(x, y).to_vec();
}

Json point_json(const RatPoint& p) { return Json::array({rat_str(p.x), rat_str(p.y)}); }

RatPoint point_from_json(const Json& j) {
    return {rat_from_json(j.at(0)), rat_from_json(j.at(1))};
}

Json polygon_json(const ConvexPolygon& P) {
    Json verts = Json::array();
    for (const RatPoint& v : P.vertices()) verts.push_back(point_json(v));
    return Json{{"vertices", verts}, {"area", rat_json(P.area())}};
}

ConvexPolygon polygon_from_json(const Json& j) {
    std::vector<RatPoint> verts;
    for (const Json& v : j.at("vertices")) verts.push_back(point_from_json(v));
    return ConvexPolygon(verts);
}

namespace {

Json mat_json(const Mat2& m) {
    return Json::array({Json::array({rat_json(m.a), rat_json(m.b)}),
                        Json::array({rat_json(m.c), rat_json(m.d)})});
}

Mat2 mat_from_json(const Json& j) {
    return {rat_from_json(j.at(0).at(0)), rat_from_json(j.at(0).at(1)),
            rat_from_json(j.at(1).at(0)), rat_from_json(j.at(1).at(1))};
}

}  // namespace

Json diagram_json(const TropDiagram& D) {
    Json cuts = Json::array();
    for (const TropCut& c : D.cuts)
        cuts.push_back(Json{{"vertex", point_json(c.vertex)},
                            {"dir", vec_json(c.dir)},
                            {"monodromy", mat_json(c.monodromy)},
                            {"index", c.index.str()}});
    Json markers = Json::array();
    for (const TropMarker& m : D.markers)
        markers.push_back(Json{{"pos", point_json(m.pos)},
                               {"n", m.sing.n.str()},
                               {"q", m.sing.q.str()}});
    return Json{{"polygon", polygon_json(D.poly)},
                {"origin", point_json(D.origin)},
                {"cuts", cuts},
                {"markers", markers}};
}

TropDiagram diagram_from_json(const Json& j) {
    TropDiagram D{polygon_from_json(j.at("polygon")), point_from_json(j.at("origin")), {}, {}};
    for (const Json& c : j.at("cuts"))
        D.cuts.push_back({point_from_json(c.at("vertex")), vec_from_json(c.at("dir")),
                          mat_from_json(c.at("monodromy")), Int(c.at("index").get<std::string>())});
    for (const Json& m : j.at("markers"))
        D.markers.push_back({point_from_json(m.at("pos")),
                             CyclicQuotient(Int(m.at("n").get<std::string>()),
                                            Int(m.at("q").get<std::string>()))});
    return D;
}

// --- engine outputs ----------------------------------------------------------

Json displacement_json(const DisplacementTable& T) {
    Json items = Json::array();
    for (const BoundaryItem& it : T.items) {
        Json row{{"label", it.label},
                 {"normal", vec_json(it.normal)},
                 {"drawn_normal", vec_json(it.drawn_normal)},
                 {"b0", rat_json(it.b0)},
                 {"bt", rat_json(it.bt)},
                 {"displacement", rat_json(it.eps)},
                 {"length", rat_json(it.length)}};
        if (it.fan >= 0) row["fan"] = it.fan;
        if (it.fuse >= 0) row["fused_with"] = it.fuse;
        if (it.crossed_cut >= 0) row["crossed_cut"] = it.crossed_cut;
        if (it.parallel_cut >= 0) row["parallel_cut"] = it.parallel_cut;
        items.push_back(std::move(row));
    }
    Json fans = Json::array();
    for (const FanRecord& f : T.fans) {
        Json chain = Json::array();
        for (const Int& d : f.chain) chain.push_back(d.str());
        fans.push_back(Json{{"corner", f.corner},
                            {"singularity", f.sing.str()},
                            {"chain", chain}});
    }
    return Json{{"origin", point_json(T.origin)},
                {"items", items},
                {"fans", fans},
                {"node_outside", T.node_outside}};
}

Json discrepancy_json(const DiscrepancyReport& rep) {
    Json alpha = Json::array(), beta = Json::array();
    for (const Rat& a : rep.alpha) alpha.push_back(rat_json(a));
    for (const Rat& b : rep.beta) beta.push_back(rat_json(b));
    const char* v = rep.verdict == DiscrepancyReport::LogTerminalRange ? "log-terminal-range"
                    : rep.verdict == DiscrepancyReport::Boundary       ? "boundary"
                                                                       : "not-log-canonical";
    return Json{{"alpha", alpha}, {"beta", beta}, {"verdict", v}};
}

Json triangle_json(const MarkovTriangle& T) {
    return Json{{"word", word_str(T.word)},
                {"triple", Json::array({T.triple.a.str(), T.triple.b.str(), T.triple.c.str()})},
                {"polygon", polygon_json(T.poly)},
                {"p0", point_json(T.p0)},
                {"p1", point_json(T.p1)},
                {"p2", point_json(T.p2)}};
}

Json topograph_json(const std::vector<TopographNode>& nodes) {
    Json out = Json::array();
    for (size_t i = 0; i < nodes.size(); ++i) {
        const TopographNode& n = nodes[i];
        Json children = Json::array();
        for (size_t c : n.children) children.push_back(c);
        out.push_back(Json{{"id", i},
                           {"triple", Json::array({n.triple[0].str(), n.triple[1].str(),
                                                   n.triple[2].str()})},
                           {"word", word_str(n.word)},
                           {"children", children}});
    }
    return out;
}

std::string topograph_dot(const std::vector<TopographNode>& nodes) {
    std::ostringstream os;
    os << "digraph topograph {\n  rankdir=TB;\n  node [shape=box];\n";
    for (size_t i = 0; i < nodes.size(); ++i) {
        const TopographNode& n = nodes[i];
        os << "  n" << i << " [label=\"(" << n.triple[0] << "," << n.triple[1] << ","
           << n.triple[2] << ")\"];\n";
    }
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t c : nodes[i].children) os << "  n" << i << " -> n" << c << ";\n";
    os << "}\n";
    return os.str();
}

Json curve_graph_json(const CurveGraph& G) {
    Json curves = Json::array();
    for (const CurveNode& n : G.nodes) {
        const char* kind = n.kind == CurveKind::Boundary      ? "boundary"
                           : n.kind == CurveKind::Exceptional ? "exceptional"
                                                              : "germ";
        curves.push_back(Json{{"id", n.id},
                              {"square", n.square.str()},
                              {"mult", n.mult.str()},
                              {"kind", kind}});
    }
    Json points = Json::array();
    for (const MeetPoint& p : G.points) {
        Json row{{"curves", p.curves}};
        if (p.has_tangency())
            row["tangency"] = Json{{"a", p.tang_a}, {"b", p.tang_b}, {"order", p.tang_order.str()}};
        if (p.has_cusp()) row["cusp"] = Json{{"curve", p.cusp_curve}, {"k", p.cusp_k.str()}};
        points.push_back(std::move(row));
    }
    return Json{{"curves", curves}, {"points", points}};
}

CurveGraph curve_graph_from_json(const Json& j) {
    CurveGraph G;
    for (const Json& c : j.at("curves")) {
        std::string kind_s = c.value("kind", "exceptional");
        CurveKind kind = kind_s == "boundary"      ? CurveKind::Boundary
                         : kind_s == "exceptional" ? CurveKind::Exceptional
                         : kind_s == "germ"        ? CurveKind::BranchGerm
                                                   : throw std::invalid_argument(
                                                         "curve kind: " + kind_s);
        G.add_node(c.at("id").get<std::string>(), Int(c.at("square").get<std::string>()),
                   Int(c.value("mult", "0")), kind);
    }
    if (j.contains("points"))
        for (const Json& p : j.at("points")) {
            MeetPoint mp;
            mp.curves = p.at("curves").get<std::vector<std::string>>();
            for (const std::string& id : mp.curves)
                if (!G.has_node(id))
                    throw std::invalid_argument("meeting point names unknown curve " + id);
            if (p.contains("tangency")) {
                mp.tang_a = p.at("tangency").at("a").get<int>();
                mp.tang_b = p.at("tangency").at("b").get<int>();
                mp.tang_order = Int(p.at("tangency").at("order").get<std::string>());
            }
            if (p.contains("cusp")) {
                mp.cusp_curve = p.at("cusp").at("curve").get<std::string>();
                mp.cusp_k = Int(p.at("cusp").at("k").get<std::string>());
            }
            G.points.push_back(std::move(mp));
        }
    if (j.contains("germs"))
        for (const Json& g : j.at("germs")) {
            std::string type = g.at("type").get<std::string>();
            std::string curve = g.at("curve").get<std::string>();
            std::string id = g.at("id").get<std::string>();
            Int k(g.at("k").get<std::string>());
            if (type == "tangent")
                add_tangent_germ(G, curve, k, id);
            else if (type == "two_branch")
                add_two_branch_germ(G, curve, k, id, id + "'");
            else if (type == "cusp")
                add_cusp_germ(G, curve, k, id);
            else
                throw std::invalid_argument("germ type: " + type);
        }
    return G;
}

Json cover_graph_json(const CoverGraph& G) {
    Json nodes = Json::array();
    for (const CoverNode& n : G.nodes)
        nodes.push_back(Json{{"id", n.id}, {"square", n.square.str()}});
    Json edges = Json::array();
    for (const auto& [a, b] : G.edges) edges.push_back(Json::array({a, b}));
    return Json{{"nodes", nodes}, {"edges", edges}, {"canonical_code", canonical_code(G)}};
}

namespace {

Json family_json(const FamilyMatch& m) {
    const char* kind = m.kind == FamilyMatch::StarIIa    ? "star-IIa"
                       : m.kind == FamilyMatch::ChainIIb ? "chain-IIb"
                       : m.kind == FamilyMatch::ForkIIc  ? "fork-IIc"
                       : m.kind == FamilyMatch::ShapeIId ? "shape-IId"
                       : m.kind == FamilyMatch::ShapeIIe ? "shape-IIe"
                                                         : "none";
    return Json{{"kind", kind}, {"t1", m.t1.str()}, {"t2", m.t2.str()}};
}

}  // namespace

Json cover_outcome_json(const CoverOutcome& out) {
    Json basket = Json::array();
    for (const CyclicQuotient& s : out.basket) basket.push_back(s.str());
    Json j{{"basket", basket}};
    if (out.family) j["family"] = family_json(*out.family);
    if (!out.alpha.empty()) {
        Json alpha = Json::object();
        for (const auto& [id, a] : out.alpha) alpha[id] = rat_json(a);
        j["alpha"] = alpha;
        j["min_alpha"] = rat_json(*out.min_alpha);
    }
    return j;
}

Json sweep_record_json(const SweepRecord& r) {
    Json offsets = Json::array();
    for (const MarkedOffset& o : r.offsets)
        offsets.push_back(Json{{"cut", o.cut},
                               {"normal", vec_json(o.normal)},
                               {"full", rat_json(o.full)},
                               {"interior", rat_json(o.interior)}});
    auto t = r.triple.sorted();
    Json j{{"triple", Json::array({t[0].str(), t[1].str(), t[2].str()})},
           {"word", word_str(r.word)},
           {"exceptional", r.exceptional},
           {"offsets", offsets},
           {"min_interior", rat_json(r.min_interior)},
           {"oracle_nonnormal", r.oracle_nonnormal},
           {"certified", r.certificate_holds}};
    if (r.witness) j["witness"] = vec_json(*r.witness);
    return j;
}

Json sweep_json(const SweepResult& s) {
    Json records = Json::array();
    for (const SweepRecord& r : s.records) records.push_back(sweep_record_json(r));
    Json survivors = Json::array();
    for (const auto& t : s.survivors)
        survivors.push_back(Json::array({t[0].str(), t[1].str(), t[2].str()}));
    return Json{{"depth", s.depth},
                {"records", records},
                {"survivors", survivors},
                {"consistent", s.consistent}};
}

Json case_verdict_json(const CaseVerdict& v) {
    Json j{{"surface", v.surface.str()},
           {"case", v.branch_case ? case_str(*v.branch_case) : "generic"},
           {"support", v.support_note},
           {"verdict", verdict_str(v.verdict)},
           {"detail", v.detail}};
    if (!v.basket.empty()) {
        Json basket = Json::array();
        for (const CyclicQuotient& s : v.basket) basket.push_back(s.str());
        j["basket"] = basket;
    }
    if (v.chain_report) j["chain"] = discrepancy_json(*v.chain_report);
    if (v.cover_family) j["cover_family"] = family_json(*v.cover_family);
    if (!v.cover_alpha.empty()) {
        Json alpha = Json::object();
        for (const auto& [id, a] : v.cover_alpha) alpha[id] = rat_json(a);
        j["cover_alpha"] = alpha;
    }
    if (!v.branch_components.empty()) {
        Json comps = Json::array();
        for (const ComponentMult& c : v.branch_components)
            comps.push_back(Json{{"label", c.label}, {"mult", c.mult.str()}});
        j["branch_components"] = comps;
    }
    return j;
}

Json report_json(const ClassificationReport& rep, const std::string& hash) {
    Json verdicts = Json::array();
    for (const CaseVerdict& v : rep.verdicts) verdicts.push_back(case_verdict_json(v));
    Json strata = Json::array();
    for (const Stratum& s : rep.strata)
        strata.push_back(Json{{"surface", s.surface.str()},
                              {"case", case_str(s.c)},
                              {"dim", s.dim}});
    Json adjacencies = Json::array();
    for (const auto& [inner, outer] : rep.adjacencies)
        adjacencies.push_back(Json{{"stratum", inner}, {"in_closure_of", outer}});
    Json exclusions = Json::array();
    for (const auto& [surf, parent] : rep.exclusions)
        exclusions.push_back(Json{{"surface", surf}, {"degeneration_of", parent}});
    return Json{{"tool_version", tool_version()},
                {"input_hash", hash},
                {"depth", rep.depth},
                {"theta_basis", rep.theta_basis},
                {"moduli_dim", rep.moduli_dim},
                {"smooth_dim", rep.smooth_dim},
                {"survivors", rep.survivors},
                {"strata", strata},
                {"adjacencies", adjacencies},
                {"excluded_by_degeneration", exclusions},
                {"verdicts", verdicts},
                {"sweep", sweep_json(rep.sweep)}};
}

// --- SVG ---------------------------------------------------------------------

namespace {

constexpr int kUnit = 24;  // pixels per lattice unit

std::string px(const Rat& v) {
    // v * kUnit as a fixed two-decimal string (exact: denominators divide
    // the coordinate denominators; rounding is deterministic).
    Rat scaled = v * kUnit;
    long long cents = static_cast<long long>(floor_rat(scaled * 100 + Rat(1, 2)));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld.%02lld", cents / 100, std::abs(cents % 100));
    return buf;
}

}  // namespace

std::string diagram_svg(const TropDiagram& D, const std::vector<Vec>& support) {
    const auto& vs = D.poly.vertices();
    Rat xmin = D.origin.x, xmax = D.origin.x, ymin = D.origin.y, ymax = D.origin.y;
    for (const RatPoint& v : vs) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    xmin -= 1; ymin -= 1; xmax += 1; ymax += 1;
    auto X = [&](const Rat& x) { return px(x - xmin); };
    auto Y = [&](const Rat& y) { return px(ymax - y); };  // y axis points up
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(xmax - xmin)
       << "\" height=\"" << px(ymax - ymin) << "\" viewBox=\"0 0 " << px(xmax - xmin) << " "
       << px(ymax - ymin) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Background lattice dots.
    for (Int y = ceil_rat(ymin); y <= floor_rat(ymax); ++y)
        for (Int x = ceil_rat(xmin); x <= floor_rat(xmax); ++x)
            os << "<circle cx=\"" << X(Rat(x)) << "\" cy=\"" << Y(Rat(y))
               << "\" r=\"1\" fill=\"#cccccc\"/>\n";

    // Polygon outline.
    os << "<path d=\"";
    for (size_t i = 0; i < vs.size(); ++i)
        os << (i == 0 ? "M" : "L") << X(vs[i].x) << " " << Y(vs[i].y) << " ";
    os << "Z\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

    // Branch cuts: dashed from vertex to origin.
    for (const TropCut& c : D.cuts)
        os << "<line x1=\"" << X(c.vertex.x) << "\" y1=\"" << Y(c.vertex.y) << "\" x2=\""
           << X(D.origin.x) << "\" y2=\"" << Y(D.origin.y)
           << "\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";

    // Lattice points of the polygon: filled when in the support, open
    // circles when dropped.
    std::set<Vec> supp(support.begin(), support.end());
    for (const Vec& p : lattice_points(D.poly)) {
        if (supp.count(p))
            os << "<circle cx=\"" << X(Rat(p.x)) << "\" cy=\"" << Y(Rat(p.y))
               << "\" r=\"3.2\" fill=\"black\"/>\n";
        else
            os << "<circle cx=\"" << X(Rat(p.x)) << "\" cy=\"" << Y(Rat(p.y))
               << "\" r=\"3.2\" fill=\"white\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
    }

    // Singularity markers: stars with their 1/n(1,q) label.
    for (const TropMarker& m : D.markers) {
        os << "<text x=\"" << X(m.pos.x) << "\" y=\"" << Y(m.pos.y)
           << "\" font-size=\"14\" text-anchor=\"middle\" dominant-baseline=\"middle\">"
           << "&#9733;</text>\n";
        os << "<text x=\"" << X(m.pos.x) << "\" y=\"" << Y(m.pos.y)
           << "\" dx=\"8\" dy=\"-8\" font-size=\"10\" font-family=\"monospace\">" << m.sing.str()
           << "</text>\n";
    }

    // Origin of the eigenline pencil: a small cross.
    os << "<path d=\"M" << X(D.origin.x) << " " << Y(D.origin.y)
       << " m-4 0 l8 0 m-4 -4 l0 8\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace octic
