#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trop.hpp"

#include <algorithm>

using namespace octic;

namespace {

const BoundaryItem& item(const DisplacementTable& T, const std::string& label) {
    for (const BoundaryItem& it : T.items)
        if (it.label == label) return it;
    throw std::runtime_error("no item " + label);
}

std::vector<Vec> generic_support(const TropDiagram& D) { return lattice_points(D.poly); }

std::vector<Vec> support_without(const TropDiagram& D, const std::vector<Vec>& dropped) {
    std::vector<Vec> s;
    for (const Vec& p : lattice_points(D.poly))
        if (std::find(dropped.begin(), dropped.end(), p) == dropped.end()) s.push_back(p);
    return s;
}

}  // namespace

TEST_CASE("resolution_fan pinned examples") {
    CornerFan f = resolution_fan(Vec{1, 0}, Vec{-4, -25});
    CHECK(f.n == 25);
    CHECK(f.q == 4);
    CHECK(f.chain == HJChain{7, 2, 2, 2});
    CHECK(f.rays == std::vector<Vec>({{0, -1}, {-1, -7}, {-2, -13}, {-3, -19}}));
    // Smooth corner: no rays.
    CornerFan s = resolution_fan(Vec{1, 0}, Vec{0, -1});
    CHECK(s.n == 1);
    CHECK(s.rays.empty());
    CHECK(s.chain.empty());
    CHECK_THROWS_AS(resolution_fan(Vec{1, 0}, Vec{0, 1}), std::invalid_argument);
}

TEST_CASE("corner fan of the HP(13) triangle") {
    MarkovTriangle T = surface_triangle(parse_surface("HP:13"));
    CHECK(T.triple == MarkovTriple{1, 5, 13});
    CornerFan f = corner_fan(T.poly, vertex_index(T.poly, T.p2));
    CHECK(f.rays == std::vector<Vec>({{0, -1},
                                      {-1, -7},
                                      {-5, -34},
                                      {-9, -61},
                                      {-13, -88},
                                      {-17, -115},
                                      {-21, -142}}));
    CHECK(f.chain == HJChain{7, 5, 2, 2, 2, 2, 2});
    CHECK(f.n == 169);
    CHECK(f.q == 25);
}

TEST_CASE("nodal trade and absorb round trip") {
    MarkovTriangle T = markov_triangle({});
    TropDiagram D = diagram_for(T);
    CHECK(D.origin == RatPoint(Rat(8, 3), Rat(8, 3)));
    size_t p1 = vertex_index(D.poly, RatPoint{20, 0});
    TropDiagram traded = nodal_trade(D, p1);
    REQUIRE(traded.cuts.size() == 1);
    CHECK(traded.cuts[0].dir == Vec{-13, 2});
    CHECK(traded.cuts[0].index == 2);
    CHECK(traded.cuts[0].monodromy == Mat2{-25, -169, 4, 27});
    CHECK(traded.cuts[0].monodromy.det() == 1);
    CHECK(traded.cuts[0].monodromy.apply(Vec{-13, 2}) == Vec{-13, 2});
    // Trading a smooth corner is a no-op.
    size_t p0 = vertex_index(D.poly, RatPoint{0, 0});
    TropDiagram same = nodal_trade(D, p0);
    CHECK(same.cuts.empty());
    // Absorbing the cut records the corner singularity as a marker.
    TropDiagram back = absorb_cut(traded, 0);
    CHECK(back.cuts.empty());
    REQUIRE(back.markers.size() == 1);
    CHECK(back.markers[0].pos == RatPoint{20, 0});
    CHECK(back.markers[0].sing == CyclicQuotient(4, 1));
}

TEST_CASE("appendix mutation pipeline") {
    TropDiagram D = diagram_from_polygon(ConvexPolygon({{0, 0}, {10, 0}, {0, 10}}));
    CHECK(D.origin == RatPoint(Rat(10, 3), Rat(10, 3)));

    // First mutation at (10,0).
    TropDiagram D1 = mutate_diagram(D, vertex_index(D.poly, RatPoint{10, 0}),
                                    MutateDir::Anticlockwise, /*allow_smooth=*/true);
    CHECK(D1.poly == ConvexPolygon({{0, 0}, {20, 0}, {0, 5}}));
    REQUIRE(D1.cuts.size() == 1);
    CHECK(D1.cuts[0].vertex == RatPoint{0, 5});
    CHECK(D1.cuts[0].dir == Vec{2, -1});
    CHECK(D1.cuts[0].monodromy == Mat2{-1, -4, 1, 3});

    // Second mutation at (20,0) transports the first cut across the shear.
    TropDiagram D2 = mutate_diagram(D1, vertex_index(D1.poly, RatPoint{20, 0}),
                                    MutateDir::Anticlockwise, /*allow_smooth=*/true);
    CHECK(D2.poly == ConvexPolygon({{0, 0}, {25, 0}, {0, 4}}));
    REQUIRE(D2.cuts.size() == 2);
    auto moved = D2.cut_at(RatPoint{25, 0});
    auto fresh = D2.cut_at(RatPoint{0, 4});
    REQUIRE(moved.has_value());
    REQUIRE(fresh.has_value());
    CHECK(D2.cuts[*moved].dir == Vec{-13, 2});
    CHECK(D2.cuts[*moved].monodromy == Mat2{-25, -169, 4, 27});
    CHECK(D2.cuts[*fresh].dir == Vec{5, -1});

    // Absorb the fresh cut: the corner has become a genuine 1/25(1,4).
    TropDiagram D3 = absorb_cut(D2, *fresh);
    REQUIRE(D3.cuts.size() == 1);
    CHECK(D3.cuts[0].vertex == RatPoint{25, 0});
    REQUIRE(D3.markers.size() == 1);
    CHECK(D3.markers[0].pos == RatPoint{0, 4});
    CHECK(D3.markers[0].sing == CyclicQuotient(25, 4));

    // Non-toric resolution down to the Hirzebruch surface F7.
    NonToricResolution R = resolve_diagram_cuts(D3);
    CHECK(R.resolution_directions ==
          std::vector<Vec>({{1, 0}, {7, -1}, {13, -2}, {19, -3}}));
    REQUIRE(R.initial.size() == 6);
    std::vector<Int> init_sq;
    for (const auto& c : R.initial) init_sq.push_back(c.square);
    CHECK(init_sq == std::vector<Int>({0, -7, -2, -2, -2, 6}));
    CHECK(R.contracted == std::vector<std::string>({"e3", "e4"}));
    REQUIRE(R.final_cycle.size() == 4);
    std::vector<Int> fin_sq;
    for (const auto& c : R.final_cycle) fin_sq.push_back(c.square);
    CHECK(fin_sq == std::vector<Int>({0, -7, 0, 7}));
}

TEST_CASE("mutating back is the identity on diagrams") {
    TropDiagram D = nodal_trade(diagram_for(markov_triangle({})),
                                vertex_index(markov_triangle({}).poly, RatPoint{20, 0}));
    TropDiagram M = mutate_diagram(D, vertex_index(D.poly, RatPoint{20, 0}),
                                   MutateDir::Anticlockwise);
    size_t back_v = vertex_index(M.poly, M.cuts.back().vertex);
    TropDiagram B = mutate_diagram(M, back_v, MutateDir::Clockwise);
    CHECK(B.poly == D.poly);
    REQUIRE(B.cuts.size() == 1);
    CHECK(B.cuts[0].vertex == D.cuts[0].vertex);
    CHECK(B.cuts[0].dir == D.cuts[0].dir);
    CHECK(B.cuts[0].monodromy == D.cuts[0].monodromy);
}

TEST_CASE("surface builders") {
    CHECK(parse_surface("P:1,2,5").str() == "P:1,2,5");
    CHECK(parse_surface("HP:13").str() == "HP:13");
    CHECK(parse_surface("HPpair:5,29").str() == "HPpair:5,29");
    CHECK_THROWS_AS(parse_surface("Q:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_surface("P:1,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_surface("P:1,2,6"), std::invalid_argument);

    TropDiagram p111 = build_surface(parse_surface("P:1,1,1"));
    CHECK(p111.poly == ConvexPolygon({{0, 0}, {8, 0}, {0, 8}}));
    CHECK(p111.cuts.empty());
    TropDiagram p112 = build_surface(parse_surface("P:1,1,2"));
    CHECK(p112.poly == ConvexPolygon({{0, 0}, {16, 0}, {0, 4}}));
    CHECK(p112.poly.area() == 32);

    TropDiagram hp5 = build_surface(parse_surface("HP:5"));
    CHECK(hp5.poly == ConvexPolygon({{0, 0}, {20, 0}, {0, Rat(16, 5)}}));
    REQUIRE(hp5.cuts.size() == 1);
    CHECK(hp5.cuts[0].vertex == RatPoint{20, 0});
    CHECK(hp5.cuts[0].dir == Vec{-13, 2});

    TropDiagram hp29 = build_surface(parse_surface("HP:29"));
    REQUIRE(hp29.cuts.size() == 2);
    auto c0 = hp29.cut_at(RatPoint(Rat(-16, 5), Rat(0)));
    auto c1 = hp29.cut_at(RatPoint{20, 0});
    REQUIRE(c0.has_value());
    REQUIRE(c1.has_value());
    CHECK(hp29.cuts[*c0].dir == Vec{11, 5});
    CHECK(hp29.cuts[*c1].dir == Vec{-13, 2});

    // HPpair completes {a,b} to a Markov triple and trades the completion.
    TropDiagram hp5_29 = build_surface(parse_surface("HPpair:5,29"));
    REQUIRE(hp5_29.cuts.size() == 1);
    CHECK(hp5_29.cuts[0].index == 2);
    TropDiagram hp2_29 = build_surface(parse_surface("HPpair:2,29"));
    REQUIRE(hp2_29.cuts.size() == 1);
    CHECK(hp2_29.cuts[0].index == 5);
    CHECK(hp2_29.cuts[0].dir == Vec{11, 5});
    CHECK_THROWS_AS(build_surface(parse_surface("HPpair:1,1")), std::invalid_argument);
    CHECK_THROWS_AS(build_surface(parse_surface("HPpair:2,3")), std::invalid_argument);
}

TEST_CASE("displacement: HP(5) generic support") {
    TropDiagram D = build_surface(parse_surface("HP:5"));
    DisplacementTable T = displace_edges(D, generic_support(D));
    REQUIRE(T.fans.size() == 1);
    CHECK(T.fans[0].sing == CyclicQuotient(25, 4));
    CHECK(item(T, "e1").length == 1);
    CHECK(item(T, "e2").length == 0);
    CHECK(item(T, "e3").length == 0);
    CHECK(item(T, "e4").length == 1);
    CHECK(item(T, "e1").eps == Rat(1, 5));
    CHECK(item(T, "e2").eps == Rat(2, 5));
    CHECK(item(T, "e3").eps == Rat(3, 5));
    CHECK(item(T, "e4").eps == Rat(4, 5));
    CHECK(!T.node_outside);
    // The discrepancy report along the fan: strictly log terminal.
    CHECK(fan_discrepancies(T, 0).verdict == DiscrepancyReport::LogTerminalRange);
}

TEST_CASE("displacement: HP(5) support missing q2 = (1,3)") {
    TropDiagram D = build_surface(parse_surface("HP:5"));
    DisplacementTable T = displace_edges(D, support_without(D, {{1, 3}}));
    CHECK(item(T, "e1").length == 0);
    CHECK(item(T, "e2").length == 1);
    CHECK(item(T, "e3").length == 1);
    CHECK(item(T, "e4").length == 0);
    CHECK(item(T, "e1").eps == Rat(1, 5));
    CHECK(item(T, "e2").eps == Rat(7, 5));
    CHECK(item(T, "e3").eps == Rat(8, 5));
    CHECK(item(T, "e4").eps == Rat(4, 5));
    // The node falls outside the displaced polygon and e3 runs along the cut.
    CHECK(item(T, "e2").bt == Rat(-1, 3));
    CHECK(T.node_outside);
    CHECK(item(T, "e3").bt == 0);
    CHECK(item(T, "e3").runs_along_cut);
    CHECK(item(T, "e3").seg_begin == RatPoint{20, 0});
    CHECK(item(T, "e3").seg_end == RatPoint{7, 2});
}

TEST_CASE("displacement: HP(13) generic support") {
    TropDiagram D = build_surface(parse_surface("HP:13"));
    DisplacementTable T = displace_edges(D, generic_support(D));
    std::vector<Rat> lengths, eps;
    for (int i = 1; i <= 7; ++i) {
        lengths.push_back(item(T, "e" + std::to_string(i)).length);
        eps.push_back(item(T, "e" + std::to_string(i)).eps);
    }
    CHECK(lengths == std::vector<Rat>({0, 2, 0, 0, 0, 0, 1}));
    CHECK(eps == std::vector<Rat>({Rat(1, 13), Rat(7, 13), Rat(8, 13), Rat(9, 13), Rat(10, 13),
                                   Rat(11, 13), Rat(12, 13)}));
    // e3 is parallel to the cut and lands exactly on it.
    CHECK(item(T, "e3").runs_along_cut);
    // e4..e7 cross the cut and are drawn with transported normals.
    for (int i = 4; i <= 7; ++i) CHECK(item(T, "e" + std::to_string(i)).crossed_cut == 0);
    CHECK(item(T, "e3").crossed_cut == -1);
    CHECK(item(T, "e7").drawn_normal == Vec{-1, -6});
    // Travelling counter-clockwise along the boundary, e7 runs (20,0) -> (14,1).
    CHECK(item(T, "e7").seg_begin == RatPoint{20, 0});
    CHECK(item(T, "e7").seg_end == RatPoint{14, 1});
    CHECK(item(T, "e2").seg_begin == RatPoint{14, 1});
    CHECK(item(T, "e2").seg_end == RatPoint{0, 3});
    // Discrepancies along the chain: alpha_2 = -31/26, not log canonical.
    DiscrepancyReport r = fan_discrepancies(T, 0);
    CHECK(r.alpha[1] == Rat(-31, 26));
    CHECK(r.alpha[2] == Rat(-14, 13));
    CHECK(r.verdict == DiscrepancyReport::NotLogCanonical);
}

TEST_CASE("displacement: HP(29) generic support") {
    TropDiagram D = build_surface(parse_surface("HP:29"));
    DisplacementTable T = displace_edges(D, generic_support(D));
    REQUIRE(T.fans.size() == 1);
    CHECK(T.fans[0].chain == HJChain{5, 2, 2, 2, 2, 2, 10, 2, 2, 2});
    std::vector<Rat> lengths, eps;
    for (int i = 1; i <= 10; ++i) {
        lengths.push_back(item(T, "e" + std::to_string(i)).length);
        eps.push_back(item(T, "e" + std::to_string(i)).eps);
    }
    CHECK(lengths == std::vector<Rat>({1, 0, 0, 0, 0, 1, 5, 0, 1, 0}));
    CHECK(eps == std::vector<Rat>({Rat(9, 29), Rat(16, 29), Rat(23, 29), Rat(30, 29),
                                   Rat(37, 29), Rat(44, 29), Rat(22, 29), Rat(31, 29),
                                   Rat(40, 29), Rat(20, 29)}));
    CHECK(item(T, "e2").runs_along_cut);
    CHECK(item(T, "e9").runs_along_cut);
    // The doubly-fused bottom edge spans (-3,0) -> (20,0).
    CHECK(item(T, "e_z").seg_begin == RatPoint{-3, 0});
    CHECK(item(T, "e_z").seg_end == RatPoint{20, 0});
    CHECK(item(T, "e_z").length == 23);
    // e4's line maxes out at (-1,1) with offset -2/3, so the node lies
    // strictly outside the displaced polygon.
    CHECK(item(T, "e4").bt == Rat(-2, 3));
    CHECK(T.node_outside);
    DiscrepancyReport r = fan_discrepancies(T, 0);
    CHECK(r.alpha[1] == Rat(-31, 29));
    CHECK(r.verdict == DiscrepancyReport::NotLogCanonical);
}

TEST_CASE("displacement: HP(34) generic support has a forced component") {
    TropDiagram D = build_surface(parse_surface("HP:34"));
    DisplacementTable T = displace_edges(D, generic_support(D));
    REQUIRE(T.fans.size() == 1);
    CHECK(T.fans[0].chain == HJChain{7, 7, 2, 2, 3, 2, 2, 2, 2, 2});
    CHECK(item(T, "e4").normal == Vec{-13, -89});
    CHECK(item(T, "e4").bt == -1);
    CHECK(T.node_outside);
    std::vector<Rat> lengths, eps;
    for (int i = 1; i <= 10; ++i) {
        lengths.push_back(item(T, "e" + std::to_string(i)).length);
        eps.push_back(item(T, "e" + std::to_string(i)).eps);
    }
    // The drawn lines of e3..e9 all pass through (14,1), so only e2 and
    // e10 have positive length.  Sanity check: the displaced hull has
    // perimeter 26 = 20 (fused bottom) + 3 (left) + 2 (e2) + 1 (e10),
    // leaving no length for any other curve.
    CHECK(lengths == std::vector<Rat>({0, 2, 0, 0, 0, 0, 0, 0, 0, 1}));
    CHECK(eps == std::vector<Rat>({Rat(1, 17), Rat(7, 17), Rat(14, 17), Rat(21, 17),
                                   Rat(11, 17), Rat(12, 17), Rat(13, 17), Rat(14, 17),
                                   Rat(15, 17), Rat(16, 17)}));
    // The slanted edge crosses the cut and is drawn with normal (0,1): it
    // lands exactly on the bottom edge it is fused with.
    CHECK(item(T, "e_x").drawn_normal == Vec{0, 1});
    CHECK(item(T, "e_x").length == 20);
    CHECK(item(T, "e_z").length == 20);
    DiscrepancyReport r = fan_discrepancies(T, 0);
    CHECK(r.alpha[1] == Rat(-2629, 2312));
    CHECK(r.verdict == DiscrepancyReport::NotLogCanonical);
}

TEST_CASE("displacement: P(1,4,25) support cases") {
    TropDiagram D = build_surface(parse_surface("P:1,2,5"));
    CHECK(D.cuts.empty());
    // Two fans: 1/25(1,4) at the top (e1..e4) and 1/4(1,1) at (20,0) (e5).
    DisplacementTable TI = displace_edges(D, generic_support(D));
    REQUIRE(TI.fans.size() == 2);
    CHECK(TI.fans[0].sing == CyclicQuotient(25, 4));
    CHECK(TI.fans[1].sing == CyclicQuotient(4, 1));
    CHECK(item(TI, "e5").normal == Vec{-1, -6});

    auto row = [&](const DisplacementTable& T) {
        std::vector<Rat> v;
        for (const std::string& l : {"e1", "e2", "e3", "e4", "e5"}) {
            v.push_back(item(T, l).length);
        }
        return v;
    };
    auto disp = [&](const DisplacementTable& T) {
        std::vector<Rat> v;
        for (const std::string& l : {"e1", "e2", "e3", "e4", "e5"}) v.push_back(item(T, l).eps);
        return v;
    };

    // Case I: q2 = (1,3) and q6 = (20,0) in the support.
    CHECK(row(TI) == std::vector<Rat>({1, 0, 0, 1, 0}));
    CHECK(disp(TI) == std::vector<Rat>({Rat(1, 5), Rat(2, 5), Rat(3, 5), Rat(4, 5), 0}));
    CHECK(fan_discrepancies(TI, 0).verdict == DiscrepancyReport::LogTerminalRange);

    // Case II: drop q6 = (20,0).
    DisplacementTable TII = displace_edges(D, support_without(D, {{20, 0}}));
    CHECK(row(TII) == std::vector<Rat>({1, 0, 0, 0, 3}));
    CHECK(disp(TII) == std::vector<Rat>({Rat(1, 5), Rat(2, 5), Rat(3, 5), Rat(4, 5), 1}));
    CHECK(item(TII, "e_x").eps == 1);
    CHECK(item(TII, "e_x").length == 0);
    CHECK(item(TII, "e5").seg_begin == RatPoint{19, 0});
    CHECK(item(TII, "e5").seg_end == RatPoint{1, 3});

    // Case III: drop q2..q6; the slant edge displaces past the boundary.
    DisplacementTable TIII =
        displace_edges(D, support_without(D, {{1, 3}, {7, 2}, {13, 1}, {19, 0}, {20, 0}}));
    CHECK(item(TIII, "e_x").bt == Rat(-7, 3));
    CHECK(item(TIII, "e_x").eps == 5);
    CHECK(TIII.node_outside);

    // Case IV: drop q2 = (1,3) but keep q6.
    DisplacementTable TIV = displace_edges(D, support_without(D, {{1, 3}}));
    CHECK(row(TIV) == std::vector<Rat>({0, 1, 1, 0, 0}));
    CHECK(disp(TIV) == std::vector<Rat>({Rat(1, 5), Rat(7, 5), Rat(8, 5), Rat(4, 5), 0}));
    DiscrepancyReport r = fan_discrepancies(TIV, 0);
    CHECK(r.alpha == VecQ({Rat(-9, 10), Rat(-13, 10), Rat(-6, 5), Rat(-3, 5)}));
    CHECK(r.verdict == DiscrepancyReport::NotLogCanonical);
}

TEST_CASE("toric displacement matches the brute-force support oracle") {
    for (const char* spec : {"P:1,1,1", "P:1,1,2", "P:1,2,5"}) {
        TropDiagram D = build_surface(parse_surface(spec));
        auto support = generic_support(D);
        DisplacementTable T = displace_edges(D, support);
        for (const BoundaryItem& it : T.items) {
            Rat lo;
            bool first = true;
            for (const Vec& p : support) {
                Rat v = dot(RatPoint(p) - D.origin, it.normal);
                if (first || v < lo) {
                    lo = v;
                    first = false;
                }
            }
            CHECK(it.bt == -lo);
            CHECK(it.length >= 0);
            CHECK(it.eps >= 0);
        }
    }
}

TEST_CASE("raw edge lines of the table reproduce the polygon") {
    TropDiagram D = build_surface(parse_surface("HP:29"));
    DisplacementTable T = displace_edges(D, generic_support(D));
    // Each undisplaced edge line <origin - x, n> = b0 passes through both of
    // its polygon endpoints.
    for (const BoundaryItem& it : T.items) {
        if (it.fan >= 0) continue;
        size_t vi = vertex_index(D.poly, it.anchor);
        CHECK(dot(D.origin - D.poly[vi], it.normal) == it.b0);
        CHECK(dot(D.origin - D.poly[vi + 1], it.normal) == it.b0);
    }
}

TEST_CASE("trade_marked_normal") {
    TropDiagram hp5 = build_surface(parse_surface("HP:5"));
    CHECK(trade_marked_normal(hp5, hp5.cuts[0]) == Vec{-2, -13});
    TropDiagram hp13 = build_surface(parse_surface("HP:13"));
    CHECK(trade_marked_normal(hp13, hp13.cuts[0]) == Vec{-5, -34});
    TropDiagram hp29 = build_surface(parse_surface("HP:29"));
    auto c0 = hp29.cut_at(RatPoint(Rat(-16, 5), Rat(0)));
    auto c1 = hp29.cut_at(RatPoint{20, 0});
    CHECK(trade_marked_normal(hp29, hp29.cuts[*c0]) == Vec{5, -11});
    CHECK(trade_marked_normal(hp29, hp29.cuts[*c1]) == Vec{-2, -13});
}

TEST_CASE("displaced polygon sandwiches the support hull") {
    TropDiagram D = build_surface(parse_surface("HP:13"));
    auto support = support_without(D, {{0, 3}});
    DisplacementTable T = displace_edges(D, support);
    for (const BoundaryItem& it : T.items) {
        // Every support point lies on the inner side of the displaced line:
        // <origin - s, normal> <= bt, with the raw normal (bt is
        // chart-independent).
        for (const Vec& s : support) CHECK(dot(D.origin - RatPoint(s), it.normal) <= it.bt);
        // And the displaced line lies inside the undisplaced polygon: eps >= 0
        // for unfused items here.
        if (it.fuse < 0) CHECK(it.eps >= 0);
    }
}
