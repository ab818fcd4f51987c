#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "emit.hpp"

using namespace octic;

TEST_CASE("rationals serialize as p/q strings") {
    CHECK(rat_json(Rat(-31, 26)) == "-31/26");
    CHECK(rat_json(Rat(7)) == "7");
    CHECK(rat_from_json(Json("-2657/2312")) == Rat(-2657, 2312));
    CHECK(rat_from_json(Json("0")) == 0);
    CHECK_THROWS_AS(rat_from_json(Json("not-a-number")), std::invalid_argument);
}

TEST_CASE("input hashing is stable") {
    CHECK(input_hash("") == "cbf29ce484222325");
    CHECK(input_hash("classify --depth 6") == input_hash("classify --depth 6"));
    CHECK(input_hash("a") != input_hash("b"));
}

TEST_CASE("diagram JSON round-trips exactly") {
    for (const char* s : {"P:1,2,5", "HP:5", "HP:29", "HP:34", "P:1,1,2"}) {
        CAPTURE(s);
        TropDiagram D = build_surface(parse_surface(s));
        Json j = diagram_json(D);
        TropDiagram back = diagram_from_json(j);
        CHECK(back.poly == D.poly);
        CHECK(back.origin == D.origin);
        REQUIRE(back.cuts.size() == D.cuts.size());
        for (size_t i = 0; i < D.cuts.size(); ++i) {
            CHECK(back.cuts[i].vertex == D.cuts[i].vertex);
            CHECK(back.cuts[i].dir == D.cuts[i].dir);
            CHECK(back.cuts[i].monodromy == D.cuts[i].monodromy);
            CHECK(back.cuts[i].index == D.cuts[i].index);
        }
        REQUIRE(back.markers.size() == D.markers.size());
        // Emitting the round-tripped diagram reproduces the bytes.
        CHECK(diagram_json(back).dump(2) == j.dump(2));
    }
}

TEST_CASE("curve graph JSON round-trips through the emitted shape") {
    CurveGraph G;
    G.add_node("C1", -7, 1, CurveKind::Exceptional);
    G.add_node("Dx", -1, 0, CurveKind::Boundary);
    G.add_contact("C1", "Dx");
    add_tangent_germ(G, "C1", 2, "B");
    Json j = curve_graph_json(G);
    CurveGraph back = curve_graph_from_json(j);
    CHECK(curve_graph_json(back).dump(2) == j.dump(2));
    CHECK(back.node("C1").square == -7);
    CHECK(back.node("Dx").kind == CurveKind::Boundary);
    CHECK(back.points.size() == G.points.size());
}

TEST_CASE("curve graph JSON accepts germ shorthand") {
    Json j = Json::parse(R"({
        "curves": [{"id": "C", "square": "-4", "mult": "1", "kind": "exceptional"}],
        "germs": [{"curve": "C", "type": "tangent", "k": "4", "id": "B"}]
    })");
    CurveGraph G = curve_graph_from_json(j);
    CoverOutcome out = cover_outcome(G);
    REQUIRE(out.family);
    CHECK(out.family->kind == FamilyMatch::ShapeIIe);
    CHECK(*out.min_alpha == -2);
    CHECK_THROWS_AS(curve_graph_from_json(Json::parse(
                        R"({"curves": [], "points": [{"curves": ["missing"]}]})")),
                    std::invalid_argument);
}

TEST_CASE("classification report is deterministic and carries provenance") {
    ClassificationReport rep = full_classification(4);
    std::string a = report_json(rep, input_hash("x")).dump(2);
    std::string b = report_json(full_classification(4), input_hash("x")).dump(2);
    CHECK(a == b);
    Json j = Json::parse(a);
    CHECK(j.at("tool_version") == tool_version());
    CHECK(j.at("input_hash") == input_hash("x"));
    CHECK(j.at("survivors").size() == 4);
    // Parse-emit identity on the report bytes.
    CHECK(j.dump(2) == a);
}

TEST_CASE("SVG uses the 24-px unit with dashed cuts and support glyphs") {
    SurfaceSpec spec = parse_surface("HP:5");
    TropDiagram D = build_surface(spec);
    std::vector<Vec> generic = case_support(spec, std::nullopt);
    std::string svg = diagram_svg(D, generic);
    // The polygon spans x in [0, 20]; with a one-unit margin each side the
    // canvas is 22 units = 528 px wide.
    CHECK(svg.find("width=\"528.00\"") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("r=\"3.2\" fill=\"black\"") != std::string::npos);
    // Generic support: no dropped lattice points, so no open circles.
    CHECK(svg.find("fill=\"white\" stroke=\"black\"") == std::string::npos);

    std::vector<Vec> dropped = case_support(spec, BranchCase::IV);
    std::string svg2 = diagram_svg(D, dropped);
    CHECK(svg2.find("fill=\"white\" stroke=\"black\"") != std::string::npos);
    CHECK(diagram_svg(D, dropped) == svg2);  // deterministic bytes
}

TEST_CASE("topograph emitters") {
    auto nodes = topograph(3);
    Json j = topograph_json(nodes);
    CHECK(j.size() == nodes.size());
    CHECK(j.at(0).at("triple") == Json::array({"1", "1", "1"}));
    std::string dot = topograph_dot(nodes);
    CHECK(dot.find("(1,2,5)") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
}
