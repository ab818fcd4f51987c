// Command-line front end: topograph / triangle / points / hj / trop /
// discrepancy / cover / classify.  Exit codes: 0 success, 1 usage error,
// 2 classification mismatch (a recorded expectation failed to verify).

#include "emit.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace octic;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << data)) throw std::runtime_error("cannot write " + path);
}

MutationWord parse_word(const std::string& s) {
    MutationWord w;
    for (char c : s) {
        if (c != '0' && c != '1')
            throw CLI::ValidationError("--word", "mutation word must be over {0,1}: " + s);
        w.push_back(c - '0');
    }
    return w;
}

// Support selection: "generic", a case label (I, IIa, ..., IV), or
// "@file" with a JSON list of lattice points.
std::vector<Vec> resolve_support(const SurfaceSpec& spec, const std::string& sel,
                                 std::string& note) {
    if (sel == "generic") {
        note = "generic";
        return case_support(spec, std::nullopt);
    }
    if (!sel.empty() && sel[0] == '@') {
        Json j = Json::parse(slurp(sel.substr(1)));
        std::vector<Vec> pts;
        for (const Json& p : j) pts.push_back(vec_from_json(p));
        note = sel;
        return pts;
    }
    if (auto c = parse_case(sel)) {
        note = "case " + sel;
        return case_support(spec, *c);
    }
    throw CLI::ValidationError("--support", "expected generic, a case label, or @file: " + sel);
}

int run(int argc, char** argv) {
    CLI::App app{"Exact tropical classifier for octic double covers of Manetti surfaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    // topograph
    auto* cmd_topo = app.add_subcommand("topograph", "Enumerate the Markov triple tree");
    int topo_depth = 4;
    std::string topo_format = "json";
    cmd_topo->add_option("--depth", topo_depth, "tree depth (mutations from the root)")
        ->required();
    cmd_topo->add_option("--format", topo_format, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}));

    // triangle
    auto* cmd_tri = app.add_subcommand("triangle", "Markov triangle of a mutation word");
    std::string tri_word, tri_emit = "json";
    cmd_tri->add_option("--word", tri_word, "binary mutation word, e.g. 101")->required();
    cmd_tri->add_option("--emit", tri_emit, "svg or json")->check(CLI::IsMember({"svg", "json"}));

    // points
    auto* cmd_pts = app.add_subcommand("points", "Lattice points of a word's triangle");
    std::string pts_word;
    cmd_pts->add_option("--word", pts_word, "binary mutation word")->required();

    // hj
    auto* cmd_hj = app.add_subcommand("hj", "Hirzebruch-Jung chain of 1/N(1,Q)");
    std::string hj_n, hj_q;
    cmd_hj->add_option("N", hj_n, "order of the cyclic quotient")->required();
    cmd_hj->add_option("Q", hj_q, "weight, coprime to N")->required();

    // trop
    auto* cmd_trop = app.add_subcommand("trop", "Displacement table of a surface");
    std::string trop_surface, trop_support = "generic", trop_emit = "json";
    cmd_trop->add_option("--surface", trop_surface, "P:a,b,c | HP:c | HPpair:a,b")->required();
    cmd_trop->add_option("--support", trop_support, "generic, a case label, or @file");
    cmd_trop->add_option("--emit", trop_emit, "json or svg")
        ->check(CLI::IsMember({"json", "svg"}));

    // discrepancy
    auto* cmd_disc = app.add_subcommand("discrepancy", "Verdict with discrepancy evidence");
    std::string disc_surface, disc_case = "generic";
    cmd_disc->add_option("--surface", disc_surface, "P:a,b,c | HP:c | HPpair:a,b")->required();
    cmd_disc->add_option("--case", disc_case, "branch case label (default generic)");

    // cover
    auto* cmd_cover = app.add_subcommand("cover", "Double cover of a curve configuration");
    std::string cover_config, cover_format = "json";
    cmd_cover->add_option("--config", cover_config, "@file.json with the curve graph")
        ->required();
    cmd_cover->add_option("--format", cover_format, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}));

    // classify
    auto* cmd_cls = app.add_subcommand("classify", "Full classification with verification");
    int cls_depth = 6;
    std::string cls_out;
    cmd_cls->add_option("--depth", cls_depth, "sweep depth (>= 6 for full coverage)")
        ->required();
    cmd_cls->add_option("--out", cls_out, "path for the JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Normalise CLI11's exit-code zoo: 0 for --help/--version, 1 for
        // any usage error.
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (*cmd_topo) {
        auto nodes = topograph(topo_depth);
        if (topo_format == "dot")
            std::cout << topograph_dot(nodes);
        else
            std::cout << topograph_json(nodes).dump(2) << "\n";
        return 0;
    }
    if (*cmd_tri) {
        MarkovTriangle T = markov_triangle(parse_word(tri_word));
        if (tri_emit == "svg") {
            TropDiagram D = diagram_for(T);
            std::cout << diagram_svg(D, lattice_points(D.poly));
        } else {
            Json j = triangle_json(T);
            TypeResult type = classify_type(T.word);
            j["type"] = type_str(type.by_lattice);
            std::cout << j.dump(2) << "\n";
        }
        return 0;
    }
    if (*cmd_pts) {
        MarkovTriangle T = markov_triangle(parse_word(pts_word));
        std::vector<Vec> pts = lattice_points(T.poly);
        Json arr = Json::array();
        for (const Vec& p : pts) arr.push_back(vec_json(p));
        std::cout << Json{{"word", pts_word}, {"count", pts.size()}, {"points", arr}}.dump(2)
                  << "\n";
        return 0;
    }
    if (*cmd_hj) {
        Int n(hj_n), q(hj_q);
        HJChain chain = hj_expand(n, q);
        Json carr = Json::array();
        for (const Int& d : chain) carr.push_back(d.str());
        std::cout << Json{{"singularity", CyclicQuotient(n, q).str()},
                          {"chain", carr},
                          {"value", rat_json(hj_eval(chain))},
                          {"det", chain_det_recursive(chain).str()}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    if (*cmd_trop) {
        SurfaceSpec spec = parse_surface(trop_surface);
        std::string note;
        std::vector<Vec> supp = resolve_support(spec, trop_support, note);
        TropDiagram D = build_surface(spec);
        if (trop_emit == "svg") {
            std::cout << diagram_svg(D, supp);
            return 0;
        }
        Json j{{"surface", spec.str()},
               {"support", note},
               {"octic_degree", octic_degree(spec).str()},
               {"diagram", diagram_json(D)},
               {"displacements", displacement_json(displace_edges(D, supp))}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (*cmd_disc) {
        SurfaceSpec spec = parse_surface(disc_surface);
        std::optional<BranchCase> c;
        if (disc_case != "generic") {
            c = parse_case(disc_case);
            if (!c) throw CLI::ValidationError("--case", "unknown case label: " + disc_case);
        }
        std::cout << case_verdict_json(classify_surface(spec, c)).dump(2) << "\n";
        return 0;
    }
    if (*cmd_cover) {
        if (cover_config.empty() || cover_config[0] != '@')
            throw CLI::ValidationError("--config", "expected @file.json");
        std::string raw = slurp(cover_config.substr(1));
        CurveGraph G = curve_graph_from_json(Json::parse(raw));
        CurveGraph R = log_resolve(G);
        CoverGraph cv = double_cover(R);
        if (cover_format == "dot") {
            std::cout << cover_to_dot(cv);
            return 0;
        }
        Json j{{"tool_version", tool_version()},
               {"input_hash", input_hash(raw)},
               {"resolved", curve_graph_json(R)},
               {"cover", cover_graph_json(cv)},
               {"outcome", cover_outcome_json(cover_outcome(G))}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (*cmd_cls) {
        ClassificationReport rep;
        try {
            rep = full_classification(cls_depth);
        } catch (const std::logic_error& e) {
            std::cerr << "classification mismatch: " << e.what() << "\n";
            return 2;
        }
        Json j = report_json(rep, input_hash("classify --depth " + std::to_string(cls_depth)));
        std::string text = j.dump(2) + "\n";
        if (!cls_out.empty()) {
            write_file(cls_out, text);
            std::cout << "report written to " << cls_out << " (survivors:";
            for (const std::string& s : rep.survivors) std::cout << " " << s;
            std::cout << ")\n";
        } else {
            std::cout << text;
        }
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
