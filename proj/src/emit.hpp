#pragma once

// Serialization surfaces: JSON (rationals as "p/q" strings, deterministic
// key order), DOT for graphs, and SVG rendering of tropical diagrams on a
// fixed 24-px lattice unit.

#include "classify.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace octic {

using Json = nlohmann::ordered_json;

// Version stamped into reports for provenance.
const char* tool_version();

// FNV-1a 64-bit, hex-encoded; used to fingerprint the exact input of a run.
std::uint64_t fnv1a(const std::string& data);
std::string input_hash(const std::string& data);

// --- rationals and geometry --------------------------------------------------

Json rat_json(const Rat& r);          // "p/q" (integers as plain "p")
Rat rat_from_json(const Json& j);
Json vec_json(const Vec& v);          // [x, y] as strings
Vec vec_from_json(const Json& j);
Json point_json(const RatPoint& p);   // ["p/q", "r/s"]
RatPoint point_from_json(const Json& j);

Json polygon_json(const ConvexPolygon& P);
ConvexPolygon polygon_from_json(const Json& j);

Json diagram_json(const TropDiagram& D);
TropDiagram diagram_from_json(const Json& j);

// --- engine outputs ----------------------------------------------------------

Json displacement_json(const DisplacementTable& T);
Json discrepancy_json(const DiscrepancyReport& rep);
Json triangle_json(const MarkovTriangle& T);

Json topograph_json(const std::vector<TopographNode>& nodes);
std::string topograph_dot(const std::vector<TopographNode>& nodes);

Json curve_graph_json(const CurveGraph& G);
// Accepts the same shape curve_graph_json emits: {"curves": [...],
// "points": [...]}, plus an optional "germs" list of local branch types
// ({"curve", "type": "tangent|two_branch|cusp", "k", "id"}).
CurveGraph curve_graph_from_json(const Json& j);
Json cover_graph_json(const CoverGraph& G);
Json cover_outcome_json(const CoverOutcome& out);

Json sweep_record_json(const SweepRecord& r);
Json sweep_json(const SweepResult& s);
Json case_verdict_json(const CaseVerdict& v);
Json report_json(const ClassificationReport& rep, const std::string& hash);

// --- SVG ---------------------------------------------------------------------

// 24 px per lattice unit, y pointing up.  Glyphs: faint dots on the
// background lattice, filled dots for support points, open circles for
// polygon lattice points missing from the support, a star per singularity
// marker, a cross at the eigenline origin, dashed branch cuts.
std::string diagram_svg(const TropDiagram& D, const std::vector<Vec>& support);

}  // namespace octic
