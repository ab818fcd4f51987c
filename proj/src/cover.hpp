#pragma once

// Curve-configuration graphs with branch data, blow-ups, log resolution of
// branch tangencies, and the double-cover transform producing the dual
// graphs of the branched cover's singularities.
//
// Curves are tracked as graph nodes carrying a self-intersection number and
// a multiplicity in the pulled-back branch divisor (odd multiplicity means
// the curve is part of the branch locus).  Intersections are tracked as
// meeting points: a point knows which smooth local branches pass through
// it, an optional designated tangent pair with its contact order, and an
// optional cuspidal branch y^2 = x^(2k+1).  This is exactly enough local
// data to run the standard embedded resolution by point blow-ups.

#include "lattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace octic {

enum class CurveKind { Boundary, Exceptional, BranchGerm };

struct CurveNode {
    std::string id;
    Int square{0};
    Int mult{0};  // multiplicity in the pulled-back branch divisor
    CurveKind kind{CurveKind::Exceptional};

    bool in_branch() const { return mult % 2 != 0; }
};

// A point of the surface where curves meet.  `curves` lists the smooth
// local branches through the point; `tang_a`/`tang_b` (indices into
// `curves`) single out a pair meeting with contact order `tang_order` >= 2;
// `cusp_curve` names a curve whose local branch is the cusp
// y^2 = x^(2k+1) with k = `cusp_k` (its tangent line is assumed distinct
// from every smooth branch).  All other pairs meet transversely.
struct MeetPoint {
    std::vector<std::string> curves;
    int tang_a{-1}, tang_b{-1};
    Int tang_order{1};
    std::string cusp_curve;
    Int cusp_k{0};

    bool has_tangency() const { return tang_a >= 0; }
    bool has_cusp() const { return !cusp_curve.empty(); }
};

struct CurveGraph {
    std::vector<CurveNode> nodes;
    std::vector<MeetPoint> points;

    bool has_node(const std::string& id) const;
    CurveNode& node(const std::string& id);
    const CurveNode& node(const std::string& id) const;
    void add_node(std::string id, Int square, Int mult,
                  CurveKind kind = CurveKind::Exceptional);
    // Simple contact of order `mult` between two existing curves.
    void add_contact(const std::string& a, const std::string& b, Int mult = 1);
};

// Attach a branch germ to `curve`: a smooth branch meeting it with contact
// order m; two smooth branches transverse to it meeting each other with
// order k; or a cusp y^2 = x^(2k+1) whose tangent is transverse to it.
void add_tangent_germ(CurveGraph& G, const std::string& curve, const Int& m,
                      const std::string& germ_id);
void add_two_branch_germ(CurveGraph& G, const std::string& curve, const Int& k,
                         const std::string& germ_id1, const std::string& germ_id2);
void add_cusp_germ(CurveGraph& G, const std::string& curve, const Int& k,
                   const std::string& germ_id);

// One point blow-up.  The new exceptional curve gets self-intersection -1
// and branch multiplicity equal to the multiplicity of the pulled-back
// branch divisor at the point; incident curves lose (local multiplicity)^2
// from their squares, and the local data is transformed by the standard
// rules.  New node ids are "E<n>" for increasing n (or `new_id` if given).
CurveGraph blow_up(const CurveGraph& G, size_t point_index, std::string new_id = "");
// Blow-up of a free (smooth, non-intersection) point of one curve.
CurveGraph blow_up_free_point(const CurveGraph& G, const std::string& node_id,
                              std::string new_id = "");

// Contract a (-1)-curve all of whose meetings are simple transverse double
// points: inverse of blow_up on the configurations blow_up produces.
CurveGraph blow_down(const CurveGraph& G, const std::string& node_id);

// Set the branch multiplicities of named curves (from the displacement
// multiplicities of the tropical engine); curves in the branch locus are
// exactly those with odd multiplicity.
CurveGraph branch_parity_adjust(const CurveGraph& G, const std::map<std::string, Int>& mults);

// The branch divisor (odd-multiplicity curves) is simple normal crossings
// *and* smooth: all contacts are transverse double points, and no two
// branch curves meet.
bool is_snc(const CurveGraph& G);

// Iterate blow_up until is_snc holds.  Terminates because every blow-up
// strictly decreases the total tangency excess.
CurveGraph log_resolve(const CurveGraph& G);

// --- the double cover ---------------------------------------------------------

struct CoverNode {
    std::string id;
    Int square{0};
};

struct CoverGraph {
    std::vector<CoverNode> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
};

// Double cover branched along the odd-multiplicity curves of an SNC
// configuration.  Rules: an in-branch curve of even square s lifts to one
// curve of square s/2; a curve outside the branch meeting the branch in
// 2k >= 2 points lifts to one curve of square 2s; a curve with no branch
// points splits into two disjoint copies of square s.  Germ nodes (the
// strict transform of the branch curve itself) are consumed and do not
// appear in the output.  Throws std::invalid_argument when the cover is
// not defined (odd in-branch square or odd branch-incidence count).
CoverGraph double_cover(const CurveGraph& G);

// --- parameterized families ----------------------------------------------------

// The dual graphs arising from the five tangency subcases of the branch
// curve against a -4 curve:
//   IIa: central -4 with four -2 legs (quotient of a simple elliptic);
//   IIb(t): fork(-2,-2) - chain of t (-2)s - (-4) with two -2 legs;
//   IIc(t1,t2): fork - t1 chain - (-4) - t2 chain - fork;
//   IId, IIe: the two non-log-canonical shapes.
enum class FamilyCase { IIa, IIb, IIc, IId, IIe };

struct FamilyBounds {
    bool ok = true;
    std::string warning;  // set when a recorded bound is exceeded
};

CoverGraph family_graph(FamilyCase c, Int t1 = 0, Int t2 = 0);
// Recorded bounds: t <= 19 for IIb, t1 + t2 <= 38 for IIc (a sharper bound
// t1 + t2 <= 21 is conjectured but open, so these are warnings not errors).
FamilyBounds family_bounds(FamilyCase c, const Int& t1 = 0, const Int& t2 = 0);

// Canonical form of a cover graph (labelled-graph isomorphism invariant):
// a minimal BFS code over all root choices.
std::string canonical_code(const CoverGraph& G);

struct FamilyMatch {
    enum Kind { StarIIa, ChainIIb, ForkIIc, ShapeIId, ShapeIIe, None } kind = None;
    Int t1{0}, t2{0};
};
FamilyMatch match_family(const CoverGraph& G);

// Discrepancies of the curves of a cover graph read as the exceptional
// locus of a resolution (all curves rational): solve N a = beta with
// N the intersection matrix and beta_i = -2 - s_i from adjunction.
std::map<std::string, Rat> graph_discrepancies(const CoverGraph& G);

// If the connected component containing `root` is a path, its squares in
// path order; otherwise nullopt.
std::optional<std::vector<Int>> cover_chain(const CoverGraph& G, const std::string& root);

// Serialization (deterministic ordering).
std::string cover_to_dot(const CoverGraph& G);
std::string curve_to_dot(const CurveGraph& G);

}  // namespace octic
