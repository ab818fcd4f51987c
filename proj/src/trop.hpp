#pragma once

// Tropical diagrams for almost toric surfaces: polygons decorated with
// branch cuts and singularity markers, nodal trades and their inverses,
// corner resolution fans, the edge-displacement engine that turns a theta
// support set into affine lengths / displacements / discrepancies, diagram
// mutation, and the non-toric resolution of a cut diagram down to a
// Hirzebruch surface.

#include "markov.hpp"
#include "quotient.hpp"

#include <optional>
#include <string>
#include <vector>

namespace octic {

// --- diagrams ------------------------------------------------------------

// A branch cut: a dashed ray from a polygon vertex toward the origin of the
// eigenline pencil, carrying the monodromy of the node it hides.
struct TropCut {
    RatPoint vertex;  // polygon vertex the cut emanates from
    Vec dir;          // primitive direction, pointing from vertex to origin
    Mat2 monodromy;   // u -> u + (u /\ dir) dir
    Int index;        // index of the traded corner (1 for a generalised trade)
};

// A marker for a cyclic quotient singularity sitting at a polygon vertex.
struct TropMarker {
    RatPoint pos;
    CyclicQuotient sing;
};

struct TropDiagram {
    ConvexPolygon poly;
    RatPoint origin;  // common point of all corner eigenlines
    std::vector<TropCut> cuts;
    std::vector<TropMarker> markers;

    // Index of the cut emanating from the given vertex, if any.
    std::optional<size_t> cut_at(const RatPoint& v) const;
};

// Diagram of a Markov triangle (origin at the eigenline barycentre).
TropDiagram diagram_for(const MarkovTriangle& T);

// Diagram over an arbitrary polygon whose corners all lie on concurrent
// eigenlines; the origin is computed from the corner eigendirections and
// verified against every corner.
TropDiagram diagram_from_polygon(const ConvexPolygon& P);

// Index of the polygon vertex equal to p; throws when p is not a vertex.
size_t vertex_index(const ConvexPolygon& P, const RatPoint& p);

// Inward normal (primitive) of edge i, the edge from vertex i to vertex i+1.
Vec edge_inward_normal(const ConvexPolygon& P, size_t i);

// --- corner fans ---------------------------------------------------------

// Resolution of the cone spanned by the inward normals at a corner: the
// rays of the minimal resolution and the self-intersection chain.
struct CornerFan {
    std::vector<Vec> rays;  // rays[0] adjacent to the outgoing-edge normal
    HJChain chain;          // rays[j] carries a curve of square -chain[j]
    Int n, q;               // the corner is a 1/n(1,q) singularity
};

// Fan of the cone <rho_out, rho_in> where rho_out is the inward normal of
// the outgoing edge at the corner and rho_in of the incoming edge.
// Requires wedge(rho_in, rho_out) >= 1; returns empty rays for a smooth
// (index 1) corner.
CornerFan resolution_fan(const Vec& rho_out, const Vec& rho_in);

CornerFan corner_fan(const ConvexPolygon& P, size_t i);

// The cyclic quotient singularity at corner i; throws for a smooth corner.
CyclicQuotient corner_singularity(const ConvexPolygon& P, size_t i);

// --- trades --------------------------------------------------------------

// Replace the corner singularity at vertex vi by a branch cut toward the
// origin (a nodal trade).  Throws if the corner is not a Wahl vertex or
// already carries a cut.  A smooth (index-1) corner is returned unchanged
// unless allow_smooth requests a generalised trade there.
TropDiagram nodal_trade(const TropDiagram& D, size_t vi, bool allow_smooth = false);

// Inverse of a nodal trade: remove cut ci, whose vertex must be a Wahl
// corner with eigendirection equal to the cut direction and matching
// monodromy, and record the corner singularity as a marker.
TropDiagram absorb_cut(const TropDiagram& D, size_t ci);

// Mutate the diagram at vertex vi: trade the corner (reusing an existing
// cut there if present), shear one half of the polygon, slide the cut to
// the exit point of the eigenline with reversed direction, and transport
// every decoration on the sheared half.
TropDiagram mutate_diagram(const TropDiagram& D, size_t vi, MutateDir dir,
                           bool allow_smooth = false);

// --- the displacement engine ----------------------------------------------

// One curve of the boundary cycle of the (partially resolved) surface:
// either a polygon edge or a resolution-fan ray.
struct BoundaryItem {
    std::string label;  // e_x / e_y / e_z / e_w for edges, e1..ek for rays
    Vec normal;         // inward normal in the chart of its anchor
    Vec drawn_normal;   // normal after transport through crossed cuts
    RatPoint anchor;    // point on the undisplaced line
    Rat b0;             // <origin - anchor, normal>
    Rat bt;             // clamped support maximum of <origin - s, normal>
    Rat eps;            // affine displacement b0 - bt
    Rat length;         // signed affine length of the displaced segment
    RatPoint seg_begin, seg_end;  // endpoints of the displaced segment
    int fan = -1;       // index into DisplacementTable::fans, -1 for edges
    int fuse = -1;      // cycle index of the monodromy-identified partner
    int crossed_cut = -1;        // cut this item was transported through
    int parallel_cut = -1;       // cut parallel to this item's direction
    bool runs_along_cut = false; // parallel and displaced onto the cut line
};

struct FanRecord {
    size_t corner;        // polygon vertex index
    CyclicQuotient sing;
    HJChain chain;
    std::vector<size_t> item_indices;  // cycle positions of the rays
};

struct DisplacementTable {
    std::vector<BoundaryItem> items;   // counter-clockwise boundary cycle
    std::vector<FanRecord> fans;       // ordered by descending index n
    RatPoint origin;
    bool node_outside = false;         // some non-fused bt < 0
};

// Displace every boundary curve inward until it touches the support:
// bt = max over support points s of <origin - s, normal>, with curves
// adjacent to a traded corner (monodromy-identified pairs) kept fixed.
// Corners of index > 1 without a cut are resolved into fans.
DisplacementTable displace_edges(const TropDiagram& D, const std::vector<Vec>& support);

// Discrepancies of the pair (Y, B/2) along the exceptional chain of the
// fan rooted at the given corner, using the affine lengths from the table
// as the intersection numbers B . D_i.
DiscrepancyReport fan_discrepancies(const DisplacementTable& T, size_t fan_index);

// <origin - s, rho> maximised over the support: the coefficient b~ of the
// boundary curve with inward normal rho in the class of the strict
// transform of B.
Rat support_offset(const RatPoint& origin, const Vec& rho, const std::vector<Vec>& support);

// Inward normal of the cut-parallel boundary curve met by the exceptional
// curve of the trade: +/- rot90(dir), signed to point into the polygon.
Vec trade_marked_normal(const TropDiagram& D, const TropCut& cut);

// --- non-toric resolution of a cut diagram ---------------------------------

struct CycleCurve {
    std::string label;
    Int square;
};

struct NonToricResolution {
    std::vector<CycleCurve> initial;        // boundary cycle before blowing down
    std::vector<std::string> contracted;    // labels in contraction order
    std::vector<CycleCurve> final_cycle;    // no (-1)-curves remain
    std::vector<Vec> resolution_directions; // primitive edge directions of the
                                            // fan rays, x-component positive
};

// Resolve every corner of the diagram, compute the boundary-curve squares
// (transporting neighbours across cuts by the transpose monodromy), then
// blow down: each cut's hidden node raises its parallel curve's square by
// one, after which (-1)-curves are contracted cyclically, always taking
// the one latest in the current cycle.
NonToricResolution resolve_diagram_cuts(const TropDiagram& D);

// --- surface builders ------------------------------------------------------

struct SurfaceSpec {
    enum Kind { P, HP, HPpair } kind;
    Int a, b, c;  // P: a,b,c; HP: c; HPpair: a,b

    std::string str() const;
};

// "P:a,b,c", "HP:c" or "HPpair:a,b"; throws std::invalid_argument on
// malformed input or non-Markov data.
SurfaceSpec parse_surface(const std::string& s);

// The tropical diagram of the surface: P(a^2,b^2,c^2) is the plain Markov
// triangle; HP(c) trades every corner except the one carrying c; HP(a,b)
// completes {a,b} to a Markov triple and trades the completion's corner.
TropDiagram build_surface(const SurfaceSpec& spec);

// The word used by build_surface, together with the carried triple.
MarkovTriangle surface_triangle(const SurfaceSpec& spec);

}  // namespace octic
