#pragma once

// Markov triples, the topograph tree, Markov triangles built by polygon
// mutation, Wahl-vertex data (index / eigendirection / monodromy),
// n-coordinates with their mutation transform, and the Type 5/A/B/C
// classification by lattice-point sets.

#include "lattice.hpp"

#include <array>
#include <optional>
#include <vector>

namespace octic {

// A solution of a^2 + b^2 + c^2 = 3abc.  Carried *ordered*: the entries
// track the roles of the triangle vertices p0, p1, p2 along a mutation
// word, so (5,2,29) and (29,2,5) are different carriers of the same
// unordered triple.
struct MarkovTriple {
    Int a, b, c;

    bool valid() const { return a > 0 && b > 0 && c > 0 && a * a + b * b + c * c == 3 * a * b * c; }
    std::array<Int, 3> sorted() const;
    bool operator==(const MarkovTriple& o) const = default;
    std::string str() const { return "(" + a.str() + "," + b.str() + "," + c.str() + ")"; }
};

enum class Slot { A, B, C };

// Replace the chosen entry x by 3yz - x (an involution per slot).
MarkovTriple mutate_triple(const MarkovTriple& t, Slot s);

// Binary mutation word b = (b1, ..., bm), applied left to right:
// bit 0 mutates at p0 (clockwise), bit 1 at p1 (anticlockwise).
using MutationWord = std::vector<int>;

std::string word_str(const MutationWord& w);

// --- topograph ---------------------------------------------------------------

struct TopographNode {
    std::array<Int, 3> triple;   // sorted ascending for display
    MutationWord word;           // path from (1,2,5); meaningful at depth >= 2
    std::vector<size_t> children;
};

// Tree rooted (1,1,1) -> (1,1,2) -> (1,2,5), branching by the two
// nontrivial mutations; depth counts mutations from the root.  Nodes are
// deduplicated as unordered triples.
std::vector<TopographNode> topograph(int depth);

// --- Wahl vertices and polygon mutation --------------------------------------

struct WahlVertexData {
    Int index;      // c with u1 /\ u2 = c^2
    Vec w;          // primitive eigendirection, (u1 + u2) / c, points into the polygon
    Mat2 monodromy; // u -> u + (u /\ w) w; the matrix attached to the branch
                    // cut after a nodal trade at this vertex
    Vec u1, u2;     // primitive edge directions away from the vertex
};

// Shear u -> u - (u /\ w) w (the inverse of WahlVertexData::monodromy).
Mat2 shear_minus(const Vec& w);
// Shear u -> u + (u /\ w) w.
Mat2 shear_plus(const Vec& w);

// Edge primitives at vertex i of P: u1 along the outgoing (counter-
// clockwise) edge, u2 along the incoming one, both oriented away from the
// vertex.  Throws "not a Wahl vertex" when u1 /\ u2 is not a perfect square
// or u1 + u2 is not divisible by its root.
WahlVertexData wahl_vertex(const ConvexPolygon& P, size_t i);

enum class MutateDir { Clockwise, Anticlockwise };

// Cut P along the eigenline of vertex i and shear one half:
// clockwise keeps the u1 side fixed, anticlockwise the u2 side.
ConvexPolygon mutate_polygon(const ConvexPolygon& P, size_t i, MutateDir dir);

// Full record of a polygon mutation, for transporting decorations (branch
// cuts, markers) that live on the sheared half.
struct PolygonMutation {
    ConvexPolygon poly;  // the mutated polygon
    RatPoint centre;     // the mutated vertex
    RatPoint exit;       // where the eigenline leaves the polygon again
    Vec w;               // eigendirection at the centre
    Mat2 shear;          // applied about the centre to the moved half
    int moved_side;      // p moves iff sign(wedge(w, p - centre)) == moved_side
};
PolygonMutation mutate_polygon_ex(const ConvexPolygon& P, size_t i, MutateDir dir);

// --- Markov triangles --------------------------------------------------------

struct NCoords {
    Rat n0, n1, n2;
    bool operator==(const NCoords&) const = default;
};

struct MarkovTriangle {
    ConvexPolygon poly;
    MarkovTriple triple;     // (a, b, c) with a at p0, b at p1, c at p2
    MutationWord word;
    RatPoint p0, p1, p2;     // bottom-left, bottom-right, top
    WahlVertexData w0, w1, w2;

    NCoords n_coords(const RatPoint& n) const;
};

// The triangle obtained from (0,0),(20,0),(0,16/5) by the word, with its
// carried triple.  Bit 0: clockwise mutation at p0, triple (a,b,c) ->
// (c, b, 3bc - a).  Bit 1: anticlockwise at p1, (a,b,c) -> (a, c, 3ac - b).
MarkovTriangle markov_triangle(const MutationWord& word);

// Barycentre of every Markov triangle's eigenline pencil.
RatPoint barycentre();

// --- type classification -----------------------------------------------------

enum class TriangleType { Five, A, B, C };

std::string type_str(TriangleType t);

// Reference lattice-point sets: the quadrilaterals with vertices
// Five: (0,0),(0,3),(1,3),(20,0)   A: (0,0),(0,3),(14,1),(20,0)
// B: (-3,0),(2,2),(7,2),(14,1),(20,0)   C: (-3,0),(-1,1),(2,2),(7,2),(20,0)
const ConvexPolygon& reference_polygon(TriangleType t);

struct TypeResult {
    TriangleType by_lattice;           // ground truth: set equality of lattice points
    TriangleType by_rule;              // fast syntactic rule on the word
    bool rule_agrees;                  // flagged false for short all-ones words
};

TypeResult classify_type(const MutationWord& word);

// --- persistence certificates ------------------------------------------------

// Which of the two mutation-stable inequality branches hold for the
// n-coordinates of a point of the inner triangle:
//   branch 0:  n2 >= (1 - 3b) n0  and  n0 >= 2
//   branch 1:  n2 <= (1 - 3a) n1  and  n1 <= -2
struct PersistenceCertificate {
    MutationWord word;
    Vec n;
    NCoords coords;
    bool branch0 = false, branch1 = false;
    bool holds() const { return branch0 || branch1; }
};

// Throws if n lies outside the inner triangle (below both eigenlines
// through p0 and p1, above the bottom edge).
PersistenceCertificate persistence_certificate(const MutationWord& word, const Vec& n);

}  // namespace octic
