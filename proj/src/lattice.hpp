#pragma once

// Exact 2D lattice/rational geometry: integer vectors, rational points,
// 2x2 matrices, convex polygons, lattice point enumeration and an exact
// linear solver.  All types are immutable values; all functions are pure.

#include "rational.hpp"

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace octic {

// --- integer lattice vectors -------------------------------------------------

struct Vec {
    Int x, y;

    Vec() : x(0), y(0) {}
    Vec(Int xx, Int yy) : x(std::move(xx)), y(std::move(yy)) {}

    Vec operator+(const Vec& o) const { return {x + o.x, y + o.y}; }
    Vec operator-(const Vec& o) const { return {x - o.x, y - o.y}; }
    Vec operator-() const { return {-x, -y}; }
    Vec operator*(const Int& k) const { return {x * k, y * k}; }
    bool operator==(const Vec& o) const = default;
    bool operator<(const Vec& o) const { return x != o.x ? x < o.x : y < o.y; }

    std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

// Determinant of the 2x2 matrix with columns u, v.
inline Int wedge(const Vec& u, const Vec& v) { return u.x * v.y - u.y * v.x; }

inline Int dot(const Vec& u, const Vec& v) { return u.x * v.x + u.y * v.y; }

inline bool is_zero(const Vec& v) { return v.x == 0 && v.y == 0; }

// Content of a vector: g such that v = g * primitive(v).
inline Int content(const Vec& v) {
    if (is_zero(v)) return 0;
    return gcd(abs(v.x), abs(v.y));
}

inline Vec primitive(const Vec& v) {
    if (is_zero(v)) throw std::invalid_argument("primitive: zero vector");
    Int g = content(v);
    return {v.x / g, v.y / g};
}

// --- rational points ---------------------------------------------------------

struct RatPoint {
    Rat x, y;

    RatPoint() = default;
    RatPoint(Rat xx, Rat yy) : x(std::move(xx)), y(std::move(yy)) {}
    RatPoint(const Vec& v) : x(v.x), y(v.y) {}

    RatPoint operator+(const RatPoint& o) const { return {x + o.x, y + o.y}; }
    RatPoint operator-(const RatPoint& o) const { return {x - o.x, y - o.y}; }
    RatPoint operator*(const Rat& k) const { return {x * k, y * k}; }
    bool operator==(const RatPoint& o) const = default;
    bool operator<(const RatPoint& o) const { return x != o.x ? x < o.x : y < o.y; }

    bool is_lattice() const { return den(x) == 1 && den(y) == 1; }
    Vec to_vec() const {
        if (!is_lattice()) throw std::invalid_argument("to_vec: not a lattice point");
        return {num(x), num(y)};
    }
    std::string str() const { return "(" + rat_str(x) + "," + rat_str(y) + ")"; }
};

inline Rat wedge(const RatPoint& u, const RatPoint& v) { return u.x * v.y - u.y * v.x; }
inline Rat dot(const RatPoint& u, const RatPoint& v) { return u.x * v.x + u.y * v.y; }
inline Rat dot(const RatPoint& u, const Vec& v) { return u.x * v.x + u.y * v.y; }

// Affine length of the segment [a,b]: the rational t with b - a = t * d for
// the primitive lattice direction d.  Requires b - a to be a rational
// multiple of a lattice vector (always true for rational endpoints).
// Returns 0 for a degenerate segment.
Rat affine_length(const RatPoint& a, const RatPoint& b);

// --- 2x2 rational matrices ---------------------------------------------------

struct Mat2 {
    // Row-major entries.
    Rat a, b, c, d;

    static Mat2 identity() { return {1, 0, 0, 1}; }

    Rat det() const { return a * d - b * c; }

    Mat2 inverse() const {
        Rat dt = det();
        if (dt == 0) throw std::invalid_argument("Mat2::inverse: singular");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    Mat2 transpose() const { return {a, c, b, d}; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    RatPoint apply(const RatPoint& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

    Vec apply(const Vec& v) const {
        RatPoint r = apply(RatPoint(v));
        return r.to_vec();
    }

    bool operator==(const Mat2& o) const = default;

    bool is_integral() const {
        return den(a) == 1 && den(b) == 1 && den(c) == 1 && den(d) == 1;
    }

    std::string str() const {
        return "[[" + rat_str(a) + "," + rat_str(b) + "],[" + rat_str(c) + "," + rat_str(d) + "]]";
    }
};

// --- convex polygons ---------------------------------------------------------

// Strictly convex polygon with vertices stored counter-clockwise starting
// from the lexicographically least vertex, so structural equality is
// canonical.  Zero-area input is rejected.
class ConvexPolygon {
  public:
    explicit ConvexPolygon(std::vector<RatPoint> vertices);

    const std::vector<RatPoint>& vertices() const { return verts_; }
    size_t size() const { return verts_.size(); }
    const RatPoint& operator[](size_t i) const { return verts_[i % verts_.size()]; }

    Rat area() const;  // exact (shoelace / 2)

    bool contains(const RatPoint& p) const;  // closed containment

    bool operator==(const ConvexPolygon& o) const { return verts_ == o.verts_; }

  private:
    std::vector<RatPoint> verts_;
};

// All integer points inside or on the polygon, sorted lexicographically.
std::vector<Vec> lattice_points(const ConvexPolygon& P);

// --- exact dense linear algebra ---------------------------------------------

using VecQ = std::vector<Rat>;
using MatQ = std::vector<std::vector<Rat>>;

// Exact Gaussian elimination; throws std::invalid_argument on a singular
// matrix.  The result is verified by back-substitution before returning.
VecQ solve_linear(MatQ N, VecQ beta);

Rat det(MatQ N);

}  // namespace octic
