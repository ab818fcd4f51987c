#include "lattice.hpp"

#include <algorithm>

namespace octic {

Rat affine_length(const RatPoint& a, const RatPoint& b) {
    RatPoint d = b - a;
    if (d.x == 0 && d.y == 0) return 0;
    // Clear denominators, take the primitive direction, and read off the
    // multiple from whichever coordinate is nonzero.
    Int m = den(d.x) * den(d.y) / gcd(den(d.x), den(d.y));
    Vec w(num(d.x) * (m / den(d.x)), num(d.y) * (m / den(d.y)));
    Vec p = primitive(w);
    Rat t = (p.x != 0) ? d.x / Rat(p.x) : d.y / Rat(p.y);
    return t < 0 ? -t : t;
}

ConvexPolygon::ConvexPolygon(std::vector<RatPoint> vertices) : verts_(std::move(vertices)) {
    if (verts_.size() < 3) throw std::invalid_argument("ConvexPolygon: need at least 3 vertices");
    // Orientation: signed area must be nonzero; flip to counter-clockwise.
    Rat twice_area = 0;
    size_t n = verts_.size();
    for (size_t i = 0; i < n; ++i) twice_area += wedge(verts_[i], verts_[(i + 1) % n]);
    if (twice_area == 0) throw std::invalid_argument("ConvexPolygon: zero area");
    if (twice_area < 0) std::reverse(verts_.begin(), verts_.end());
    // Strict convexity: every consecutive turn must be a strict left turn
    // (this also rejects repeated and collinear vertices).
    for (size_t i = 0; i < n; ++i) {
        RatPoint e1 = verts_[(i + 1) % n] - verts_[i];
        RatPoint e2 = verts_[(i + 2) % n] - verts_[(i + 1) % n];
        if (wedge(e1, e2) <= 0)
            throw std::invalid_argument("ConvexPolygon: vertices not strictly convex");
    }
    // Canonical start: lexicographically least vertex first.
    auto least = std::min_element(verts_.begin(), verts_.end());
    std::rotate(verts_.begin(), least, verts_.end());
}

Rat ConvexPolygon::area() const {
    Rat s = 0;
    size_t n = verts_.size();
    for (size_t i = 0; i < n; ++i) s += wedge(verts_[i], verts_[(i + 1) % n]);
    return s / 2;
}

bool ConvexPolygon::contains(const RatPoint& p) const {
    size_t n = verts_.size();
    for (size_t i = 0; i < n; ++i) {
        if (wedge(verts_[(i + 1) % n] - verts_[i], p - verts_[i]) < 0) return false;
    }
    return true;
}

namespace {

// Row scan: for each integer y in the vertical range, intersect the
// boundary edges with that row and keep the integer x range.
std::vector<Vec> lattice_points_by_rows(const std::vector<RatPoint>& v) {
    Rat ymin = v[0].y, ymax = v[0].y;
    for (const auto& p : v) {
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    std::vector<Vec> out;
    size_t n = v.size();
    for (Int y = ceil_rat(ymin); y <= floor_rat(ymax); ++y) {
        Rat yy(y);
        bool any = false;
        Rat xlo, xhi;
        for (size_t i = 0; i < n; ++i) {
            const RatPoint& a = v[i];
            const RatPoint& b = v[(i + 1) % n];
            Rat lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
            if (yy < lo || yy > hi) continue;
            auto note = [&](const Rat& x) {
                if (!any) {
                    xlo = xhi = x;
                    any = true;
                } else {
                    xlo = std::min(xlo, x);
                    xhi = std::max(xhi, x);
                }
            };
            if (a.y == b.y) {
                note(a.x);
                note(b.x);
            } else {
                Rat t = (yy - a.y) / (b.y - a.y);
                note(a.x + t * (b.x - a.x));
            }
        }
        if (!any) continue;
        for (Int x = ceil_rat(xlo); x <= floor_rat(xhi); ++x) out.emplace_back(x, y);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Vec> lattice_points(const ConvexPolygon& P) {
    // Mutated polygons can be extremely long and thin with astronomical
    // coordinates, so a direct row scan over y may be infeasible.  Apply a
    // unimodular transform sending the direction of the edge of greatest
    // affine length t to (1,0): the image has y-range at most 2 area / t,
    // scan that, and map the points back.  (Each row then costs only as
    // much as the number of points it contributes.)
    const auto& vs = P.vertices();
    size_t n = vs.size(), best = 0;
    Rat best_len = -1;
    for (size_t i = 0; i < n; ++i) {
        Rat len = affine_length(vs[i], vs[(i + 1) % n]);
        if (len > best_len) {
            best_len = len;
            best = i;
        }
    }
    RatPoint dr = vs[(best + 1) % n] - vs[best];
    // Primitive integer direction of that edge.
    Int g = gcd(abs(num(dr.x) * den(dr.y)), abs(num(dr.y) * den(dr.x)));
    Vec d{num(dr.x) * den(dr.y) / g, num(dr.y) * den(dr.x) / g};
    if (d.y == 0) return lattice_points_by_rows(vs);  // already horizontal
    // Bezout: u0*dx + v0*dy = 1; U = [[u0, v0], [-dy, dx]] sends d to (1,0).
    Int a = d.x, b = d.y, u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (b != 0) {
        Int q = a / b;
        a -= q * b;
        std::swap(a, b);
        u0 -= q * u1;
        std::swap(u0, u1);
        v0 -= q * v1;
        std::swap(v0, v1);
    }
    if (a < 0) { u0 = -u0; v0 = -v0; }
    Mat2 U{Rat(u0), Rat(v0), Rat(-d.y), Rat(d.x)};
    std::vector<RatPoint> moved;
    moved.reserve(vs.size());
    for (const RatPoint& p : vs) moved.push_back(U.apply(p));
    Mat2 Uinv = U.inverse();
    std::vector<Vec> out;
    for (const Vec& p : lattice_points_by_rows(moved)) out.push_back(Uinv.apply(p));
    std::sort(out.begin(), out.end());
    return out;
}

VecQ solve_linear(MatQ N, VecQ beta) {
    size_t n = N.size();
    if (n == 0 || beta.size() != n)
        throw std::invalid_argument("solve_linear: shape mismatch");
    for (auto& row : N)
        if (row.size() != n) throw std::invalid_argument("solve_linear: non-square matrix");
    MatQ A = N;  // keep the original for verification
    VecQ b = beta;
    // Gaussian elimination with partial (first nonzero) pivoting.
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) throw std::invalid_argument("solve_linear: singular matrix");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = col + 1; r < n; ++r) {
            if (A[r][col] == 0) continue;
            Rat f = A[r][col] / A[col][col];
            for (size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    VecQ x(n);
    for (size_t ri = n; ri-- > 0;) {
        Rat s = b[ri];
        for (size_t c = ri + 1; c < n; ++c) s -= A[ri][c] * x[c];
        x[ri] = s / A[ri][ri];
    }
    // Exact verification against the untouched input.
    for (size_t r = 0; r < n; ++r) {
        Rat s = 0;
        for (size_t c = 0; c < n; ++c) s += N[r][c] * x[c];
        if (s != beta[r]) throw std::logic_error("solve_linear: verification failed");
    }
    return x;
}

Rat det(MatQ N) {
    size_t n = N.size();
    Rat d = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && N[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(N[piv], N[col]);
            d = -d;
        }
        d *= N[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (N[r][col] == 0) continue;
            Rat f = N[r][col] / N[col][col];
            for (size_t c = col; c < n; ++c) N[r][c] -= f * N[col][c];
        }
    }
    return d;
}

}  // namespace octic
