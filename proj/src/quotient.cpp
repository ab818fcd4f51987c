#include "quotient.hpp"

#include <algorithm>

namespace octic {

Int inv_mod(Int x, const Int& m) {
    // Extended Euclid.
    Int a = ((x % m) + m) % m, b = m;
    Int u = 1, v = 0;
    while (b != 0) {
        Int t = a / b;
        a -= t * b;
        std::swap(a, b);
        u -= t * v;
        std::swap(u, v);
    }
    if (a != 1) throw std::invalid_argument("inv_mod: not invertible");
    return ((u % m) + m) % m;
}

CyclicQuotient::CyclicQuotient(Int nn, Int qq, bool is_dual)
    : n(std::move(nn)), q(std::move(qq)), dual(is_dual) {
    if (n <= 0 || q <= 0 || q >= n || gcd(n, q) != 1)
        throw std::invalid_argument("CyclicQuotient: need 0 < q < n coprime");
}

CyclicQuotient CyclicQuotient::dual_form() const {
    return CyclicQuotient(n, inv_mod(q, n), !dual);
}

HJChain hj_expand(const Int& n, const Int& q) {
    if (n <= 0 || q <= 0 || q >= n)
        throw std::invalid_argument("hj_expand: need 0 < q < n coprime");
    HJChain d;
    Int a = n, b = q, di, r;
    while (b > 0) {
        // n/q = d - 1/(next): next = b / (d*b - a), with d = ceil(a/b).
        divide_qr(a, b, di, r);
        if (r != 0) {
            ++di;
            r = b - r;
        }
        d.push_back(di);
        a = b;
        b = r;
    }
    // The recursion preserves gcd(a, b) and terminates at (gcd, 0); for
    // coprime input it ends at exactly (1, 0).
    if (a != 1) throw std::invalid_argument("hj_expand: need 0 < q < n coprime");
    return d;
}

Rat hj_eval(const HJChain& d) {
    if (d.empty()) throw std::invalid_argument("hj_eval: empty chain");
    // Convergents from the back: p_i / q_i with p_i = d_i p_{i+1} - q_{i+1},
    // q_i = p_{i+1}; consecutive convergents are automatically coprime.
    Int p = d.back(), q = 1;
    for (size_t i = d.size() - 1; i-- > 0;) {
        Int next = d[i] * p - q;
        q = p;
        p = std::move(next);
    }
    return Rat(p, q);
}

MatQ chain_matrix(const HJChain& d) {
    size_t n = d.size();
    if (n == 0) throw std::invalid_argument("chain_matrix: empty chain");
    MatQ N(n, VecQ(n, 0));
    for (size_t i = 0; i < n; ++i) {
        N[i][i] = -Rat(d[i]);
        if (i + 1 < n) N[i][i + 1] = N[i + 1][i] = 1;
    }
    return N;
}

Int chain_det_recursive(const HJChain& d) {
    // det of the tridiagonal matrix via D_k = -d_k D_{k-1} - D_{k-2}.
    Int prev2 = 1, prev1 = -d[0];
    for (size_t i = 1; i < d.size(); ++i) {
        Int cur = -d[i] * prev1 - prev2;
        prev2 = prev1;
        prev1 = cur;
    }
    return abs(prev1);
}

TSingClass is_wahl(const CyclicQuotient& s) {
    auto probe = [](const Int& n, const Int& q) -> std::optional<TSingClass> {
        // Find d, m with n = d m^2 and q = d m a - 1, 0 < a < m, gcd(a,m)=1.
        for (Int m = 2; m * m <= n; ++m) {
            if (n % (m * m) != 0) continue;
            Int d = n / (m * m);
            if ((q + 1) % (d * m) != 0) continue;
            Int a = (q + 1) / (d * m);
            if (a <= 0 || a >= m || gcd(a, m) != 1) continue;
            TSingClass r;
            if (d == 1) {
                r.kind = TSingClass::Wahl;
                r.p = m;
                r.q = a;
            } else {
                r.kind = TSingClass::TSingularity;
                r.d = d;
                r.n = m;
                r.a = a;
            }
            return r;
        }
        return std::nullopt;
    };
    if (auto r = probe(s.n, s.q)) return *r;
    if (auto r = probe(s.n, inv_mod(s.q, s.n))) {
        r->via_dual = true;
        return *r;
    }
    return TSingClass{};
}

std::vector<Int> blow_down_chain(std::vector<Int> squares) {
    for (;;) {
        auto it = std::find(squares.begin(), squares.end(), Int(-1));
        if (it == squares.end()) break;
        size_t i = size_t(it - squares.begin());
        if (i > 0) squares[i - 1] += 1;
        if (i + 1 < squares.size()) squares[i + 1] += 1;
        squares.erase(squares.begin() + i);
        for (const Int& s : squares) {
            if (s >= 0 && squares.size() > 1)
                throw std::invalid_argument(
                    "blow_down_chain: contraction produced a non-negative square");
        }
    }
    return squares;
}

DiscrepancyReport discrepancies(const HJChain& d, const VecQ& pairing) {
    if (pairing.size() != d.size())
        throw std::invalid_argument("discrepancies: pairing length mismatch");
    for (const Rat& p : pairing)
        if (p < 0) throw std::invalid_argument("discrepancies: negative pairing");
    DiscrepancyReport rep;
    rep.beta.resize(d.size());
    for (size_t i = 0; i < d.size(); ++i) rep.beta[i] = Rat(d[i]) - 2 + pairing[i] / 2;
    rep.alpha = solve_linear(chain_matrix(d), rep.beta);
    Rat lo = rep.alpha[0];
    for (const Rat& a : rep.alpha) lo = std::min(lo, a);
    rep.verdict = lo < -1  ? DiscrepancyReport::NotLogCanonical
                : lo == -1 ? DiscrepancyReport::Boundary
                           : DiscrepancyReport::LogTerminalRange;
    return rep;
}

CyclicQuotient normalize_singularity(const Int& a, const Int& b, const Int& c) {
    if (a * a + b * b + c * c != 3 * a * b * c)
        throw std::invalid_argument("normalize_singularity: not a Markov triple");
    if (a == 1) throw std::invalid_argument("normalize_singularity: smooth point (index 1)");
    Int q = (3 * c % a) * inv_mod(b, a) % a;
    if (q == 0) q = a;  // q is only defined mod a; the chart needs 0 < q <= a
    Int n = a * a, qq = a * q - 1;
    // The defining identity: the 1/a^2(b^2, c^2) chart equals 1/a^2(1, aq-1).
    if ((b * b % n) * (qq % n) % n != c * c % n)
        throw std::logic_error("normalize_singularity: identity b^2(aq-1) = c^2 mod a^2 failed");
    return CyclicQuotient(n, qq);
}

}  // namespace octic
