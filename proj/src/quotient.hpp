#pragma once

// Cyclic quotient singularities 1/n(1,q): Hirzebruch-Jung continued
// fractions, Wahl/T-singularity recognition, exceptional-chain intersection
// matrices, chain blow-downs, and the discrepancy solver with the
// log-canonical test.

#include "lattice.hpp"

#include <optional>
#include <vector>

namespace octic {

// The singularity 1/n(1,q), 0 < q < n, gcd(n,q) = 1.  `dual` records when
// the stored representative was reached by replacing q with its inverse
// mod n (both describe the same germ).
struct CyclicQuotient {
    Int n, q;
    bool dual = false;

    CyclicQuotient(Int nn, Int qq, bool is_dual = false);

    CyclicQuotient dual_form() const;
    bool operator==(const CyclicQuotient& o) const { return n == o.n && q == o.q; }
    std::string str() const { return "1/" + n.str() + "(1," + q.str() + ")"; }
};

// Self-intersection string of the exceptional chain: entry d_i >= 2 means a
// curve of square -d_i.
using HJChain = std::vector<Int>;

// n/q = d1 - 1/(d2 - 1/(...)) with all d_i >= 2.
HJChain hj_expand(const Int& n, const Int& q);

// Inverse of hj_expand: the value of the continued fraction as n/q in
// lowest terms.
Rat hj_eval(const HJChain& d);

// Tridiagonal intersection matrix N_ii = -d_i, N_{i,i+1} = 1.
MatQ chain_matrix(const HJChain& d);

// |det chain_matrix(d)| via the standard three-term recursion (used as an
// independent check on the dense determinant).
Int chain_det_recursive(const HJChain& d);

// Recognition of Wahl (1/p^2(1, pq-1)) and general T-singularities
// (1/dn^2(1, dna-1)).  A Wahl singularity is reported as Wahl even though
// it is also T with d = 1.
struct TSingClass {
    enum Kind { Wahl, TSingularity, Neither } kind = Neither;
    // Wahl: p, q.  T-singularity: d, n, a.
    Int p, q;       // valid when kind == Wahl
    Int d, n, a;    // valid when kind == TSingularity
    bool via_dual = false;  // parameters found on the dual representative
};
TSingClass is_wahl(const CyclicQuotient& s);

// Contract all (-1)-entries of a chain of self-intersections: an interior
// -1 increments both neighbours, a -1 at either end increments its single
// neighbour.  Repeats until no -1 remains.  Throws if a contraction drives
// an entry to >= 0 while the chain still has more than one entry (the input
// was not the resolution chain of a quotient singularity).
std::vector<Int> blow_down_chain(std::vector<Int> squares);

// Discrepancy solve: beta_i = -2 + d_i + pairing_i / 2 (the 1/2 from the
// double cover is applied here; callers pass raw intersection numbers
// B . D_i), alpha = N^{-1} beta.
struct DiscrepancyReport {
    VecQ alpha, beta;
    enum Verdict { LogTerminalRange, Boundary, NotLogCanonical } verdict;
};
DiscrepancyReport discrepancies(const HJChain& d, const VecQ& pairing);

// The vertex singularity 1/a^2(b^2, c^2) of the triangle for a Markov
// triple (a,b,c), normalized to the 1/a^2(1, aq-1) form with
// q = 3c/b mod a.  Verifies b^2 (aq - 1) = c^2 mod a^2.
CyclicQuotient normalize_singularity(const Int& a, const Int& b, const Int& c);

// Modular inverse, throws if gcd(x, m) != 1.
Int inv_mod(Int x, const Int& m);

}  // namespace octic
