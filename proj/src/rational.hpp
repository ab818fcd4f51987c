#pragma once

// Arbitrary-precision integer and rational scalars.
//
// Everything downstream (lattice geometry, continued fractions, discrepancy
// solving) assumes exact arithmetic: Markov numbers grow doubly
// exponentially (14701 appears four mutations from the root), so fixed-width
// integers are not an option.  boost::multiprecision keeps rationals in
// lowest terms with a positive denominator, which is exactly the invariant
// we need.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace octic {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Serialize as "p/q", or just "p" when the denominator is 1, so JSON stays
// exact.
inline std::string rat_str(const Rat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

inline std::optional<Rat> parse_rat(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) return std::nullopt;
        return Rat(p, q);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// Floor division helpers used by continued fractions and lattice scans.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int floor_rat(const Rat& r) { return floor_div(num(r), den(r)); }
inline Int ceil_rat(const Rat& r) { return ceil_div(num(r), den(r)); }

inline Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

}  // namespace octic
