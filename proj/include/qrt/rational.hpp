#pragma once

// Arbitrary-precision integers and canonical rationals, plus the handful of
// exact predicates the geometry needs (exact double conversion, perfect-square
// tests). Backed by Boost.Multiprecision's header-only cpp_int / cpp_rational.

#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "qrt/errors.hpp"

namespace qrt {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact conversion: every finite double is a dyadic rational.
inline BigRational rational_from_double(double v) {
    if (!std::isfinite(v)) throw domain_error("rational_from_double: value not finite");
    if (v == 0.0) return BigRational(0);
    int exp = 0;
    const double frac = std::frexp(v, &exp);  // v = frac * 2^exp, |frac| in [0.5, 1)
    const double scaled = std::ldexp(frac, 53);
    const auto mant = static_cast<std::int64_t>(scaled);
    BigRational r(mant);
    const int shift = exp - 53;
    if (shift >= 0)
        r *= BigRational(BigInt(1) << shift);
    else
        r /= BigRational(BigInt(1) << (-shift));
    return r;
}

inline double to_double(const BigRational& r) { return r.template convert_to<double>(); }

inline int sign(const BigRational& r) { return r.sign(); }

inline bool is_perfect_square(const BigInt& n) {
    if (n < 0) return false;
    if (n == 0) return true;
    const BigInt root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

/// A non-negative rational is a perfect square iff both canonical numerator
/// and denominator are.
inline bool is_square_rational(const BigRational& r) {
    if (r < 0) return false;
    return is_perfect_square(boost::multiprecision::numerator(r)) &&
           is_perfect_square(boost::multiprecision::denominator(r));
}

}  // namespace qrt
