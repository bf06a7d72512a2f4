// ============================================================================
// pta/rational.hpp: exact rational time values
// ============================================================================
//
// Clock valuations and delays are exact rationals. Boundary cases of strict
// guards (x < 3 reached by a delay of 3 - v) must be decided without rounding,
// so everything that touches concrete time goes through this type.
//
// ============================================================================

#ifndef PTA_RATIONAL_HPP
#define PTA_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace pta {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Largest integer not greater than q.
BigInt floor_of(const Rational& q);

/// Fractional part q - floor(q), always in [0, 1).
Rational frac_of(const Rational& q);

bool is_integral(const Rational& q);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& q);

/// Accepts "7", "7/3" and decimal notation "2.25". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// The rational with the smallest denominator (then numerator) strictly
/// between lo and hi. Requires 0 <= lo < hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Same, for the unbounded interval (lo, +inf).
Rational simplest_above(const Rational& lo);

}  // namespace pta

#endif  // PTA_RATIONAL_HPP
