// ============================================================================
// rational.cpp: helpers over boost cpp_rational
// ============================================================================

#include "pta/rational.hpp"

#include <stdexcept>

namespace pta {

BigInt floor_of(const Rational& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    BigInt quot = num / den;  // truncates toward zero
    if (num < 0 && quot * den != num) {
        quot -= 1;
    }
    return quot;
}

Rational frac_of(const Rational& q) { return q - Rational(floor_of(q)); }

bool is_integral(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

std::string to_string(const Rational& q) {
    if (is_integral(q)) {
        return boost::multiprecision::numerator(q).str();
    }
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) -> BigInt {
        if (s.empty()) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        for (std::size_t k = i; k < s.size(); ++k) {
            if (s[k] < '0' || s[k] > '9') {
                throw std::invalid_argument("malformed number '" + std::string(text) + "'");
            }
        }
        return BigInt(std::string(s));
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_int(text.substr(0, slash));
        BigInt den = parse_int(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view digits = text.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        BigInt scale = 1;
        for (std::size_t k = 0; k < digits.size(); ++k) scale *= 10;
        BigInt w = (whole.empty() || whole == "-" || whole == "+") ? BigInt(0) : parse_int(whole);
        BigInt f = digits.empty() ? BigInt(0) : parse_int(digits);
        if (f < 0) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        Rational r = Rational(w) + (negative ? Rational(-f, scale) : Rational(f, scale));
        return r;
    }
    return Rational(parse_int(text));
}

namespace {

// Stern-Brocot descent via continued fractions. `hi_infinite` encodes (lo, +inf).
Rational simplest_in(const Rational& lo, const Rational& hi, bool hi_infinite) {
    BigInt fl = floor_of(lo);
    Rational next = Rational(fl + 1);
    if (hi_infinite || next < hi) {
        return next;
    }
    // lo and hi share the integer part fl (hi may equal fl + 1).
    Rational lo_frac = lo - Rational(fl);
    Rational hi_frac = hi - Rational(fl);
    // fl + 1/y with y strictly between 1/hi_frac and 1/lo_frac.
    Rational y = (lo_frac == 0) ? simplest_in(1 / hi_frac, Rational(0), true)
                                : simplest_in(1 / hi_frac, 1 / lo_frac, false);
    return Rational(fl) + 1 / y;
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (!(lo < hi) || lo < 0) {
        throw std::invalid_argument("simplest_between: need 0 <= lo < hi");
    }
    return simplest_in(lo, hi, false);
}

Rational simplest_above(const Rational& lo) {
    if (lo < 0) throw std::invalid_argument("simplest_above: need lo >= 0");
    return simplest_in(lo, Rational(0), true);
}

}  // namespace pta
