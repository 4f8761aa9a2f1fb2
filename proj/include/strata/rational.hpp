#ifndef STRATA_RATIONAL_HPP
#define STRATA_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <vector>

namespace strata {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer floor_of(const Rational& q) {
    Integer n = boost::multiprecision::numerator(q);
    Integer d = boost::multiprecision::denominator(q);
    Integer f = n / d;  // truncates toward zero
    if (n < 0 && f * d != n) f -= 1;
    return f;
}

inline bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) { return q.str(); }

// Parses "a" or "a/b" with optional leading sign.
Rational parse_rational(const std::string& text);

using RationalVector = std::vector<Rational>;

}  // namespace strata

#endif
