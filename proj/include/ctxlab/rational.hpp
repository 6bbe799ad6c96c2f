#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace ctxlab {

/// Exact rational number. GMP keeps every value in lowest terms with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "num/den", "num", or "-num/den". Throws std::invalid_argument on malformed text or a zero
/// denominator.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& value);

inline Integer numerator(const Rational& value) { return boost::multiprecision::numerator(value); }
inline Integer denominator(const Rational& value) { return boost::multiprecision::denominator(value); }

inline bool is_zero(const Rational& value) { return value.sign() == 0; }

/// Scales a vector by a positive factor so that every entry is an integer and the entries share no
/// common factor. The zero vector is returned unchanged.
std::vector<Rational> primitive_integer_vector(std::vector<Rational> entries);

}  // namespace ctxlab
