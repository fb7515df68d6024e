#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lpdec {

// Exact rational arithmetic. All decoder semantics (cost signs, weight
// parity, median ties) are decided on these, never on doubles.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

// "p/q" with q omitted when 1.
std::string to_fraction_string(const Rational& x);

// Parses "p", "-p", "p/q". Throws std::invalid_argument on anything else.
Rational rational_from_string(const std::string& s);

// Fixed-point decimal rendering, truncated toward zero after `digits`
// fractional digits. Exact up to the truncation; no binary float involved.
std::string to_decimal_string(const Rational& x, int digits);

}  // namespace lpdec
