#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace hamforge {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact binary value of a finite double.
inline Rational from_double(double x) { return Rational(x); }

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "p", "p/q" or "-p/q".
Rational parse_rational(const std::string& text);

// True when the denominator is a power of two, i.e. the value survives a
// round trip through double (for moderate magnitudes).
bool is_dyadic(const Rational& r);

}  // namespace hamforge
