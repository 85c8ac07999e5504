#pragma once

// Exact rationals for coefficient matching.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace harmfield {

using Rational = boost::multiprecision::cpp_rational;

/// Best rational approximation of x with |x - r| <= tol, from continued fractions.
Rational rationalize(double x, double tol = 1e-12, int max_terms = 64);

double to_double(const Rational& r);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

}  // namespace harmfield
