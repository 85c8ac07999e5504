#include "harmfield/rational.hpp"

#include <cmath>
#include <limits>

#include "harmfield/errors.hpp"

namespace harmfield {

Rational rationalize(double x, double tol, int max_terms) {
  if (!std::isfinite(x)) throw PreconditionError("cannot rationalize a non-finite value");
  using boost::multiprecision::cpp_int;
  // Convergents h_k / k_k of the continued fraction of x.
  cpp_int h_prev = 1, h = 0, k_prev = 0, k = 1;
  double rest = x;
  for (int i = 0; i < max_terms; ++i) {
    const double a = std::floor(rest);
    const cpp_int ai(static_cast<long long>(a));
    cpp_int h_next = ai * h_prev + h;
    cpp_int k_next = ai * k_prev + k;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    const Rational r(h_prev, k_prev);
    if (std::abs(to_double(r) - x) <= tol) return r;
    const double frac = rest - a;
    if (frac < std::numeric_limits<double>::epsilon()) return r;
    rest = 1.0 / frac;
    if (std::abs(rest) > 1e15) return r;
  }
  return Rational(h_prev, k_prev);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const auto den = denominator(r);
  if (den == 1) return numerator(r).str();
  return numerator(r).str() + "/" + den.str();
}

}  // namespace harmfield
