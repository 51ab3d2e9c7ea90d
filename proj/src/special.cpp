#include "blockmax/special.hpp"

#include <cmath>
#include <stdexcept>

namespace blockmax {

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: argument must be positive");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // ln x - 1/(2x) - sum_{n>=1} B_{2n} / (2n x^{2n})
  const double tail =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0))))));
  return acc + std::log(x) - 0.5 * inv - tail;
}

double expm1m(double x) {
  if (std::fabs(x) > 0.5) return std::expm1(x) - x;
  // x^2/2 + x^3/6 + ...
  double term = x * x / 2.0;
  double sum = term;
  for (int j = 3; j < 30; ++j) {
    term *= x / j;
    sum += term;
    if (std::fabs(term) < 1e-20 * std::fabs(sum)) break;
  }
  return sum;
}

namespace {

// log Gamma(1+a) / a, stable through a = 0.
double lgamma1p_over(double a) {
  if (std::fabs(a) < 1e-4) {
    // -euler + zeta(2)/2 a - zeta(3)/3 a^2 + zeta(4)/4 a^3
    const double z4 = 1.08232323371113819151600369654116790;
    return -kEulerGamma + a * (kZeta2 / 2.0 - a * (kZeta3 / 3.0 - a * z4 / 4.0));
  }
  return std::lgamma(1.0 + a) / a;
}

// Series branch for small z:
// Gamma(a,z) = [Gamma(a+1) - z^a]/a - z^a sum_{n>=1} (-z)^n / (n! (a+n)).
double gamma_upper_series(double a, double z) {
  const double l = std::log(z);
  const double za = std::exp(a * l);
  const double u_over_a = lgamma1p_over(a) - l;  // (lgamma(1+a) - a log z)/a
  const double u = a * u_over_a;
  const double eu = std::fabs(u) < 1e-12 ? 1.0 + 0.5 * u : std::expm1(u) / u;
  const double bracket = za * eu * u_over_a;
  double term = 1.0;
  double sum = 0.0;
  for (int n = 1; n < 250; ++n) {
    term *= -z / n;
    const double add = term / (a + n);
    sum += add;
    if (std::fabs(add) < 1e-18 * (1.0 + std::fabs(sum))) break;
  }
  return bracket - za * sum;
}

// Lentz continued fraction, valid for z not too small relative to a.
double gamma_upper_cf(double a, double z) {
  constexpr double tiny = 1e-300;
  double b = z + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-z + a * std::log(z)) * h;
}

}  // namespace

double gamma_upper(double a, double z) {
  if (!(z > 0.0)) throw std::domain_error("gamma_upper: z must be positive");
  if (!(a > -1.0 && a < 1.0)) throw std::domain_error("gamma_upper: a must lie in (-1, 1)");
  if (z < a + 1.0 || z < 1.0) return gamma_upper_series(a, z);
  return gamma_upper_cf(a, z);
}

}  // namespace blockmax
