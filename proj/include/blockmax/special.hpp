#pragma once

namespace blockmax {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kZeta2 = 1.64493406684822643647241516664602519;  // pi^2/6
inline constexpr double kZeta3 = 1.20205690315959428539973816151144999;

// Digamma function for x > 0. Recurrence up to x >= 10, then the Bernoulli
// asymptotic series; absolute error below 1e-13 on (0, 10].
double digamma(double x);

// Upper incomplete gamma Gamma(a, z) = int_z^inf t^{a-1} e^{-t} dt for z > 0,
// analytically continued in a; supports a in (-1, 1) including a = 0, where it
// equals the exponential integral E1(z).
double gamma_upper(double a, double z);

// expm1(x) - x without cancellation for small |x|.
double expm1m(double x);

}  // namespace blockmax
