#pragma once

#include <array>

#include "blockmax/blocks.hpp"
#include "blockmax/pwm.hpp"

namespace blockmax {

using Mat3 = std::array<std::array<double, 3>, 3>;

// Symmetric 3x3 covariance matrix of the (approximately) normalized empirical
// PWM vector, tagged with the extraction scheme it belongs to.
struct CovMatrix3 {
  Mat3 entries{};
  BlockScheme mode = BlockScheme::disjoint;
};

// Asymptotic covariance of the disjoint-blocks empirical PWMs, entries
//   Omega_{k,k'} = H_{k,k'} + H_{k',k},
//   H_{k,k'} = int_0^1 u^{k-1}(1-u)(-log u)^{-1-g} int_0^u s^{k'}(-log s)^{-1-g} ds du,
// for gamma in (-1, 0.5); each entry accurate to about 1e-10 absolute.
CovMatrix3 omega_disjoint(double gamma);

// Sliding-blocks counterpart: single quadrature over w in (0, 1/2) of the
// closed-form integrand (the gamma = 0 and gamma = -1/2 branches are the
// continuous limits of the same series evaluation).
CovMatrix3 omega_sliding(double gamma);

// Jacobian of the PWM -> GEV inversion at the true PWMs of GEV(0,1,gamma);
// rows ordered (shape, scale, location), columns (beta0, beta1, beta2).
Mat3 pwm_jacobian(double gamma);

// Sigma = C Omega C', the asymptotic covariance of
// (shape - gamma, (scale-a_r)/a_r, (loc-b_r)/a_r).
CovMatrix3 sigma_matrix(double gamma, BlockScheme mode);

// Gradient of the return-level functional in (shape, scale, location) order.
std::array<double, 3> qt_vector(double gamma, double T);

// q_T' Sigma q_T
double rl_variance(double gamma, double T, BlockScheme mode);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Plug-in asymptotic confidence interval for the (T, r) return level:
// center +/- a_r sqrt(r/n * var) * u_{1-alpha/2}.
Interval rl_confidence_interval(const GevFit& fit, double T, double level);

// quantile of the standard normal law (for CI construction)
double normal_quantile(double p);

// eigenvalues of a symmetric 3x3 matrix, ascending
std::array<double, 3> sym3_eigenvalues(const Mat3& m);

Mat3 mat3_mul(const Mat3& a, const Mat3& b);
Mat3 mat3_mul_transpose(const Mat3& a, const Mat3& b);  // a * b'
Mat3 mat3_sub(const Mat3& a, const Mat3& b);

}  // namespace blockmax
