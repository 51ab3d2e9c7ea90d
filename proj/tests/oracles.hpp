// Test-only reference computations, kept independent of the implementation
// paths they validate: the covariance quadratures are re-derived here from the
// bivariate law / the raw double integral, and the Jacobian from central
// differences of the inversion map.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "blockmax/asympt.hpp"
#include "blockmax/gev.hpp"
#include "blockmax/quadrature.hpp"

namespace blockmax::oracles {

// Covariance Cov(f_k(Z1), f_k'(Z2)) under the bivariate law with dependence
// parameter dep, via the generalized Hoeffding identity
//   Cov(f(Z1), g(Z2)) = int int [C(x,y) - F(x) F(y)] f'(x) g'(y) dx dy
// with f_k' = G^k, evaluated on exponential-margin coordinates
// x(s) = (s^-gamma - 1)/gamma so that G(x(s)) = e^-s. The bracket
// C - F F = e^{-(s+t)} (e^{(1-dep) min(s,t)} - 1) is expanded through expm1;
// the direct difference of the two cdfs drowns in rounding where both sit
// near 1, which the deep-corner weight (s t)^{-1-gamma} would then amplify.
inline double pair_covariance(double gamma, double dep, int k, int kp) {
  auto z_of = [gamma](double s) {
    if (std::fabs(gamma) < 1e-12) return -std::log(s);
    return std::expm1(-gamma * std::log(s)) / gamma;
  };
  auto integrand = [&](double s, double t) {
    const double joint_exponent = dep * (s + t) + (1.0 - dep) * std::max(s, t);
    const double c = std::exp(-joint_exponent);  // = bivariate cdf at (z(s), z(t))
    const double bracket = -c * std::expm1(-(1.0 - dep) * std::min(s, t));
    return bracket * std::exp(-k * s - kp * t) * std::pow(s * t, -gamma - 1.0);
  };
  // the reformulated copula factor must agree with the public bivariate cdf
  for (double s : {0.3, 1.0, 2.5}) {
    const double direct = bivariate_gev_cdf(gamma, dep, z_of(s), z_of(1.2));
    const double expo = dep * (s + 1.2) + (1.0 - dep) * std::max(s, 1.2);
    if (std::fabs(direct - std::exp(-expo)) > 1e-12) {
      throw std::logic_error("pair_covariance: copula reformulation mismatch");
    }
  }
  // endpoint behavior ~ s^-gamma per axis; substitute s = u^4
  const double m = 4.0;
  auto axis = [m](double u) { return std::pow(u, m); };
  auto daxis = [m](double u) { return m * std::pow(u, m - 1.0); };
  const double umax = std::pow(45.0, 1.0 / m);
  QuadOptions inner_opt;
  inner_opt.abs_tol = 1e-9;
  inner_opt.rel_tol = 1e-8;
  inner_opt.max_intervals = 150;
  QuadOptions outer_opt;
  outer_opt.abs_tol = 5e-9;
  outer_opt.rel_tol = 1e-7;
  outer_opt.max_intervals = 150;
  auto outer = [&](double u) {
    const double s = axis(u);
    if (s <= 0.0) return 0.0;
    auto inner = [&](double v) {
      const double t = axis(v);
      if (t <= 0.0) return 0.0;
      return integrand(s, t) * daxis(v);
    };
    // the dependence function has a kink at t = s; integrate the smooth pieces
    const double split = std::min(umax, std::pow(s, 1.0 / m));
    const double head = integrate(inner, 0.0, split, inner_opt).value;
    const double tail = split < umax ? integrate(inner, split, umax, inner_opt).value : 0.0;
    return (head + tail) * daxis(u);
  };
  return integrate(outer, 0.0, umax, outer_opt).value;
}

// 2 int_0^1 Cov(f_k(Z1,xi), f_k'(Z2,xi)) dxi, the representation-level oracle
// for the sliding covariance.
// The integrand below is analytic in the dependence parameter, so fixed
// Gauss-Kronrod panels suffice; adaptivity would only chase the numerical
// noise of the inner double integrals.
inline double omega_sliding_pair_integral(double gamma, int k, int kp) {
  QuadOptions panel;
  panel.max_intervals = 1;
  panel.abs_tol = 1.0;  // single-panel evaluation
  auto cov = [&](double dep) { return pair_covariance(gamma, dep, k, kp); };
  double value = 0.0;
  const double knots[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int i = 0; i < 4; ++i) value += integrate(cov, knots[i], knots[i + 1], panel).value;
  return 2.0 * value;
}

// Raw iterated quadrature of
//   H_{k,k'} = int_0^1 u^{k-1}(1-u)(-log u)^{-1-g} int_0^u s^{k'}(-log s)^{-1-g} ds du
// in exponential coordinates, with nested adaptive rules (no incomplete-gamma
// shortcut), for the disjoint covariance.
inline double omega_disjoint_quad2d(double gamma, int k, int kp) {
  auto H = [gamma](int ka, int kb) {
    const double c = kb + 1.0;
    QuadOptions inner_opt;
    inner_opt.abs_tol = 1e-12;
    inner_opt.rel_tol = 1e-11;
    inner_opt.max_intervals = 400;
    auto inner = [&](double x) {
      // int_x^inf e^{-c y} y^{-1-g} dy, truncated where the tail is negligible
      auto f = [&](double y) { return std::exp(-c * y) * std::pow(y, -1.0 - gamma); };
      return integrate(f, x, x + 80.0 / c, inner_opt).value;
    };
    auto outer = [&](double x) {
      return std::exp(-ka * x) * (-std::expm1(-x)) * std::pow(x, -1.0 - gamma) * inner(x);
    };
    const int m = gamma > 0.0 ? static_cast<int>(std::ceil(3.0 / (1.0 - 2.0 * gamma))) : 3;
    const double md = m;
    auto head = [&](double t) {
      const double x = std::pow(t, md);
      if (x <= 0.0) return 0.0;
      return outer(x) * md * std::pow(t, md - 1.0);
    };
    QuadOptions opt;
    opt.abs_tol = 1e-10;
    opt.rel_tol = 1e-10;
    opt.max_intervals = 400;
    return integrate(head, 0.0, 1.0, opt).value + integrate(outer, 1.0, 60.0, opt).value;
  };
  return H(k, kp) + H(kp, k);
}

// Central-difference Jacobian of the PWM -> GEV inversion at the true PWMs of
// GEV(0, 1, gamma); rows (shape, scale, location).
inline Mat3 jacobian_fd(double gamma, double h = 1e-5) {
  const PwmTriple base = gev_pwm({0.0, 1.0, gamma});
  Mat3 j{};
  for (int col = 0; col < 3; ++col) {
    PwmTriple plus = base, minus = base;
    double* bp[3] = {&plus.beta0, &plus.beta1, &plus.beta2};
    double* bm[3] = {&minus.beta0, &minus.beta1, &minus.beta2};
    *bp[col] += h;
    *bm[col] -= h;
    const GevParams fp = gev_from_pwm(plus);
    const GevParams fm = gev_from_pwm(minus);
    j[0][col] = (fp.gamma - fm.gamma) / (2.0 * h);
    j[1][col] = (fp.sigma - fm.sigma) / (2.0 * h);
    j[2][col] = (fp.mu - fm.mu) / (2.0 * h);
  }
  return j;
}

}  // namespace blockmax::oracles
