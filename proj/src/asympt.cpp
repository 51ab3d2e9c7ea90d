#include "blockmax/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blockmax/quadrature.hpp"
#include "blockmax/special.hpp"

namespace blockmax {

namespace {

constexpr double kL2 = 0.69314718055994530941723212145817657;
constexpr double kL3 = 1.09861228866810969139524523692252570;
constexpr double kGammaEps = 1e-8;

void check_admissible(double gamma) {
  if (!(gamma > -1.0 && gamma < 0.5)) {
    throw std::domain_error("asymptotic covariances require gamma in (-1, 0.5)");
  }
}

// rho(eps, p) = [ {1 - (1-eps)^p} / (p eps) - 1 ] / (p - 1), evaluated as the
// series -1/eps sum_{j>=2} log(1-eps)^j / j! * (1 + p + ... + p^{j-2}), which
// is exact in the limits p -> 0 and p -> 1 as well. Requires eps in (0, 1/2].
double rho_hat(double eps, double p) {
  const double l = std::log1p(-eps);
  double lj = l;                 // l^j
  double sig = 0.0;              // 1 + p + ... + p^{j-2}
  double pj = 1.0;               // p^{j-2}
  double fact = 1.0;             // j!
  double total = 0.0;
  for (int j = 2; j < 64; ++j) {
    lj *= l;
    sig += pj;
    pj *= p;
    fact *= j;
    const double term = lj / fact * sig;
    total += term;
    if (std::fabs(term) < 1e-18 * std::fabs(total)) break;
  }
  return -total / eps;
}

// Contribution of the ordered pair (k, k') to the sliding integrand at w;
// equals C_gamma * h_{gamma,k,k'}(w) in a form stable near w = 0 and across
// the gamma = 0 and gamma = -1/2 branch points.
double sliding_term(double gamma, int k, int kp, double w, double lgamma12) {
  const double a = k * w + kp * (1.0 - w) + 1.0;
  const double eps = w / a;
  const double p = 2.0 * gamma + 1.0;
  return -lgamma12 * std::pow(a, 2.0 * gamma) * rho_hat(eps, p);
}

// substitution exponent that removes the w^{-gamma}-type endpoint singularity
int endpoint_power(double gamma) {
  if (gamma <= 0.0) return 3;
  return static_cast<int>(std::ceil(3.0 / (1.0 - 2.0 * gamma)));
}

double omega_sliding_entry(double gamma, int k, int kp) {
  const double lgamma12 = std::tgamma(1.0 - 2.0 * gamma);
  auto integrand = [&](double w) {
    const double num = sliding_term(gamma, k, kp, w, lgamma12) +
                       sliding_term(gamma, kp, k, w, lgamma12);
    return num / std::pow(w * (1.0 - w), 1.0 + gamma);
  };
  const int m = endpoint_power(gamma);
  const double md = static_cast<double>(m);
  auto substituted = [&](double t) {
    const double w = std::pow(t, md);
    if (w <= 0.0 || w >= 0.5) return 0.0;
    return integrand(w) * md * std::pow(t, md - 1.0);
  };
  QuadOptions opt;
  opt.abs_tol = 1e-11;
  opt.rel_tol = 1e-12;
  const double tmax = std::pow(0.5, 1.0 / md);
  return 2.0 * integrate_checked(substituted, 0.0, tmax, opt);
}

// H_{k,k'} in exponential coordinates:
//   int_0^inf e^{-kx} (1 - e^{-x}) x^{-1-g} * (k'+1)^g Gamma(-g, (k'+1) x) dx.
double h_disjoint(double gamma, int k, int kp) {
  const double c = kp + 1.0;
  const double cg = std::pow(c, gamma);
  auto f = [&](double x) {
    const double outer = std::exp(-k * x) * (-std::expm1(-x)) * std::pow(x, -1.0 - gamma);
    return outer * cg * gamma_upper(-gamma, c * x);
  };
  // the integrand behaves like x^{-2 gamma} (log for gamma = 0) near zero
  const int m = endpoint_power(gamma);
  const double md = static_cast<double>(m);
  auto near_zero = [&](double t) {
    const double x = std::pow(t, md);
    if (x <= 0.0) return 0.0;
    return f(x) * md * std::pow(t, md - 1.0);
  };
  QuadOptions opt;
  opt.abs_tol = 5e-12;
  opt.rel_tol = 1e-12;
  const double head = integrate_checked(near_zero, 0.0, 1.0, opt);
  const double tail = integrate_checked(f, 1.0, 60.0, opt);
  return head + tail;
}

}  // namespace

CovMatrix3 omega_sliding(double gamma) {
  check_admissible(gamma);
  CovMatrix3 out;
  out.mode = BlockScheme::sliding;
  for (int k = 0; k < 3; ++k) {
    for (int kp = k; kp < 3; ++kp) {
      const double v = omega_sliding_entry(gamma, k, kp);
      out.entries[k][kp] = v;
      out.entries[kp][k] = v;
    }
  }
  return out;
}

CovMatrix3 omega_disjoint(double gamma) {
  check_admissible(gamma);
  double h[3][3];
  for (int k = 0; k < 3; ++k) {
    for (int kp = 0; kp < 3; ++kp) h[k][kp] = h_disjoint(gamma, k, kp);
  }
  CovMatrix3 out;
  out.mode = BlockScheme::disjoint;
  for (int k = 0; k < 3; ++k) {
    for (int kp = 0; kp < 3; ++kp) out.entries[k][kp] = h[k][kp] + h[kp][k];
  }
  return out;
}

Mat3 pwm_jacobian(double gamma) {
  if (!(gamma < 1.0)) throw std::domain_error("pwm_jacobian: gamma must be below 1");

  double c1, c2, c3, c4, c5;  // shape-dependent building blocks
  double ratio;               // (3^g - 1)/(2^g - 1)
  if (std::fabs(gamma) < kGammaEps) {
    ratio = kL3 / kL2;
    // analytic limits; the first-order terms keep the branch accurate near 0
    c1 = 2.0 / (kL3 * (kL3 - kL2));
    c2 = 1.0 / kL2;
    c3 = -0.5 * kL2 - kEulerGamma - gamma * (kL2 * kL2 / 12.0 + kZeta2);
    const double gpp1 = kEulerGamma * kEulerGamma + kZeta2;  // Gamma''(1)
    c4 = -0.5 * gpp1 -
         gamma * (2.0 * kZeta3 / 3.0 + std::pow(kEulerGamma, 3) / 3.0 + kEulerGamma * kZeta2);
    c5 = -kEulerGamma - 0.5 * gamma * gpp1;
  } else {
    const double e2 = std::expm1(gamma * kL2);
    const double e3 = std::expm1(gamma * kL3);
    const double gam1 = std::tgamma(1.0 - gamma);
    const double psi1 = digamma(1.0 - gamma);
    ratio = e3 / e2;
    // ratio'(gamma), with the O(gamma) cancellation removed analytically
    const double deriv =
        ((kL3 * expm1m(gamma * kL2) - kL2 * expm1m(gamma * kL3)) + e2 * e3 * (kL3 - kL2)) /
        (e2 * e2);
    c1 = gamma / (gam1 * e2) / deriv;
    c2 = gamma / (gam1 * e2);
    // 1/g - 2^g log 2/(2^g - 1) + psi(1-g), stable form
    const double x2 = gamma * kL2;
    c3 = kL2 * (expm1m(x2) - x2 * e2) / (x2 * e2) + psi1;
    // (g Gamma'(1-g) - 1 + Gamma(1-g)) / g^2 via expm1 of lgamma
    const double s = std::lgamma(1.0 - gamma);
    const double gpsi = gamma * psi1;
    c4 = (std::expm1(s) * (1.0 + gpsi) + gpsi) / (gamma * gamma);
    c5 = -std::expm1(s) / gamma;
  }

  Mat3 j{};
  j[0][0] = (ratio - 1.0) * c1;
  j[0][1] = -2.0 * ratio * c1;
  j[0][2] = 3.0 * c1;
  j[1][0] = -c2 + j[0][0] * c3;
  j[1][1] = 2.0 * c2 + j[0][1] * c3;
  j[1][2] = j[0][2] * c3;
  j[2][0] = 1.0 + c4 * j[0][0] + c5 * j[1][0];
  j[2][1] = c4 * j[0][1] + c5 * j[1][1];
  j[2][2] = c4 * j[0][2] + c5 * j[1][2];
  return j;
}

Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Mat3 mat3_mul_transpose(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[j][k];
  return r;
}

Mat3 mat3_sub(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

CovMatrix3 sigma_matrix(double gamma, BlockScheme mode) {
  const CovMatrix3 omega =
      mode == BlockScheme::disjoint ? omega_disjoint(gamma) : omega_sliding(gamma);
  const Mat3 c = pwm_jacobian(gamma);
  CovMatrix3 out;
  out.mode = mode;
  out.entries = mat3_mul_transpose(mat3_mul(c, omega.entries), c);
  // enforce exact symmetry against rounding in the sandwich product
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double v = 0.5 * (out.entries[i][j] + out.entries[j][i]);
      out.entries[i][j] = v;
      out.entries[j][i] = v;
    }
  }
  return out;
}

std::array<double, 3> qt_vector(double gamma, double T) {
  if (!(T > 1.0)) throw std::domain_error("qt_vector: T must exceed 1");
  const double ct = -std::log1p(-1.0 / T);
  const double lc = std::log(ct);
  if (std::fabs(gamma) < kGammaEps) {
    // limits (log^2 c_T / 2, -log c_T, 1) with first-order corrections
    const double d0 = 0.5 * lc * lc * (1.0 - gamma * lc / 1.5);
    const double d1 = -lc * (1.0 - 0.5 * gamma * lc);
    return {d0, d1, 1.0};
  }
  const double ctg = std::exp(-gamma * lc);  // c_T^-gamma
  const double d0 = (1.0 - ctg * (gamma * lc + 1.0)) / (gamma * gamma);
  const double d1 = std::expm1(-gamma * lc) / gamma;
  return {d0, d1, 1.0};
}

double rl_variance(double gamma, double T, BlockScheme mode) {
  const CovMatrix3 s = sigma_matrix(gamma, mode);
  const std::array<double, 3> q = qt_vector(gamma, T);
  double v = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v += q[i] * s.entries[i][j] * q[j];
  return v;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  double lo = -40.0, hi = 40.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
    if (pdf <= 0.0) break;
    const double step = (cdf(x) - p) / pdf;
    if (x - step > lo && x - step < hi) x -= step;
  }
  return x;
}

Interval rl_confidence_interval(const GevFit& fit, double T, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("rl_confidence_interval: level must lie in (0, 1)");
  }
  const double center = return_level(fit.params, T);
  const BlockScheme mode =
      fit.scheme == BlockScheme::disjoint ? BlockScheme::disjoint : BlockScheme::sliding;
  const double var = rl_variance(fit.params.gamma, T, mode);
  const double u = normal_quantile(0.5 + 0.5 * level);
  const double ratio = static_cast<double>(fit.r) / static_cast<double>(fit.n);
  const double half = fit.params.sigma * std::sqrt(ratio * var) * u;
  return Interval{center - half, center + half};
}

std::array<double, 3> sym3_eigenvalues(const Mat3& a) {
  // closed-form symmetric 3x3 eigenvalues (trigonometric method)
  const double p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
  const double tr = a[0][0] + a[1][1] + a[2][2];
  if (p1 == 0.0) {
    std::array<double, 3> d{a[0][0], a[1][1], a[2][2]};
    std::sort(d.begin(), d.end());
    return d;
  }
  const double q = tr / 3.0;
  const double p2 = (a[0][0] - q) * (a[0][0] - q) + (a[1][1] - q) * (a[1][1] - q) +
                    (a[2][2] - q) * (a[2][2] - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  Mat3 b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = (a[i][j] - (i == j ? q : 0.0)) / p;
  const double detb =
      b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
      b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
      b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  double r = detb / 2.0;
  r = std::clamp(r, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
  const double e2 = tr - e1 - e3;
  std::array<double, 3> d{e1, e2, e3};
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace blockmax
