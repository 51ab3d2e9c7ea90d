#include "blockmax/gev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "blockmax/special.hpp"

namespace blockmax {

namespace {

constexpr double kGammaEps = 1e-8;  // below this, formulas use their gamma=0 limit

}  // namespace

void validate(const GevParams& p) {
  if (!(p.sigma > 0.0)) throw std::domain_error("GevParams: sigma must be positive");
  if (!std::isfinite(p.mu) || !std::isfinite(p.sigma) || !std::isfinite(p.gamma)) {
    throw std::domain_error("GevParams: parameters must be finite");
  }
}

bool in_pwm_domain(const PwmTriple& b) {
  return (2.0 * b.beta1 - b.beta0 > 0.0) && (3.0 * b.beta2 - 2.0 * b.beta1 > 0.0) &&
         (-b.beta0 + 4.0 * b.beta1 - 3.0 * b.beta2 > 0.0);
}

NormalizingSequences gpd_normalizing(double gamma) {
  NormalizingSequences seq;
  seq.a = [gamma](double r) { return std::pow(r, gamma); };
  seq.b = [gamma](double r) {
    const double lr = std::log(r);
    if (std::fabs(gamma) < kGammaEps) return lr * (1.0 + 0.5 * gamma * lr);
    return std::expm1(gamma * lr) / gamma;
  };
  return seq;
}

double gev_cdf(const GevParams& p, double x) {
  validate(p);
  const double z = (x - p.mu) / p.sigma;
  if (std::fabs(p.gamma) < kGammaEps) {
    return std::exp(-std::exp(-z));
  }
  const double t = 1.0 + p.gamma * z;
  if (t <= 0.0) return p.gamma > 0.0 ? 0.0 : 1.0;
  // (1 + gamma z)^(-1/gamma) = exp(-log1p(gamma z)/gamma)
  return std::exp(-std::exp(-std::log1p(p.gamma * z) / p.gamma));
}

double gev_quantile(const GevParams& p, double prob) {
  validate(p);
  if (!(prob > 0.0 && prob < 1.0)) {
    throw std::domain_error("gev_quantile: probability must lie in (0, 1)");
  }
  const double c = -std::log(prob);  // (-log p)
  const double lc = std::log(c);
  double z;
  if (std::fabs(p.gamma) < kGammaEps) {
    z = -lc * (1.0 - 0.5 * p.gamma * lc);
  } else {
    z = std::expm1(-p.gamma * lc) / p.gamma;
  }
  return p.mu + p.sigma * z;
}

std::vector<double> gev_sample(const GevParams& p, std::size_t n, Rng& rng) {
  validate(p);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = gev_quantile(p, rng.uniform());
  return out;
}

PwmTriple gev_pwm(const GevParams& p) {
  validate(p);
  if (!(p.gamma < 1.0)) {
    throw std::domain_error("gev_pwm: moments do not exist for gamma >= 1");
  }
  const double g = p.gamma;
  PwmTriple out;
  double* b[3] = {&out.beta0, &out.beta1, &out.beta2};
  for (int k = 0; k < 3; ++k) {
    const double lk = std::log(static_cast<double>(k + 1));
    double core;  // ((k+1)^g Gamma(1-g) - 1)/g
    if (std::fabs(g) < kGammaEps) {
      const double lead = lk + kEulerGamma;
      core = lead + 0.5 * g * (lead * lead + kZeta2);
    } else {
      core = std::expm1(g * lk + std::lgamma(1.0 - g)) / g;
    }
    *b[k] = (p.mu + p.sigma * core) / (k + 1);
  }
  return out;
}

PwmGevCoeffs pwm_gev_coeffs(double gamma) {
  if (!(gamma < 1.0)) {
    throw std::domain_error("pwm_gev_coeffs: gamma must be below 1");
  }
  constexpr double l2 = 0.69314718055994530941723212145817657;
  constexpr double l3 = 1.09861228866810969139524523692252570;
  PwmGevCoeffs c{};
  if (std::fabs(gamma) < kGammaEps) {
    c.ratio = l3 / l2 + 0.5 * gamma * (l3 / l2) * (l3 - l2);
    c.scale = (1.0 - 0.5 * gamma * l2) / l2;
    c.location = -kEulerGamma - 0.5 * gamma * (kEulerGamma * kEulerGamma + kZeta2);
    return c;
  }
  const double e2 = std::expm1(gamma * l2);
  const double e3 = std::expm1(gamma * l3);
  c.ratio = e3 / e2;
  c.scale = gamma / (std::tgamma(1.0 - gamma) * e2);
  c.location = -std::expm1(std::lgamma(1.0 - gamma)) / gamma;
  return c;
}

double shape_from_pwm_ratio(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::domain_error("shape_from_pwm_ratio: ratio must be positive and finite");
  }
  constexpr double lo_g = -10.0;
  constexpr double hi_g = 0.999;
  constexpr double tol = 1e-12;

  auto ratio = [](double g) { return pwm_gev_coeffs(g).ratio; };
  // stable derivative of the ratio coefficient; see pwm_gev_coeffs
  auto ratio_deriv = [](double g) {
    constexpr double l2 = 0.69314718055994530941723212145817657;
    constexpr double l3 = 1.09861228866810969139524523692252570;
    if (std::fabs(g) < kGammaEps) return (l3 / l2) * (l3 - l2) * 0.5;
    const double e2 = std::expm1(g * l2);
    const double e3 = std::expm1(g * l3);
    const double num = (l3 * expm1m(g * l2) - l2 * expm1m(g * l3)) + e2 * e3 * (l3 - l2);
    return num / (e2 * e2);
  };

  double lo = lo_g, hi = hi_g;
  double flo = ratio(lo) - t;
  double fhi = ratio(hi) - t;
  if (flo > 0.0 || fhi < 0.0) {
    throw std::domain_error("shape_from_pwm_ratio: ratio " + std::to_string(t) +
                            " is outside the attainable range on gamma in [-10, 0.999]");
  }
  double g = 0.0;
  if (ratio(g) - t > 0.0) {
    hi = g;
  } else {
    lo = g;
  }
  // safeguarded Newton seeded by bisection
  for (int it = 0; it < 200; ++it) {
    g = 0.5 * (lo + hi);
    double fg = ratio(g) - t;
    if (std::fabs(fg) <= tol) return g;
    if (fg > 0.0) {
      hi = g;
    } else {
      lo = g;
    }
    const double d = ratio_deriv(g);
    if (d > 0.0) {
      const double gn = g - fg / d;
      if (gn > lo && gn < hi) {
        const double fn = ratio(gn) - t;
        if (std::fabs(fn) <= tol) return gn;
        if (fn > 0.0) {
          hi = gn;
        } else {
          lo = gn;
        }
      }
    }
    if (hi - lo < 1e-15) break;
  }
  g = 0.5 * (lo + hi);
  if (std::fabs(ratio(g) - t) > 100 * tol) {
    throw std::runtime_error("shape_from_pwm_ratio: root refinement failed");
  }
  return g;
}

GevParams gev_from_pwm(const PwmTriple& beta) {
  const double d1 = 2.0 * beta.beta1 - beta.beta0;
  const double d2 = 3.0 * beta.beta2 - 2.0 * beta.beta1;
  const double d3 = -beta.beta0 + 4.0 * beta.beta1 - 3.0 * beta.beta2;
  if (!(d1 > 0.0)) throw std::domain_error("gev_from_pwm: 2 b1 - b0 must be positive");
  if (!(d2 > 0.0)) throw std::domain_error("gev_from_pwm: 3 b2 - 2 b1 must be positive");
  if (!(d3 > 0.0)) throw std::domain_error("gev_from_pwm: -b0 + 4 b1 - 3 b2 must be positive");

  const double t = (3.0 * beta.beta2 - beta.beta0) / d1;
  const double gamma = shape_from_pwm_ratio(t);
  const PwmGevCoeffs c = pwm_gev_coeffs(gamma);
  GevParams p;
  p.gamma = gamma;
  p.sigma = c.scale * d1;
  p.mu = beta.beta0 + p.sigma * c.location;
  return p;
}

double bivariate_gev_cdf(double gamma, double dep, double x, double y) {
  if (!(dep >= 0.0)) throw std::domain_error("bivariate_gev_cdf: dep must be >= 0");
  const GevParams std_law{0.0, 1.0, gamma};
  if (dep > 1.0) return gev_cdf(std_law, x) * gev_cdf(std_law, y);
  // u(z) = (1 + gamma z)^(-1/gamma), clamped off-support
  auto u = [gamma](double z) {
    if (std::isinf(z)) return z > 0 ? 0.0 : std::numeric_limits<double>::infinity();
    if (std::fabs(gamma) < kGammaEps) return std::exp(-z);
    const double t = 1.0 + gamma * z;
    if (t <= 0.0) {
      return gamma > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return std::exp(-std::log1p(gamma * z) / gamma);
  };
  const double ux = u(x);
  const double uy = u(y);
  const double umin = u(std::min(x, y));
  return std::exp(-(dep * ux + dep * uy + (1.0 - dep) * umin));
}

double gpd_cdf(double gamma, double x) {
  if (x < 0.0) return 0.0;
  if (std::fabs(gamma) < kGammaEps) return -std::expm1(-x);
  const double t = 1.0 + gamma * x;
  if (t <= 0.0) return 1.0;  // above the upper endpoint when gamma < 0
  return -std::expm1(-std::log1p(gamma * x) / gamma);
}

double gpd_quantile(double gamma, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("gpd_quantile: probability must lie in (0, 1)");
  }
  return gpd_quantile_from_survivor(gamma, 1.0 - p);
}

double gpd_quantile_from_survivor(double gamma, double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw std::domain_error("gpd_quantile_from_survivor: survivor must lie in (0, 1)");
  }
  const double ls = std::log(s);
  if (std::fabs(gamma) < kGammaEps) return -ls * (1.0 + 0.5 * gamma * ls);
  return std::expm1(-gamma * ls) / gamma;
}

double return_level(const GevParams& p, double T) {
  validate(p);
  if (!(T > 1.0)) throw std::domain_error("return_level: T must exceed 1");
  const double ct = -std::log1p(-1.0 / T);
  const double lc = std::log(ct);
  double z;
  if (std::fabs(p.gamma) < kGammaEps) {
    z = -lc * (1.0 - 0.5 * p.gamma * lc);
  } else {
    z = std::expm1(-p.gamma * lc) / p.gamma;
  }
  return p.mu + p.sigma * z;
}

}  // namespace blockmax
