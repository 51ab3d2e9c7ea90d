#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "blockmax/rng.hpp"

namespace blockmax {

// Location / scale / shape of a generalized extreme value law. The support is
// {x : 1 + gamma (x - mu) / sigma > 0}; cdf evaluations off-support clamp to
// {0, 1} so fitted laws can be evaluated on raw data without guards.
struct GevParams {
  double mu = 0.0;
  double sigma = 1.0;
  double gamma = 0.0;
};

void validate(const GevParams& p);

// First three probability weighted moments beta_k = E[M G^k(M)].
struct PwmTriple {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
};

// Domain of the PWM -> GEV inversion: 2 b1 - b0 > 0, 3 b2 - 2 b1 > 0,
// -b0 + 4 b1 - 3 b2 > 0 (all strict).
bool in_pwm_domain(const PwmTriple& b);

// Scale / location sequences a_r, b_r that normalize block maxima.
struct NormalizingSequences {
  std::function<double(double)> a;
  std::function<double(double)> b;
};

// For iid GPD(gamma) margins: a_r = r^gamma, b_r = (r^gamma - 1)/gamma
// (log r at gamma = 0).
NormalizingSequences gpd_normalizing(double gamma);

double gev_cdf(const GevParams& p, double x);
double gev_quantile(const GevParams& p, double prob);
std::vector<double> gev_sample(const GevParams& p, std::size_t n, Rng& rng);

// Theoretical PWMs of a GEV law; requires gamma < 1.
PwmTriple gev_pwm(const GevParams& p);

// The three shape-dependent coefficients of the PWM equation system:
//   ratio(gamma)    = (3 b2 - b0)/(2 b1 - b0) as a function of the shape,
//   scale(gamma)    multiplies (2 b1 - b0) to give the scale,
//   location(gamma) satisfies mu = b0 + sigma * location(gamma).
struct PwmGevCoeffs {
  double ratio;
  double scale;
  double location;
};
PwmGevCoeffs pwm_gev_coeffs(double gamma);

// Inverse of the ratio coefficient; bracketed on gamma in [-10, 0.999] and
// solved to |ratio(gamma) - t| <= 1e-12.
double shape_from_pwm_ratio(double t);

// PWM -> GEV inversion (successively shape, scale, location). Throws
// FitDomainError outside the PWM domain.
GevParams gev_from_pwm(const PwmTriple& beta);

// Bivariate extreme value law with GEV(0,1,gamma) margins and dependence
// parameter dep: dep = 0 is complete dependence, dep >= 1 independence.
double bivariate_gev_cdf(double gamma, double dep, double x, double y);

// Standard generalized Pareto with unit scale.
double gpd_cdf(double gamma, double x);
double gpd_quantile(double gamma, double p);
// Quantile expressed through the survivor s = 1 - p; avoids cancellation deep
// in the tail.
double gpd_quantile_from_survivor(double gamma, double s);

// (1 - 1/T)-quantile of the fitted law: sigma (c_T^-gamma - 1)/gamma + mu with
// c_T = -log(1 - 1/T).
double return_level(const GevParams& p, double T);

}  // namespace blockmax
