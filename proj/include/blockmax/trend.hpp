#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blockmax/asympt.hpp"
#include "blockmax/pwm.hpp"

namespace blockmax {

// Median of the pairwise slopes (M_j - M_i)/(x_j - x_i) over i < j with
// distinct covariate values; even counts average the two middle slopes.
double sen_slope(std::span<const double> x, std::span<const double> m);

// Subtract slope * covariate[season] from every observation of that season;
// daily must hold length(covariate) seasons of r values each.
std::vector<double> detrend(std::span<const double> daily, std::span<const double> covariate,
                            std::size_t r, double slope);

// Within-season parameters whose r-fold maximum is GEV(b + c x_t, a, gamma):
// shape unchanged, scale a / r^gamma, location shifted down by the
// max-stability correction.
GevParams bootstrap_tilde_params(const GevParams& theta, double slope, double x_t,
                                 std::size_t r);

enum class BootstrapMode { disjoint, sliding };  // sliding fits circular blocks

struct TrendedFit {
  double slope = 0.0;            // data units per covariate unit
  GevFit base;                   // fit of the detrended series
  std::vector<double> covariate; // one value per season
};

// Trend estimation on disjoint season maxima, detrending, block fit per mode.
TrendedFit fit_trended(std::span<const double> daily, std::span<const double> covariate,
                       std::size_t r, BootstrapMode mode);

struct SymmetricCi {
  double lo = 0.0;
  double hi = 0.0;
  bool attained = true;  // false when the requested level was not reachable
};

// Smallest eps >= 0 with Fhat(center+eps) - Fhat(center-eps) >= level for the
// empirical cdf of boot; searched by bisection on [0, range(boot)].
SymmetricCi symmetric_percentile_ci(std::span<const double> boot, double center, double level);

struct BootstrapOptions {
  std::size_t B = 1000;
  BootstrapMode mode = BootstrapMode::disjoint;
  bool stationary = false;  // slope fixed to zero, no detrending
  double T = 100.0;         // return-level horizon
  double level = 0.95;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct BootstrapResult {
  TrendedFit fit;
  double rl_hat = 0.0;  // return level of the detrended fit

  std::vector<double> slope_reps, location_reps, scale_reps, shape_reps, rl_reps;

  double slope_se = 0.0, location_se = 0.0, scale_se = 0.0, shape_se = 0.0, rl_se = 0.0;
  Interval slope_ci, location_ci, scale_ci, shape_ci;  // percentile intervals
  SymmetricCi rl_ci;                                   // symmetric around rl_hat

  std::size_t failures = 0;  // replicates whose refit left the PWM domain
};

// Parametric bootstrap of the trended location model: simulate iid
// within-season samples from the tilde parameters, re-estimate slope (unless
// stationary), detrend, refit per mode, and collect the replicate estimates.
BootstrapResult parametric_bootstrap(std::span<const double> daily,
                                     std::span<const double> covariate, std::size_t r,
                                     const BootstrapOptions& opt);

}  // namespace blockmax
