#include "blockmax/trend.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "blockmax/rng.hpp"

namespace blockmax {

double sen_slope(std::span<const double> x, std::span<const double> m) {
  if (x.size() != m.size()) throw std::invalid_argument("sen_slope: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("sen_slope: need at least 2 points");
  std::vector<double> slopes;
  slopes.reserve(x.size() * (x.size() - 1) / 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[i] == x[j]) continue;
      slopes.push_back((m[j] - m[i]) / (x[j] - x[i]));
    }
  }
  if (slopes.empty()) {
    throw std::invalid_argument("sen_slope: all covariate values coincide");
  }
  std::sort(slopes.begin(), slopes.end());
  const std::size_t k = slopes.size();
  if (k % 2 == 1) return slopes[k / 2];
  return 0.5 * (slopes[k / 2 - 1] + slopes[k / 2]);
}

std::vector<double> detrend(std::span<const double> daily, std::span<const double> covariate,
                            std::size_t r, double slope) {
  if (r < 1 || daily.size() != covariate.size() * r) {
    throw std::invalid_argument("detrend: daily length must equal seasons * r");
  }
  std::vector<double> out(daily.begin(), daily.end());
  for (std::size_t j = 0; j < covariate.size(); ++j) {
    const double shift = slope * covariate[j];
    for (std::size_t t = 0; t < r; ++t) out[j * r + t] -= shift;
  }
  return out;
}

GevParams bootstrap_tilde_params(const GevParams& theta, double slope, double x_t,
                                 std::size_t r) {
  validate(theta);
  if (r < 1) throw std::invalid_argument("bootstrap_tilde_params: r must be positive");
  const double g = theta.gamma;
  const double rd = static_cast<double>(r);
  GevParams tilde;
  tilde.gamma = g;
  if (std::fabs(g) < 1e-8) {
    tilde.sigma = theta.sigma;
    tilde.mu = theta.mu + slope * x_t - theta.sigma * std::log(rd);
    return tilde;
  }
  const double rg = std::pow(rd, g);
  tilde.sigma = theta.sigma / rg;
  tilde.mu = theta.mu + slope * x_t - theta.sigma * (rg - 1.0) / (rg * g);
  return tilde;
}

TrendedFit fit_trended(std::span<const double> daily, std::span<const double> covariate,
                       std::size_t r, BootstrapMode mode) {
  const BlockMaximaSample season_max = disjoint_maxima(daily, r);
  if (season_max.values.size() != covariate.size()) {
    throw std::invalid_argument("fit_trended: covariate length must equal season count");
  }
  TrendedFit out;
  out.slope = sen_slope(covariate, season_max.values);
  out.covariate.assign(covariate.begin(), covariate.end());
  const std::vector<double> detrended = detrend(daily, covariate, r, out.slope);
  out.base = mode == BootstrapMode::disjoint ? fit_disjoint(detrended, r)
                                             : fit_circular(detrended, r);
  return out;
}

SymmetricCi symmetric_percentile_ci(std::span<const double> boot, double center, double level) {
  if (boot.empty()) throw std::invalid_argument("symmetric_percentile_ci: empty sample");
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("symmetric_percentile_ci: level must lie in (0, 1)");
  }
  std::vector<double> sorted(boot.begin(), boot.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  // mass of (center - eps, center + eps]
  auto covered = [&](double eps) {
    const auto hi = std::upper_bound(sorted.begin(), sorted.end(), center + eps);
    const auto lo = std::upper_bound(sorted.begin(), sorted.end(), center - eps);
    return static_cast<double>(hi - lo) / n;
  };
  const double range = sorted.back() - sorted.front();
  if (range == 0.0) {
    const bool ok = covered(0.0) >= level;
    return SymmetricCi{center, center, ok || sorted.front() <= center};
  }
  if (covered(range) < level) {
    return SymmetricCi{sorted.front(), sorted.back(), false};
  }
  double lo = 0.0, hi = range;
  const double resolution = 1e-6 * range;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (covered(mid) >= level) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return SymmetricCi{center - hi, center + hi, true};
}

namespace {

Interval percentile_ci(std::vector<double> values, double level) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  const double alpha = 1.0 - level;
  auto pick = [&](double p) {
    std::size_t idx = static_cast<std::size_t>(std::ceil(p * n));
    if (idx < 1) idx = 1;
    if (idx > values.size()) idx = values.size();
    return values[idx - 1];
  };
  return Interval{pick(alpha / 2.0), pick(1.0 - alpha / 2.0)};
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double m2 = 0.0;
  for (double x : v) m2 += (x - mean) * (x - mean);
  return std::sqrt(m2 / static_cast<double>(v.size() - 1));
}

}  // namespace

BootstrapResult parametric_bootstrap(std::span<const double> daily,
                                     std::span<const double> covariate, std::size_t r,
                                     const BootstrapOptions& opt) {
  if (opt.B < 100) throw std::invalid_argument("parametric_bootstrap: need B >= 100");
  const std::size_t seasons = covariate.size();
  if (seasons < 2 || daily.size() != seasons * r) {
    throw std::invalid_argument("parametric_bootstrap: daily must hold seasons * r values");
  }

  BootstrapResult out;
  if (opt.stationary) {
    out.fit.slope = 0.0;
    out.fit.covariate.assign(covariate.begin(), covariate.end());
    out.fit.base = opt.mode == BootstrapMode::disjoint ? fit_disjoint(daily, r)
                                                       : fit_circular(daily, r);
  } else {
    out.fit = fit_trended(daily, covariate, r, opt.mode);
  }
  out.rl_hat = return_level(out.fit.base.params, opt.T);

  const GevParams theta = out.fit.base.params;
  const double c_hat = out.fit.slope;

  // per-season generating parameters
  std::vector<GevParams> tilde(seasons);
  for (std::size_t t = 0; t < seasons; ++t) {
    tilde[t] = bootstrap_tilde_params(theta, opt.stationary ? 0.0 : c_hat, covariate[t], r);
  }

  struct Rep {
    double slope, location, scale, shape, rl;
    bool ok;
  };
  std::vector<Rep> reps(opt.B);

  std::atomic<std::size_t> next{0};
  auto worker = [&](std::size_t b) {
    Rng rng(derive_seed(opt.seed, 0x62535452, b));
    std::vector<double> sim(seasons * r);
    for (std::size_t t = 0; t < seasons; ++t) {
      for (std::size_t i = 0; i < r; ++i) {
        sim[t * r + i] = gev_quantile(tilde[t], rng.uniform());
      }
    }
    Rep rep{0.0, 0.0, 0.0, 0.0, 0.0, true};
    try {
      std::vector<double> detrended;
      if (opt.stationary) {
        rep.slope = 0.0;
        detrended.assign(sim.begin(), sim.end());
      } else {
        const BlockMaximaSample mx = disjoint_maxima(sim, r);
        rep.slope = sen_slope(covariate, mx.values);
        detrended = detrend(sim, covariate, r, rep.slope);
      }
      const GevFit fit = opt.mode == BootstrapMode::disjoint ? fit_disjoint(detrended, r)
                                                             : fit_circular(detrended, r);
      rep.location = fit.params.mu;
      rep.scale = fit.params.sigma;
      rep.shape = fit.params.gamma;
      rep.rl = return_level(fit.params, opt.T);
    } catch (const std::exception&) {
      rep.ok = false;
    }
    reps[b] = rep;
  };

  if (opt.threads <= 1) {
    for (std::size_t b = 0; b < opt.B; ++b) worker(b);
  } else {
    std::vector<std::thread> pool;
    const int nthreads = std::min<std::size_t>(opt.threads, opt.B);
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&]() {
        for (;;) {
          const std::size_t b = next.fetch_add(1);
          if (b >= opt.B) return;
          worker(b);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (const Rep& rep : reps) {
    if (!rep.ok) {
      ++out.failures;
      continue;
    }
    out.slope_reps.push_back(rep.slope);
    out.location_reps.push_back(rep.location);
    out.scale_reps.push_back(rep.scale);
    out.shape_reps.push_back(rep.shape);
    out.rl_reps.push_back(rep.rl);
  }
  if (out.rl_reps.empty()) {
    throw std::runtime_error("parametric_bootstrap: every replicate failed to refit");
  }

  out.slope_se = stddev(out.slope_reps);
  out.location_se = stddev(out.location_reps);
  out.scale_se = stddev(out.scale_reps);
  out.shape_se = stddev(out.shape_reps);
  out.rl_se = stddev(out.rl_reps);

  out.slope_ci = percentile_ci(out.slope_reps, opt.level);
  out.location_ci = percentile_ci(out.location_reps, opt.level);
  out.scale_ci = percentile_ci(out.scale_reps, opt.level);
  out.shape_ci = percentile_ci(out.shape_reps, opt.level);
  out.rl_ci = symmetric_percentile_ci(out.rl_reps, out.rl_hat, opt.level);
  return out;
}

}  // namespace blockmax
