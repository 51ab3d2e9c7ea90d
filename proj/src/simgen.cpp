#include "blockmax/simgen.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "blockmax/pwm.hpp"
#include "blockmax/rng.hpp"
#include "blockmax/special.hpp"

namespace blockmax {

const char* to_string(DepModel m) {
  switch (m) {
    case DepModel::iid: return "iid";
    case DepModel::ar: return "ar";
    case DepModel::car: return "car";
    case DepModel::armax: return "armax";
  }
  return "?";
}

const char* to_string(MarginFamily m) {
  switch (m) {
    case MarginFamily::gpd: return "gpd";
    case MarginFamily::hw: return "hw";
    case MarginFamily::rhw: return "rhw";
    case MarginFamily::hw0: return "hw0";
    case MarginFamily::stein: return "stein";
  }
  return "?";
}

const char* to_string(SamplingScheme s) {
  return s == SamplingScheme::s1 ? "s1" : "s2";
}

const char* to_string(Estimator e) {
  switch (e) {
    case Estimator::disjoint: return "disjoint";
    case Estimator::sliding: return "sliding";
    case Estimator::sliding_bias_reduced: return "sliding_bias_reduced";
  }
  return "?";
}

void validate(const SimConfig& c) {
  switch (c.model) {
    case DepModel::iid:
      break;
    case DepModel::ar:
      if (!(std::fabs(c.dep) < 1.0)) throw std::invalid_argument("ar: |phi| must be below 1");
      break;
    case DepModel::car:
      if (!(c.dep > 0.0 && c.dep < 1.0)) throw std::invalid_argument("car: phi must lie in (0, 1)");
      break;
    case DepModel::armax:
      if (!(c.dep >= 0.0 && c.dep < 1.0)) throw std::invalid_argument("armax: b must lie in [0, 1)");
      break;
  }
  switch (c.margin) {
    case MarginFamily::gpd:
      break;
    case MarginFamily::hw:
      if (!(c.gamma > 0.0)) throw std::invalid_argument("hw margin needs gamma > 0");
      break;
    case MarginFamily::rhw:
      if (!(c.gamma < 0.0)) throw std::invalid_argument("rhw margin needs gamma < 0");
      break;
    case MarginFamily::hw0:
      break;
    case MarginFamily::stein:
      if (c.r != 90) throw std::invalid_argument("stein margin needs 90-day seasons");
      if (c.scheme != SamplingScheme::s2) {
        throw std::invalid_argument("stein margin is defined for concatenated seasons only");
      }
      break;
  }
  if (c.n < 1) throw std::invalid_argument("series length must be positive");
  if (c.r < 1) throw std::invalid_argument("block size must be positive");
}

namespace {

constexpr double kSteinScale5 = 37.0697458059535032;  // (7e7)^(1/5)

// Hall-Welsh survivor inversion: solve q^2 (1 + q) = 2 s for q in (0, 1],
// then x = q^{-2 gamma}.
double hw_from_survivor(double gamma_pos, double s) {
  const double target = 2.0 * s;
  double lo = 0.0, hi = 1.0;
  double q = std::min(1.0, std::sqrt(target));  // ignore the cubic for the start
  for (int it = 0; it < 80; ++it) {
    const double f = q * q * (1.0 + q) - target;
    if (f > 0.0) {
      hi = q;
    } else {
      lo = q;
    }
    const double d = q * (2.0 + 3.0 * q);
    double qn = d > 0.0 ? q - f / d : 0.5 * (lo + hi);
    if (!(qn > lo && qn < hi)) qn = 0.5 * (lo + hi);
    if (std::fabs(qn - q) < 1e-16 * (1.0 + q)) {
      q = qn;
      break;
    }
    q = qn;
  }
  return std::exp(-2.0 * gamma_pos * std::log(q));
}

double stein_location(std::size_t day) {
  // day 0 corresponds to day-of-year 152
  const double i = 152.0 + static_cast<double>(day);
  const double u = 111.0 - (i - 200.0) * (i - 200.0) / 400.0;
  return u - kSteinScale5;
}

double fahrenheit_to_celsius(double f) { return (f - 32.0) * 5.0 / 9.0; }

struct LatentState {
  DepModel model;
  double dep;
  double y = 0.0;
};

LatentState latent_init(DepModel model, double dep, Rng& rng) {
  LatentState st{model, dep, 0.0};
  switch (model) {
    case DepModel::iid:
      break;
    case DepModel::ar:
      st.y = rng.normal() * std::sqrt(1.0 / (1.0 - dep * dep));
      break;
    case DepModel::car:
      st.y = rng.cauchy() / (1.0 - dep);
      break;
    case DepModel::armax:
      st.y = rng.frechet();
      break;
  }
  return st;
}

// advance the latent chain one step and return the survivor 1 - F_Y(Y_t)
double latent_step_survivor(LatentState& st, Rng& rng) {
  switch (st.model) {
    case DepModel::iid:
      return rng.uniform();
    case DepModel::ar: {
      st.y = st.dep * st.y + rng.normal();
      const double z = st.y * std::sqrt(1.0 - st.dep * st.dep);
      return 0.5 * std::erfc(z / std::sqrt(2.0));
    }
    case DepModel::car: {
      st.y = st.dep * st.y + rng.cauchy();
      const double w = st.y * (1.0 - st.dep);
      if (w > 0.0) return std::atan(1.0 / w) / kPi;
      return 0.5 + std::atan(-w) / kPi;
    }
    case DepModel::armax: {
      st.y = std::max(st.dep * st.y, (1.0 - st.dep) * rng.frechet());
      return -std::expm1(-1.0 / st.y);
    }
  }
  return 0.5;
}

std::vector<double> simulate_block(const SimConfig& c, std::uint64_t block_index,
                                   std::size_t length) {
  Rng rng(derive_seed(c.seed, block_index));
  LatentState st = latent_init(c.model, c.dep, rng);
  std::vector<double> out(length);
  for (std::size_t t = 0; t < length; ++t) {
    const double s = latent_step_survivor(st, rng);
    out[t] = margin_quantile_from_survivor(c, t % c.r, s) + c.shift;
  }
  return out;
}

}  // namespace

double margin_quantile_from_survivor(const SimConfig& c, std::size_t day, double s) {
  switch (c.margin) {
    case MarginFamily::gpd:
      return gpd_quantile_from_survivor(c.gamma, s);
    case MarginFamily::hw:
      return hw_from_survivor(c.gamma, s);
    case MarginFamily::rhw:
      return -1.0 / hw_from_survivor(-c.gamma, s);
    case MarginFamily::hw0: {
      const double ls = std::log(s);
      return -ls * (1.0 + std::sqrt(s));
    }
    case MarginFamily::stein: {
      // GPD(u_i - (7e7)^{1/5}, (7e7)^{1/5}/5, -0.2) in Fahrenheit, then Celsius
      const double x = stein_location(day) + (kSteinScale5 / 5.0) *
                                                 gpd_quantile_from_survivor(-0.2, s);
      return fahrenheit_to_celsius(x);
    }
  }
  throw std::logic_error("unknown margin family");
}

std::vector<double> simulate_season(const SimConfig& c, std::uint64_t season_index) {
  validate(c);
  return simulate_block(c, season_index, c.r);
}

std::vector<double> simulate_series(const SimConfig& c) {
  validate(c);
  if (c.scheme == SamplingScheme::s1) {
    return simulate_block(c, 0, c.n);
  }
  std::vector<double> out;
  out.reserve(c.n);
  const std::size_t seasons = (c.n + c.r - 1) / c.r;
  for (std::size_t j = 0; j < seasons; ++j) {
    const std::vector<double> season = simulate_block(c, j, c.r);
    const std::size_t take = std::min(c.r, c.n - out.size());
    out.insert(out.end(), season.begin(), season.begin() + take);
  }
  return out;
}

std::vector<double> stein_seasonal_series(DepModel model, double dep, std::size_t seasons,
                                          std::uint64_t seed) {
  SimConfig c;
  c.model = model;
  c.dep = dep;
  c.margin = MarginFamily::stein;
  c.gamma = -0.2;
  c.scheme = SamplingScheme::s2;
  c.r = 90;
  c.n = seasons * 90;
  c.seed = seed;
  return simulate_series(c);
}

double stein_stationary_location() {
  double sum = 0.0;
  for (std::size_t day = 0; day < 90; ++day) sum += stein_location(day);
  return sum / 90.0;
}

std::vector<double> population_block_maxima(const SimConfig& c, std::size_t N) {
  validate(c);
  std::vector<double> maxima(N);
  for (std::size_t j = 0; j < N; ++j) {
    const std::vector<double> block = simulate_block(c, j, c.r);
    maxima[j] = *std::max_element(block.begin(), block.end());
  }
  return maxima;
}

namespace {

double empirical_quantile(std::vector<double>& sorted_or_not, double p, bool sorted) {
  if (!sorted) std::sort(sorted_or_not.begin(), sorted_or_not.end());
  const std::size_t n = sorted_or_not.size();
  std::size_t idx = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  if (idx < 1) idx = 1;
  if (idx > n) idx = n;
  return sorted_or_not[idx - 1];
}

}  // namespace

PopulationRl population_return_level(const SimConfig& c, double T, std::size_t N) {
  if (!(T > 1.0)) throw std::domain_error("population_return_level: T must exceed 1");
  std::vector<double> maxima = population_block_maxima(c, N);
  std::sort(maxima.begin(), maxima.end());
  const double p = 1.0 - 1.0 / T;
  PopulationRl out;
  out.value = empirical_quantile(maxima, p, true);

  // bootstrap standard error of the quantile
  constexpr std::size_t kBoot = 200;
  Rng rng(derive_seed(c.seed, 0x626f6f74, N));
  std::vector<double> resample(maxima.size());
  double mean = 0.0, m2 = 0.0;
  for (std::size_t b = 0; b < kBoot; ++b) {
    for (std::size_t i = 0; i < maxima.size(); ++i) {
      const std::size_t k =
          std::min<std::size_t>(maxima.size() - 1,
                                static_cast<std::size_t>(rng.uniform() * maxima.size()));
      resample[i] = maxima[k];
    }
    const double q = empirical_quantile(resample, p, false);
    const double delta = q - mean;
    mean += delta / static_cast<double>(b + 1);
    m2 += delta * (q - mean);
  }
  out.std_error = std::sqrt(m2 / static_cast<double>(kBoot - 1));
  return out;
}

namespace {

struct Welford {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

void run_parallel(std::size_t tasks, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || tasks <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int nthreads = std::min<int>(threads, static_cast<int>(tasks));
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<McResult> mc_study(const std::vector<SimConfig>& grid, const McOptions& opt) {
  if (opt.reps < 2) throw std::invalid_argument("mc_study: need at least 2 replications");
  std::vector<McResult> results;
  results.reserve(grid.size());

  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    SimConfig base = grid[ci];
    validate(base);

    struct Target {
      std::string name;
      double value;
      double horizon;  // 0 for the shape target
    };
    std::vector<Target> targets;
    if (opt.shape_target) targets.push_back({"shape", base.gamma, 0.0});
    for (double T : opt.rl_horizons) {
      SimConfig pop = base;
      pop.seed = derive_seed(opt.seed, 0x706f70, ci);
      const PopulationRl rl = population_return_level(pop, T, opt.population_n);
      char name[32];
      std::snprintf(name, sizeof(name), "rl%g", T);
      targets.push_back({name, rl.value, T});
    }

    const std::size_t ne = opt.estimators.size();
    const std::size_t nt = targets.size();
    // per replication and estimator: the fitted (gamma, rl...) or NaN on failure
    std::vector<double> estimates(opt.reps * ne * nt,
                                  std::numeric_limits<double>::quiet_NaN());
    std::vector<std::uint8_t> failed(opt.reps * ne, 0);

    run_parallel(opt.reps, opt.threads, [&](std::size_t rep) {
      SimConfig c = base;
      c.seed = derive_seed(opt.seed, ci, rep);
      const std::vector<double> series = simulate_series(c);
      for (std::size_t e = 0; e < ne; ++e) {
        GevFit fit;
        try {
          switch (opt.estimators[e]) {
            case Estimator::disjoint:
              fit = fit_disjoint(series, c.r);
              break;
            case Estimator::sliding:
              fit = fit_sliding(series, c.r);
              break;
            case Estimator::sliding_bias_reduced:
              fit = fit_sliding_bias_reduced(series, c.r);
              break;
          }
        } catch (const std::exception&) {
          failed[rep * ne + e] = 1;
          continue;
        }
        for (std::size_t t = 0; t < nt; ++t) {
          const double value = targets[t].horizon == 0.0
                                   ? fit.params.gamma
                                   : return_level(fit.params, targets[t].horizon);
          estimates[(rep * ne + e) * nt + t] = value;
        }
      }
    });

    McResult res;
    res.config = base;
    std::vector<double> mse_disjoint(nt, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t e = 0; e < ne; ++e) {
      for (std::size_t t = 0; t < nt; ++t) {
        Welford acc;
        std::size_t failures = 0;
        for (std::size_t rep = 0; rep < opt.reps; ++rep) {
          if (failed[rep * ne + e]) {
            ++failures;
            continue;
          }
          acc.add(estimates[(rep * ne + e) * nt + t]);
        }
        McCell cell;
        cell.estimator = opt.estimators[e];
        cell.target = targets[t].name;
        cell.target_value = targets[t].value;
        cell.bias = acc.mean - targets[t].value;
        cell.variance = acc.variance();
        cell.mse = cell.bias * cell.bias + cell.variance;
        cell.reps_used = acc.count;
        cell.failures = failures;
        if (opt.estimators[e] == Estimator::disjoint) mse_disjoint[t] = cell.mse;
        res.cells.push_back(cell);
      }
    }
    for (std::size_t e = 0; e < ne; ++e) {
      for (std::size_t t = 0; t < nt; ++t) {
        McCell& cell = res.cells[e * nt + t];
        cell.rel_eff = mse_disjoint[t] / cell.mse;
      }
    }
    results.push_back(std::move(res));
  }
  return results;
}

void write_mc_csv(const std::vector<McResult>& results, std::ostream& os) {
  os << "model,dep,margin,gamma,scheme,n,r,estimator,target,target_value,bias,variance,mse,"
        "rel_eff,reps_used,failures\n";
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  // configuration identity columns print compactly; results keep full precision
  auto id_num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return std::string(buf);
  };
  for (const McResult& res : results) {
    for (const McCell& cell : res.cells) {
      os << to_string(res.config.model) << ',' << id_num(res.config.dep) << ','
         << to_string(res.config.margin) << ',' << id_num(res.config.gamma) << ','
         << to_string(res.config.scheme) << ',' << res.config.n << ',' << res.config.r << ','
         << to_string(cell.estimator) << ',' << cell.target << ',' << num(cell.target_value)
         << ',' << num(cell.bias) << ',' << num(cell.variance) << ',' << num(cell.mse) << ','
         << num(cell.rel_eff) << ',' << cell.reps_used << ',' << cell.failures << '\n';
    }
  }
}

}  // namespace blockmax
