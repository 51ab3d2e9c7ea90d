#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "blockmax/blocks.hpp"
#include "blockmax/gev.hpp"

namespace blockmax {

enum class DepModel { iid, ar, car, armax };
enum class MarginFamily { gpd, hw, rhw, hw0, stein };
enum class SamplingScheme { s1, s2 };

const char* to_string(DepModel m);
const char* to_string(MarginFamily m);
const char* to_string(SamplingScheme s);

// One synthetic data-generating process: serial-dependence model x marginal
// family x sampling scheme, plus (n, r, seed).
struct SimConfig {
  DepModel model = DepModel::iid;
  double dep = 0.0;  // AR/CAR coefficient or ARMAX parameter; ignored for iid
  MarginFamily margin = MarginFamily::gpd;
  double gamma = 0.0;  // shape of the marginal family (sign fixed by family)
  double shift = 0.0;  // added to every simulated value
  SamplingScheme scheme = SamplingScheme::s1;
  std::size_t n = 0;
  std::size_t r = 1;
  std::uint64_t seed = 1;
};

void validate(const SimConfig& c);

// Quantile of the marginal family at survivor s = 1 - p (shift not applied).
// day is the 0-based position inside the season; only the stein family uses it.
double margin_quantile_from_survivor(const SimConfig& c, std::size_t day, double s);

// One season of length c.r (scheme S2) drawn from the generator stream
// derived from (c.seed, season_index); independent across indices.
std::vector<double> simulate_season(const SimConfig& c, std::uint64_t season_index);

// Full series: S1 runs one stationary stream of length n; S2 concatenates
// ceil(n/r) independently seeded seasons, truncated to n.
std::vector<double> simulate_series(const SimConfig& c);

// The temperature-like test bed with a smooth inner-seasonal location profile
// (90-day seasons); values are returned in degrees Celsius.
std::vector<double> stein_seasonal_series(DepModel model, double dep, std::size_t seasons,
                                          std::uint64_t seed);

// Location parameter used by the stationary comparator of the same test bed.
double stein_stationary_location();

struct PopulationRl {
  double value = 0.0;
  double std_error = 0.0;
};

// Empirical (1 - 1/T)-quantile of N independently simulated disjoint block
// maxima, with a bootstrap standard error.
PopulationRl population_return_level(const SimConfig& c, double T, std::size_t N);

// maxima of N independent blocks of length c.r (building block of the above)
std::vector<double> population_block_maxima(const SimConfig& c, std::size_t N);

enum class Estimator { disjoint, sliding, sliding_bias_reduced };
const char* to_string(Estimator e);

struct McOptions {
  std::size_t reps = 1000;
  std::vector<double> rl_horizons = {50.0, 100.0};
  bool shape_target = true;
  std::vector<Estimator> estimators = {Estimator::disjoint, Estimator::sliding};
  std::uint64_t seed = 1;
  std::size_t population_n = 200000;  // blocks used for population return levels
  int threads = 1;
};

struct McCell {
  Estimator estimator;
  std::string target;  // "shape" or "rl50", "rl100", ...
  double target_value = 0.0;
  double bias = 0.0;
  double variance = 0.0;
  double mse = 0.0;      // bias^2 + variance
  double rel_eff = 0.0;  // MSE(disjoint) / MSE(this estimator)
  std::size_t reps_used = 0;
  std::size_t failures = 0;
};

struct McResult {
  SimConfig config;
  std::vector<McCell> cells;
};

// Monte Carlo comparison of the block-maxima estimators over a configuration
// grid; deterministic for a fixed master seed.
std::vector<McResult> mc_study(const std::vector<SimConfig>& grid, const McOptions& opt);

void write_mc_csv(const std::vector<McResult>& results, std::ostream& os);

}  // namespace blockmax
