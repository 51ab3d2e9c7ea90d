#include "blockmax/pwm.hpp"

#include <algorithm>
#include <vector>

namespace blockmax {

PwmTriple empirical_pwm(std::span<const double> sample) {
  const std::size_t m = sample.size();
  if (m < 3) throw std::invalid_argument("empirical_pwm: need at least 3 observations");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::stable_sort(sorted.begin(), sorted.end());

  const double dm = static_cast<double>(m);
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double v = sorted[i];
    const double w1 = static_cast<double>(i) / (dm - 1.0);
    const double w2 = static_cast<double>(i) * (static_cast<double>(i) - 1.0) /
                      ((dm - 1.0) * (dm - 2.0));
    s0 += v;
    s1 += w1 * v;
    s2 += w2 * v;
  }
  return PwmTriple{s0 / dm, s1 / dm, s2 / dm};
}

GevFit fit_pwm(std::span<const double> sample) {
  const PwmTriple b = empirical_pwm(sample);
  GevFit fit;
  fit.pwm = b;
  fit.n = sample.size();
  fit.r = 1;
  fit.scheme = BlockScheme::disjoint;
  try {
    fit.params = gev_from_pwm(b);
  } catch (const std::domain_error& e) {
    throw FitError(e.what(), b);
  }
  return fit;
}

namespace {

GevFit fit_blocks(const BlockMaximaSample& blocks, std::size_t n) {
  GevFit fit = fit_pwm(blocks.values);
  fit.n = n;
  fit.r = blocks.r;
  fit.scheme = blocks.scheme;
  return fit;
}

}  // namespace

GevFit fit_disjoint(std::span<const double> series, std::size_t r) {
  return fit_blocks(disjoint_maxima(series, r), series.size());
}

GevFit fit_sliding(std::span<const double> series, std::size_t r) {
  return fit_blocks(sliding_maxima(series, r), series.size());
}

GevFit fit_circular(std::span<const double> series, std::size_t r) {
  return fit_blocks(circular_sliding_maxima(series, r), series.size());
}

double tilde_beta1(std::span<const double> sl, std::size_t r) {
  const std::size_t m = sl.size();
  if (m < r + 1) {
    throw std::invalid_argument("tilde_beta1: no pair of non-overlapping windows exists");
  }
  double sum = 0.0;
  long long count = 0;
  for (std::size_t i = 0; i < m; ++i) {
    // j < i - r + 1 or j > i + r - 1  (0-based |i - j| >= r)
    long long le = 0;
    long long total = 0;
    for (std::size_t j = 0; j + r <= i; ++j) {
      ++total;
      if (sl[j] <= sl[i]) ++le;
    }
    for (std::size_t j = i + r; j < m; ++j) {
      ++total;
      if (sl[j] <= sl[i]) ++le;
    }
    sum += sl[i] * static_cast<double>(le);
    count += total;
  }
  return sum / static_cast<double>(count);
}

double tilde_beta2(std::span<const double> sl, std::size_t r) {
  const std::size_t m = sl.size();
  if (m < 2 * r + 1) {
    throw std::invalid_argument("tilde_beta2: no triple of pairwise non-overlapping windows exists");
  }
  double sum = 0.0;
  long long denom = 0;
  std::vector<std::size_t> adm;      // admissible j with M_j <= M_i, ascending
  std::vector<std::size_t> adm_all;  // all admissible j, ascending
  for (std::size_t i = 0; i < m; ++i) {
    adm.clear();
    adm_all.clear();
    for (std::size_t j = 0; j + r <= i; ++j) {
      adm_all.push_back(j);
      if (sl[j] <= sl[i]) adm.push_back(j);
    }
    for (std::size_t j = i + r; j < m; ++j) {
      adm_all.push_back(j);
      if (sl[j] <= sl[i]) adm.push_back(j);
    }
    // ordered pairs (j, j') within a sorted index list subject to |j - j'| >= r,
    // counted with a two-pointer sweep
    auto far_pairs = [r](const std::vector<std::size_t>& idx) {
      long long pairs = 0;
      std::size_t lo = 0;
      for (std::size_t b = 0; b < idx.size(); ++b) {
        while (lo < b && idx[lo] + r <= idx[b]) ++lo;
        // entries before position lo are those with idx[b] - idx[.] >= r
        pairs += static_cast<long long>(lo);
      }
      return 2 * pairs;
    };
    sum += sl[i] * static_cast<double>(far_pairs(adm));
    denom += far_pairs(adm_all);
  }
  if (denom == 0) {
    throw std::invalid_argument("tilde_beta2: no triple of pairwise non-overlapping windows exists");
  }
  return sum / static_cast<double>(denom);
}

PwmTriple bias_reduced_sliding_pwm(std::span<const double> series, std::size_t r,
                                   std::size_t max_n) {
  if (series.size() > max_n) {
    throw std::length_error("bias_reduced_sliding_pwm: series exceeds the runtime cap");
  }
  const BlockMaximaSample sl = sliding_maxima(series, r);
  double mean = 0.0;
  for (double v : sl.values) mean += v;
  mean /= static_cast<double>(sl.values.size());
  PwmTriple b;
  b.beta0 = mean;
  b.beta1 = tilde_beta1(sl.values, r);
  b.beta2 = tilde_beta2(sl.values, r);
  return b;
}

GevFit fit_sliding_bias_reduced(std::span<const double> series, std::size_t r,
                                std::size_t max_n) {
  const PwmTriple b = bias_reduced_sliding_pwm(series, r, max_n);
  GevFit fit;
  fit.pwm = b;
  fit.n = series.size();
  fit.r = r;
  fit.scheme = BlockScheme::sliding;
  try {
    fit.params = gev_from_pwm(b);
  } catch (const std::domain_error& e) {
    throw FitError(e.what(), b);
  }
  return fit;
}

}  // namespace blockmax
