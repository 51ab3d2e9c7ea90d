#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "blockmax/blocks.hpp"
#include "blockmax/gev.hpp"

namespace blockmax {

// Raised when a PWM triple cannot be inverted to GEV parameters; carries the
// offending triple for diagnostics.
struct FitError : std::runtime_error {
  PwmTriple pwm;
  FitError(const std::string& msg, const PwmTriple& t) : std::runtime_error(msg), pwm(t) {}
};

// Order-statistic estimators
//   b0 = mean,  b1 = (1/m) sum (i-1)/(m-1) M_(i),
//   b2 = (1/m) sum (i-1)(i-2)/((m-1)(m-2)) M_(i),
// with a stable sort (ties keep input order). Needs m >= 3.
PwmTriple empirical_pwm(std::span<const double> sample);

struct GevFit {
  GevParams params;   // (b_r, a_r, gamma) estimates as (mu, sigma, gamma)
  PwmTriple pwm;      // empirical moments the fit was derived from
  std::size_t n = 0;  // length of the underlying series
  std::size_t r = 1;  // block size
  BlockScheme scheme = BlockScheme::disjoint;
};

// Fit a GEV law to a plain sample by inverting its empirical PWMs.
GevFit fit_pwm(std::span<const double> sample);

// Block extraction composed with the PWM fit; estimates (b_r, a_r, gamma).
GevFit fit_disjoint(std::span<const double> series, std::size_t r);
GevFit fit_sliding(std::span<const double> series, std::size_t r);
GevFit fit_circular(std::span<const double> series, std::size_t r);

// Components of the bias-reduced sliding estimator: averages restricted to
// index pairs/triples whose windows do not overlap (|i - j| >= r). They take
// the sliding maxima sample, not the raw series.
double tilde_beta1(std::span<const double> sliding_max, std::size_t r);
double tilde_beta2(std::span<const double> sliding_max, std::size_t r);

// Bias-reduced sliding-blocks PWMs of a raw series. The pair/triple
// enumeration is quadratic, so series longer than max_n are rejected.
PwmTriple bias_reduced_sliding_pwm(std::span<const double> series, std::size_t r,
                                   std::size_t max_n = 20000);

GevFit fit_sliding_bias_reduced(std::span<const double> series, std::size_t r,
                                std::size_t max_n = 20000);

}  // namespace blockmax
