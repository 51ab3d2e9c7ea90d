#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "blockmax/gev.hpp"
#include "blockmax/rng.hpp"
#include "blockmax/special.hpp"

using namespace blockmax;

TEST_CASE("gev_cdf pinned values") {
  CHECK(gev_cdf({0, 1, 0}, 0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(gev_cdf({0, 1, 0.5}, 2.0) == doctest::Approx(std::exp(-0.25)).epsilon(1e-12));
  // off-support clamps
  CHECK(gev_cdf({0, 1, -0.5}, 3.0) == 1.0);
  CHECK(gev_cdf({0, 1, 0.5}, -3.0) == 0.0);
  CHECK_THROWS_AS(gev_cdf({0, -1, 0}, 0.0), std::domain_error);
}

TEST_CASE("gev_quantile pinned values and round trip") {
  CHECK(gev_quantile({0, 1, 0}, std::exp(-1.0)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(gev_quantile({0, 1, 0}, 0.99) == doctest::Approx(4.600149226776579).epsilon(1e-12));
  const double expected = 1.0 + 2.0 * (std::pow(std::log(2.0), -0.2) - 1.0) / 0.2;
  CHECK(gev_quantile({1, 2, 0.2}, 0.5) == doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(gev_quantile({0, 1, 0}, 0.0), std::domain_error);
  CHECK_THROWS_AS(gev_quantile({0, 1, 0}, 1.0), std::domain_error);

  for (double gamma : {-0.7, -0.2, 0.0, 1e-12, 0.3}) {
    const GevParams p{0.4, 2.3, gamma};
    for (double prob : {1e-6, 1e-3, 0.2, 0.5, 0.9, 1.0 - 1e-6}) {
      CHECK(gev_cdf(p, gev_quantile(p, prob)) == doctest::Approx(prob).epsilon(1e-10));
    }
  }
}

TEST_CASE("gev cdf and quantile are monotone") {
  for (double gamma : {-0.5, 0.0, 0.4}) {
    const GevParams p{1.0, 2.0, gamma};
    double prev = -1.0;
    for (int i = 0; i < 1000; ++i) {
      const double x = -20.0 + 0.04 * i;
      const double c = gev_cdf(p, x);
      CHECK(c >= prev);
      prev = c;
    }
    prev = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < 1000; ++i) {
      const double q = gev_quantile(p, i / 1000.0);
      CHECK(q >= prev);
      prev = q;
    }
  }
}

TEST_CASE("gev_sample determinism and Gumbel mean") {
  const GevParams p{0, 1, 0};
  Rng a(42), b(42);
  const auto sa = gev_sample(p, 5, a);
  const auto sb = gev_sample(p, 5, b);
  for (int i = 0; i < 5; ++i) CHECK(sa[i] == sb[i]);
  CHECK(gev_sample(p, 0, a).empty());

  Rng rng(7);
  const auto big = gev_sample(p, 1000000, rng);
  double mean = 0.0;
  for (double v : big) mean += v;
  mean /= static_cast<double>(big.size());
  CHECK(std::fabs(mean - kEulerGamma) < 0.005);
}

TEST_CASE("theoretical PWMs") {
  const PwmTriple gumbel = gev_pwm({0, 1, 0});
  // (euler, (euler + log 2)/2, (euler + log 3)/3)
  CHECK(gumbel.beta0 == doctest::Approx(0.5772156649015329).epsilon(1e-12));
  CHECK(gumbel.beta1 == doctest::Approx(0.6351814227307391).epsilon(1e-12));
  CHECK(gumbel.beta2 == doctest::Approx(0.5586093178565475).epsilon(1e-12));

  // beta0 at gamma = 0.2: -5 (1 - Gamma(0.8))
  CHECK(gev_pwm({0, 1, 0.2}).beta0 ==
        doctest::Approx(-5.0 * (1.0 - std::tgamma(0.8))).epsilon(1e-12));

  // affine identity: pwm(a Z + b) = a pwm(Z) + b (1, 1/2, 1/3)
  for (double gamma : {-0.6, 0.0, 0.3}) {
    const PwmTriple base = gev_pwm({0, 1, gamma});
    const PwmTriple moved = gev_pwm({2.5, 3.0, gamma});
    CHECK(moved.beta0 == doctest::Approx(3.0 * base.beta0 + 2.5).epsilon(1e-12));
    CHECK(moved.beta1 == doctest::Approx(3.0 * base.beta1 + 2.5 / 2.0).epsilon(1e-12));
    CHECK(moved.beta2 == doctest::Approx(3.0 * base.beta2 + 2.5 / 3.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(gev_pwm({0, 1, 1.0}), std::domain_error);
}

TEST_CASE("pwm coefficient functions") {
  const PwmGevCoeffs at0 = pwm_gev_coeffs(0.0);
  CHECK(at0.ratio == doctest::Approx(1.5849625007211562).epsilon(1e-12));
  CHECK(at0.scale == doctest::Approx(1.4426950408889634).epsilon(1e-12));
  CHECK(at0.location == doctest::Approx(-0.5772156649015329).epsilon(1e-12));

  const double s3 = std::sqrt(3.0), s2 = std::sqrt(2.0);
  CHECK(pwm_gev_coeffs(0.5).ratio == doctest::Approx((s3 - 1.0) / (s2 - 1.0)).epsilon(1e-12));
  CHECK(pwm_gev_coeffs(-1.0).ratio == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("shape recovery from the moment ratio") {
  CHECK(std::fabs(shape_from_pwm_ratio(std::log(3.0) / std::log(2.0))) < 1e-10);
  CHECK(shape_from_pwm_ratio(4.0 / 3.0) == doctest::Approx(-1.0).epsilon(1e-10));
  const double t = pwm_gev_coeffs(0.3).ratio;
  CHECK(shape_from_pwm_ratio(t) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK_THROWS_AS(shape_from_pwm_ratio(1.00001), std::domain_error);
  CHECK_THROWS_AS(shape_from_pwm_ratio(2.5), std::domain_error);
}

TEST_CASE("pwm inversion") {
  // six-decimal Gumbel moments invert to (0, 1, 0) up to the rounding of the
  // inputs (the map amplifies input error by roughly the Jacobian norm ~ 14)
  const GevParams p = gev_from_pwm({0.577216, 0.635182, 0.558609});
  CHECK(std::fabs(p.mu) < 1e-4);
  CHECK(p.sigma == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::fabs(p.gamma) < 1e-4);
  // exact moments invert exactly (up to the root-finder tolerance)
  const GevParams back0 = gev_from_pwm(gev_pwm({0.0, 1.0, 0.0}));
  CHECK(std::fabs(back0.mu) < 1e-10);
  CHECK(back0.sigma == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::fabs(back0.gamma) < 1e-10);

  CHECK_THROWS_AS(gev_from_pwm({1.0, 0.5, 1.0 / 3.0}), std::domain_error);

  // inversion identity over the parameter grid
  for (double gamma = -0.9; gamma <= 0.9001; gamma += 0.1) {
    for (double sigma : {0.5, 1.0, 5.0}) {
      for (double mu : {-3.0, 0.0, 3.0}) {
        const GevParams theta{mu, sigma, gamma};
        const GevParams back = gev_from_pwm(gev_pwm(theta));
        CHECK(std::fabs(back.mu - mu) < 1e-8);
        CHECK(std::fabs(back.sigma - sigma) < 1e-8);
        CHECK(std::fabs(back.gamma - gamma) < 1e-8);
      }
    }
  }

  // affine equivariance
  const PwmTriple base = gev_pwm({0.3, 1.2, -0.25});
  const PwmTriple scaled{2.0 * base.beta0 + 1.0, 2.0 * base.beta1 + 0.5,
                         2.0 * base.beta2 + 1.0 / 3.0};
  const GevParams q = gev_from_pwm(scaled);
  CHECK(q.mu == doctest::Approx(2.0 * 0.3 + 1.0).epsilon(1e-8));
  CHECK(q.sigma == doctest::Approx(2.4).epsilon(1e-8));
  CHECK(q.gamma == doctest::Approx(-0.25).epsilon(1e-8));
}

TEST_CASE("bivariate gev law") {
  // complete dependence and independence boundaries
  for (double gamma : {-0.4, 0.0, 0.3}) {
    const GevParams std_law{0, 1, gamma};
    for (double x : {-0.5, 0.2, 1.5}) {
      for (double y : {-0.3, 0.8}) {
        CHECK(bivariate_gev_cdf(gamma, 0.0, x, y) ==
              doctest::Approx(gev_cdf(std_law, std::min(x, y))).epsilon(1e-12));
        CHECK(bivariate_gev_cdf(gamma, 1.0, x, y) ==
              doctest::Approx(gev_cdf(std_law, x) * gev_cdf(std_law, y)).epsilon(1e-12));
      }
    }
  }
  CHECK(bivariate_gev_cdf(0.0, 0.5, 0.0, 0.0) == doctest::Approx(std::exp(-1.5)).epsilon(1e-12));

  // margins: y -> +inf recovers the univariate law, any dep
  for (double dep : {0.0, 0.25, 0.7, 1.0, 2.0}) {
    CHECK(bivariate_gev_cdf(0.2, dep, 0.7, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(gev_cdf({0, 1, 0.2}, 0.7)).epsilon(1e-12));
  }

  // dep = 0 is the comonotone upper bound, so the cdf falls pointwise as the
  // dependence parameter grows
  for (double gamma : {-0.3, 0.0, 0.25}) {
    for (double x : {-0.4, 0.3, 1.2}) {
      for (double y : {-0.2, 0.9}) {
        double prev = 2.0;
        for (double dep = 0.0; dep <= 1.0001; dep += 0.05) {
          const double v = bivariate_gev_cdf(gamma, dep, x, y);
          CHECK(v <= prev + 1e-12);
          prev = v;
        }
      }
    }
  }
  CHECK_THROWS_AS(bivariate_gev_cdf(0.0, -0.1, 0.0, 0.0), std::domain_error);
}

TEST_CASE("gpd cdf and quantile") {
  CHECK(gpd_cdf(0.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(gpd_quantile(-0.4, 0.5) ==
        doctest::Approx((std::pow(0.5, 0.4) - 1.0) / (-0.4)).epsilon(1e-12));
  // upper endpoint 1/|gamma| for gamma < 0
  CHECK(gpd_quantile(-0.4, 1.0 - 1e-13) == doctest::Approx(2.5).epsilon(1e-4));
  CHECK(gpd_cdf(-0.4, 3.0) == 1.0);
  CHECK(gpd_cdf(0.2, -1.0) == 0.0);
  for (double gamma : {-0.4, 0.0, 0.4}) {
    for (double p : {0.01, 0.5, 0.99}) {
      CHECK(gpd_cdf(gamma, gpd_quantile(gamma, p)) == doctest::Approx(p).epsilon(1e-12));
    }
  }
}

TEST_CASE("return level") {
  CHECK(return_level({std::log(90.0), 1.0, 0.0}, 100.0) ==
        doctest::Approx(9.099958897106845).epsilon(1e-9));
  // agreement with the quantile route
  for (double gamma : {-0.4, 0.0, 0.3}) {
    const GevParams p{2.0, 1.5, gamma};
    for (double T : {2.0, 20.0, 100.0}) {
      CHECK(return_level(p, T) == doctest::Approx(gev_quantile(p, 1.0 - 1.0 / T)).epsilon(1e-12));
    }
  }
  // finite upper endpoint as T grows, gamma < 0
  const GevParams p{1.0, 2.0, -0.5};
  CHECK(return_level(p, 1e9) < 1.0 - 2.0 / -0.5 + 1e-3);
  CHECK(return_level(p, 1e9) == doctest::Approx(1.0 + 2.0 / 0.5).epsilon(1e-3));
  CHECK_THROWS_AS(return_level(p, 1.0), std::domain_error);
}

TEST_CASE("normalizing sequences for gpd margins") {
  const NormalizingSequences seq = gpd_normalizing(0.0);
  CHECK(seq.a(90.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(seq.b(90.0) == doctest::Approx(std::log(90.0)).epsilon(1e-12));
  const NormalizingSequences seq2 = gpd_normalizing(-0.3);
  CHECK(seq2.a(50.0) == doctest::Approx(std::pow(50.0, -0.3)).epsilon(1e-13));
  CHECK(seq2.b(50.0) == doctest::Approx((std::pow(50.0, -0.3) - 1.0) / -0.3).epsilon(1e-13));
  CHECK(seq2.a(1.0) > 0.0);
}

TEST_CASE("monte carlo moments match theoretical PWMs") {
  const GevParams p{0, 1, 0.2};
  Rng rng(1234);
  const std::size_t n = 1000000;
  double s0 = 0, s1 = 0, s2 = 0;
  double q0 = 0, q1 = 0, q2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = gev_quantile(p, rng.uniform());
    const double g = gev_cdf(p, m);
    const double v0 = m, v1 = m * g, v2 = m * g * g;
    s0 += v0; s1 += v1; s2 += v2;
    q0 += v0 * v0; q1 += v1 * v1; q2 += v2 * v2;
  }
  const double dn = static_cast<double>(n);
  const PwmTriple tp = gev_pwm(p);
  auto check = [&](double s, double q, double expect) {
    const double mean = s / dn;
    const double se = std::sqrt((q / dn - mean * mean) / dn);
    CHECK(std::fabs(mean - expect) < 3.0 * se);
  };
  check(s0, q0, tp.beta0);
  check(s1, q1, tp.beta1);
  check(s2, q2, tp.beta2);
}
