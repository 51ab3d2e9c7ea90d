#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "blockmax/quadrature.hpp"
#include "blockmax/special.hpp"

using namespace blockmax;

TEST_CASE("digamma matches known values") {
  CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-13));
  CHECK(digamma(2.0) == doctest::Approx(1.0 - kEulerGamma).epsilon(1e-13));
  CHECK(digamma(0.5) == doctest::Approx(-kEulerGamma - 2.0 * std::log(2.0)).epsilon(1e-13));
  // psi(x+1) = psi(x) + 1/x
  for (double x : {0.3, 0.77, 1.9, 4.2}) {
    CHECK(digamma(x + 1.0) == doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-13));
  }
  CHECK_THROWS_AS(digamma(-1.0), std::domain_error);
}

TEST_CASE("gamma_upper against its defining integral") {
  for (double a : {-0.9, -0.45, -0.2, -1e-10, 0.0, 1e-10, 0.3, 0.5, 0.9}) {
    for (double z : {0.05, 0.3, 1.0, 1.4999, 1.5, 2.5, 8.0}) {
      QuadOptions opt;
      opt.abs_tol = 1e-13;
      opt.rel_tol = 1e-13;
      // the integrand decays like e^-t; 60 covers double precision
      const double oracle = integrate_checked(
          [a](double t) { return std::pow(t, a - 1.0) * std::exp(-t); }, z, z + 60.0, opt);
      CHECK(gamma_upper(a, z) == doctest::Approx(oracle).epsilon(1e-11));
    }
  }
}

TEST_CASE("gamma_upper closed forms") {
  // Gamma(1, z) = e^-z
  CHECK(gamma_upper(0.99999999, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-7));
  // Gamma(1/2, z) = sqrt(pi) erfc(sqrt(z))
  for (double z : {0.2, 1.0, 3.0}) {
    CHECK(gamma_upper(0.5, z) ==
          doctest::Approx(std::sqrt(kPi) * std::erfc(std::sqrt(z))).epsilon(1e-13));
  }
  // E1(1)
  CHECK(gamma_upper(0.0, 1.0) == doctest::Approx(0.21938393439552026).epsilon(1e-13));
  // recurrence Gamma(a+1, z) = a Gamma(a, z) + z^a e^-z
  for (double a : {-0.6, -0.25, -0.05}) {
    for (double z : {0.4, 1.2, 5.0}) {
      const double lhs = gamma_upper(a + 1.0, z);
      const double rhs = a * gamma_upper(a, z) + std::pow(z, a) * std::exp(-z);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("adaptive quadrature on standard integrals") {
  QuadOptions opt;
  CHECK(integrate_checked([](double x) { return std::sin(x); }, 0.0, kPi, opt) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate_checked([](double x) { return std::exp(-x * x); }, -8.0, 8.0, opt) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  // integrable endpoint singularity
  CHECK(integrate_checked([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt) ==
        doctest::Approx(2.0).epsilon(1e-9));
  // oscillatory
  CHECK(integrate_checked([](double x) { return std::cos(50.0 * x); }, 0.0, 1.0, opt) ==
        doctest::Approx(std::sin(50.0) / 50.0).epsilon(1e-10));
}

TEST_CASE("expm1m equals expm1(x) - x") {
  for (double x : {-0.4, -1e-3, -1e-9, 1e-9, 1e-3, 0.4, 2.0}) {
    const double ref = 0.5 * x * x * (1.0 + x / 3.0 * (1.0 + x / 4.0 * (1.0 + x / 5.0)));
    if (std::fabs(x) < 1e-2) {
      CHECK(expm1m(x) == doctest::Approx(ref).epsilon(1e-10));
    } else {
      CHECK(expm1m(x) == doctest::Approx(std::expm1(x) - x).epsilon(1e-12));
    }
  }
}
