#pragma once

#include <functional>

namespace blockmax {

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_intervals = 5000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod (G7, K15) on a finite interval [a, b]. Endpoints are
// never evaluated, so integrable endpoint singularities are tolerated; callers
// substitute variables when the singularity is too strong for plain bisection.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

// Same, but throws std::runtime_error when the tolerance was not reached.
double integrate_checked(const std::function<double(double)>& f, double a, double b,
                         const QuadOptions& opt = {});

}  // namespace blockmax
