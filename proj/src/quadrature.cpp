#include "blockmax/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace blockmax {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639268, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
  double a, b;
  double value;
  double error;
};

Segment evaluate(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[15];
  const double fc = f(center);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = std::fabs(resk);
  fv[14] = fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv[j] = f1;
    fv[7 + j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) resg += kWg[(j - 1) / 2] * (f1 + f2);
  }

  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv[j] - reskh) + std::fabs(fv[7 + j] - reskh));
  }
  resasc *= std::fabs(half);
  resabs *= std::fabs(half);

  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps_floor = 50.0 * 2.22e-16 * resabs;
  if (eps_floor > 0.0) err = std::max(err, eps_floor);

  return Segment{a, b, resk * half, err};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt) {
  if (a == b) return QuadResult{0.0, 0.0, 0, true};

  auto cmp = [](const Segment& x, const Segment& y) { return x.error < y.error; };
  std::priority_queue<Segment, std::vector<Segment>, decltype(cmp)> heap(cmp);

  Segment whole = evaluate(f, a, b);
  double total = whole.value;
  double total_err = whole.error;
  heap.push(whole);
  int count = 1;

  while (count < opt.max_intervals) {
    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::fabs(total));
    if (total_err <= tol) break;
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval exhausted at machine precision
      heap.push(worst);
      break;
    }
    Segment left = evaluate(f, worst.a, mid);
    Segment right = evaluate(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  QuadResult res;
  res.value = total;
  res.error = total_err;
  res.intervals = count;
  res.converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(total));
  return res;
}

double integrate_checked(const std::function<double(double)>& f, double a, double b,
                         const QuadOptions& opt) {
  const QuadResult res = integrate(f, a, b, opt);
  if (!res.converged) {
    throw std::runtime_error("quadrature did not reach the requested tolerance");
  }
  return res.value;
}

}  // namespace blockmax
