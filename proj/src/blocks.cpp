#include "blockmax/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace blockmax {

const char* to_string(BlockScheme s) {
  switch (s) {
    case BlockScheme::disjoint: return "disjoint";
    case BlockScheme::sliding: return "sliding";
    case BlockScheme::circular: return "circular";
  }
  return "?";
}

namespace {

void check_input(std::span<const double> series, std::size_t r) {
  if (r < 1) throw std::invalid_argument("block size must be at least 1");
  if (series.size() < r) {
    throw std::invalid_argument("series shorter than one block; no maxima can be formed");
  }
  for (double v : series) {
    if (std::isnan(v)) throw std::invalid_argument("series contains NaN");
  }
}

// window maxima of the n-r+1 windows of `ext`, via a monotone deque of indices
std::vector<double> window_maxima(std::span<const double> ext, std::size_t r) {
  std::vector<double> out;
  out.reserve(ext.size() - r + 1);
  std::deque<std::size_t> q;
  for (std::size_t i = 0; i < ext.size(); ++i) {
    while (!q.empty() && ext[q.back()] <= ext[i]) q.pop_back();
    q.push_back(i);
    if (q.front() + r <= i) q.pop_front();
    if (i + 1 >= r) out.push_back(ext[q.front()]);
  }
  return out;
}

}  // namespace

BlockMaximaSample disjoint_maxima(std::span<const double> series, std::size_t r) {
  check_input(series, r);
  const std::size_t m = series.size() / r;
  BlockMaximaSample s;
  s.r = r;
  s.scheme = BlockScheme::disjoint;
  s.values.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    double mx = series[j * r];
    for (std::size_t i = 1; i < r; ++i) mx = std::max(mx, series[j * r + i]);
    s.values.push_back(mx);
  }
  return s;
}

BlockMaximaSample sliding_maxima(std::span<const double> series, std::size_t r) {
  check_input(series, r);
  BlockMaximaSample s;
  s.r = r;
  s.scheme = BlockScheme::sliding;
  s.values = window_maxima(series, r);
  return s;
}

BlockMaximaSample circular_sliding_maxima(std::span<const double> series, std::size_t r) {
  check_input(series, r);
  if (series.size() % r != 0) {
    throw std::invalid_argument("circular blocks need a series length divisible by the block size");
  }
  std::vector<double> ext(series.begin(), series.end());
  ext.insert(ext.end(), series.begin(), series.begin() + r);
  BlockMaximaSample s;
  s.r = r;
  s.scheme = BlockScheme::circular;
  s.values = window_maxima(ext, r);
  s.values.resize(series.size());  // windows start at each original index only
  return s;
}

}  // namespace blockmax
