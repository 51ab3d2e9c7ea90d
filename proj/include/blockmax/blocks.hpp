#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace blockmax {

enum class BlockScheme { disjoint, sliding, circular };

const char* to_string(BlockScheme s);

struct BlockMaximaSample {
  std::vector<double> values;
  std::size_t r = 1;
  BlockScheme scheme = BlockScheme::disjoint;
};

// Maxima over the floor(n/r) non-overlapping windows; a trailing partial
// block is discarded.
BlockMaximaSample disjoint_maxima(std::span<const double> series, std::size_t r);

// Maxima over all n-r+1 overlapping windows, O(n) via a monotone deque.
BlockMaximaSample sliding_maxima(std::span<const double> series, std::size_t r);

// Sliding maxima after appending the first block to the end, so every
// observation belongs to exactly r windows; requires n divisible by r and
// yields exactly n values.
BlockMaximaSample circular_sliding_maxima(std::span<const double> series, std::size_t r);

}  // namespace blockmax
