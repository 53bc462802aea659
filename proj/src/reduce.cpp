#include "adoptsim/reduce.hpp"

#include <algorithm>
#include <vector>

namespace adoptsim {

double chunk_sum(std::span<const double> chunk) {
  double lanes[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  const std::size_t n = chunk.size();
  const std::size_t body = n - n % 8;
  for (std::size_t i = 0; i < body; i += 8)
    for (std::size_t j = 0; j < 8; ++j) lanes[j] += chunk[i + j];
  for (std::size_t i = body; i < n; ++i) lanes[i - body] += chunk[i];
  return ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) +
         ((lanes[4] + lanes[5]) + (lanes[6] + lanes[7]));
}

double tree_sum(std::span<const double> partials) {
  if (partials.empty()) return 0.0;
  if (partials.size() == 1) return partials[0];
  const std::size_t mid = partials.size() / 2;
  return tree_sum(partials.first(mid)) + tree_sum(partials.subspan(mid));
}

double pairwise_sum(std::span<const double> values) {
  std::vector<double> partials;
  partials.reserve(values.size() / kReduceChunk + 1);
  for (std::size_t lo = 0; lo < values.size(); lo += kReduceChunk) {
    const std::size_t len = std::min(kReduceChunk, values.size() - lo);
    partials.push_back(chunk_sum(values.subspan(lo, len)));
  }
  return tree_sum(partials);
}

}  // namespace adoptsim
