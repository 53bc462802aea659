#pragma once

#include <cstddef>
#include <span>

namespace adoptsim {

/// Leaf size of every reduction. Fixed so that sums do not depend on how the
/// work is partitioned.
inline constexpr std::size_t kReduceChunk = 1024;

/// Sum of at most kReduceChunk values: eight interleaved lane accumulators
/// (lane j takes indices congruent to j mod 8) combined as a balanced tree.
double chunk_sum(std::span<const double> chunk);

/// Balanced binary tree over per-chunk partial sums, split at the midpoint.
double tree_sum(std::span<const double> partials);

/// chunk_sum over consecutive kReduceChunk blocks, then tree_sum.
double pairwise_sum(std::span<const double> values);

}  // namespace adoptsim
