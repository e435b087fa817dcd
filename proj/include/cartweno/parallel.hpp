#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace cartweno {

/// Number of worker threads used by row-parallel loops (>= 1).
void set_thread_count(int n);
int thread_count() noexcept;

/// Runs body(k) for k in [begin, end), statically partitioned over the
/// configured threads. Iterations must be independent.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

/// Pairwise (tree) summation. The tree depends only on the length of the
/// input, so results are reproducible bit for bit.
double pairwise_sum(std::span<const double> values) noexcept;

}  // namespace cartweno
