#include "cartweno/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace cartweno {

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int n) { g_threads.store(std::max(1, n)); }

int thread_count() noexcept { return g_threads.load(); }

void parallel_for(int begin, int end, const std::function<void(int)>& body) {
  const int n = end - begin;
  if (n <= 0) return;
  const int threads = std::min(thread_count(), n);
  if (threads == 1) {
    for (int k = begin; k < end; ++k) body(k);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(static_cast<std::size_t>(threads - 1));
  const int chunk = (n + threads - 1) / threads;
  for (int t = 1; t < threads; ++t) {
    const int lo = begin + t * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &body] {
      for (int k = lo; k < hi; ++k) body(k);
    });
  }
  for (int k = begin; k < std::min(end, begin + chunk); ++k) body(k);
}

double pairwise_sum(std::span<const double> values) noexcept {
  constexpr std::size_t kLeaf = 16;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace cartweno
