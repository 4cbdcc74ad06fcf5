#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace kp5 {

/// SplitMix64 finaliser: derives an independent stream seed for sample
/// `index` from a master seed, so results do not depend on thread count.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

/// Per-sample generator. Distributions are computed from raw 64-bit draws
/// (no std:: distributions) so streams are identical across standard libraries.
class SampleRng {
 public:
  SampleRng(std::uint64_t master, std::uint64_t index) : engine_(stream_seed(master, index)) {}

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box–Muller).
  double normal();
  /// Random sign times a log-uniform magnitude in [lo, hi].
  double log_uniform_signed(double lo = 1e-2, double hi = 1e2);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// Worker count: KP5_THREADS if set and positive (at most 256), else the
/// hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace kp5
