#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace evifuse::bench {

/// Seedable generator with platform-independent draws. The standard
/// distributions are implementation-defined, so the few draws the harness
/// needs are derived here directly from the 64-bit engine output.
class Rng {
 public:
  /// Independent stream for (seed, stream), so per-trial generators do not
  /// depend on execution order.
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on {0, ..., n-1}, n > 0.
  std::uint64_t index(std::uint64_t n);
  /// Draw from a discrete distribution given by (not necessarily normalized)
  /// non-negative weights.
  std::size_t categorical(std::span<const double> weights);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace evifuse::bench
