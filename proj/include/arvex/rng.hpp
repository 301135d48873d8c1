#pragma once

#include <cstdint>
#include <cmath>

namespace arvex {

/// Counter-based pseudo random generator: the k-th output is a pure function
/// of (seed, k) via the SplitMix64 mix, so streams are reproducible from the
/// seed alone and cheap to describe in docs. Gaussians come from Box-Muller
/// on consecutive uniform pairs.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = seed_ + (++counter_) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in (0,1); never returns 0 so Box-Muller's log is safe.
  double uniform01() {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  /// Uniform in [-1, 1].
  double symmetric() { return 2.0 * uniform01() - 1.0; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  std::uint64_t seed() const { return seed_; }

  /// Independent stream for a subtask; distinct keys give distinct streams.
  CounterRng fork(std::uint64_t key) {
    return CounterRng(next_u64() ^ (key * 0xda942042e4dd58b5ULL));
  }

private:
  std::uint64_t seed_ = 0;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace arvex
