#pragma once

#include <cstdint>

namespace solhup {

/// splitmix64 generator. All randomized suites in this project derive their
/// streams from a single seed through split(), so runs are reproducible and
/// independent of evaluation order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Child stream labelled by an index; children with distinct labels are
  /// decorrelated and do not advance this generator.
  SplitMix64 split(std::uint64_t label) const {
    SplitMix64 mixer(state_ ^ (0xD2B74407B1CE6E93ull * (label + 1)));
    return SplitMix64(mixer.next());
  }

  static constexpr std::uint64_t default_seed = 0xC0FFEEull;

 private:
  std::uint64_t state_;
};

}  // namespace solhup
