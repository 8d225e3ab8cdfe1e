#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace contractlab {

// Seeded generator with hand-rolled draws so that sequences are identical
// across standard libraries and platforms, not just across runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform double in [0, 1), 53 bits of entropy.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform index in {0, ..., n-1}.
  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
  }

  // Draw an index with probability proportional to weights (assumed to sum
  // to ~1; the tail index absorbs any rounding remainder).
  std::size_t pick(std::span<const double> weights) {
    if (weights.empty()) throw std::invalid_argument("pick: empty weights");
    double u = uniform01();
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      cum += weights[i];
      if (u < cum) return i;
    }
    return weights.size() - 1;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace contractlab
