#pragma once

// Seeded random X3SAT instances.
//
// The generator is defined bit-for-bit so other implementations can
// reproduce instances from a seed:
//
//   SplitMix64: state += 0x9E3779B97F4A7C15;
//               z = state;
//               z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//               z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
//               return z ^ (z >> 31);
//
//   below(bound): draw r until r >= (2^64 - bound) % bound, return r % bound.
//
// For each clause, in order: width = 1 + index selected by
// below(w1 + w2 + w3) against the cumulative weights; then `width`
// distinct variables, each 1 + below(nvars), redrawing on repeats; then one
// polarity per variable in draw order, positive iff next() >> 63 == 0.
// Literals are finally sorted by variable.

#include <array>
#include <cstdint>

#include "x3sat/formula.hpp"

namespace x3sat {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

struct WidthDistribution {
  /// Relative weights of widths 1, 2, 3.
  std::array<std::uint32_t, 3> weights{0, 0, 1};

  static WidthDistribution fixed3() { return {{0, 0, 1}}; }
  static WidthDistribution mixed(std::uint32_t w1, std::uint32_t w2, std::uint32_t w3) { return {{w1, w2, w3}}; }

  std::uint32_t max_width() const;
};

struct GenSpec {
  std::uint32_t nvars = 1;
  std::uint32_t nclauses = 0;
  WidthDistribution widths = WidthDistribution::fixed3();
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument for an invalid spec, including clauses
/// wider than the number of variables.
Formula generate(const GenSpec& spec);

}  // namespace x3sat
