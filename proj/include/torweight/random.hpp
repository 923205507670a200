#pragma once

#include "torweight/rational.hpp"

#include <cstdint>
#include <random>

namespace torweight {

// Seeded generator with platform-independent range reduction, so a seed
// reproduces the same stream everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next() { return engine_(); }

  // Uniform in [lo, hi] by rejection.
  long uniform(long lo, long hi);

  // Independent stream derived from this seed and a stream label.
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace torweight
