#pragma once

#include <cstdint>
#include <random>

namespace spdc {

/// Deterministic random source used by every simulation. The engine is
/// mt19937_64 and the Poisson sampler is written out explicitly (inversion
/// below mean 10, Hörmann's PTRS transformed rejection above), so a given
/// seed produces the same draw sequence on any platform. std:: distribution
/// objects are implementation-defined and deliberately not used.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Poisson-distributed count with the given mean (>= 0).
  uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace spdc
