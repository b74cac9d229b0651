#pragma once

// Seeded random inputs for tests and verification runs. Values are derived
// from raw mt19937_64 output rather than <random> distributions so the same
// seed gives the same numbers on every standard library.

#include <cstdint>
#include <random>

#include "spdmlab/linalg.hpp"

namespace spdm {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Complex complex_uniform() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

  /// Hermitian matrix with entries of real and imaginary parts in [-1, 1].
  ComplexMatrix hermitian(Index n);
  /// Unitary from the QR factor of a random complex matrix.
  ComplexMatrix unitary(Index n);
  /// Q diag(lambda) Q^dagger with lambda uniform in [0, 1].
  ComplexMatrix spdm(Index n);
  /// Normalized random vector.
  ComplexVector unit_vector(Index n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace spdm
