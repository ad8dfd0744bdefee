// Shared generators for the test suite. Everything is seeded deterministically
// so failures reproduce.
#pragma once

#include <cstdint>
#include <random>

#include "esd/qmat.hpp"

namespace esd::testing {

inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eedu);
  return gen;
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols,
                                   std::mt19937& gen = rng()) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = cx{dist(gen), dist(gen)};
  return m;
}

// Full-rank random density matrix: G G^ / tr(G G^).
inline ComplexMatrix random_density(std::size_t n, std::mt19937& gen = rng()) {
  ComplexMatrix g = random_matrix(n, n, gen);
  ComplexMatrix rho = g * dagger(g);
  cx t = trace(rho);
  return (1.0 / t.real()) * rho;
}

// Haar-ish random unitary via Gram-Schmidt on random columns. Distribution
// quality does not matter for the tests that use it, unitarity does.
inline ComplexMatrix random_unitary(std::size_t n, std::mt19937& gen = rng()) {
  ComplexMatrix g = random_matrix(n, n, gen);
  ComplexMatrix u(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<cx> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = g(r, c);
    for (std::size_t prev = 0; prev < c; ++prev) {
      cx overlap{0.0, 0.0};
      for (std::size_t r = 0; r < n; ++r)
        overlap += std::conj(u(r, prev)) * col[r];
      for (std::size_t r = 0; r < n; ++r) col[r] -= overlap * u(r, prev);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(col[r]);
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) u(r, c) = col[r] / norm;
  }
  return u;
}

inline Ket random_ket(std::size_t n, std::mt19937& gen = rng()) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Ket k{std::vector<cx>(n)};
  for (std::size_t i = 0; i < n; ++i) k.amp[i] = cx{dist(gen), dist(gen)};
  return k.normalized();
}

}  // namespace esd::testing
