#pragma once

#include <cmath>
#include <numbers>

#include "pairinglab/linalg.hpp"
#include "pairinglab/randgen.hpp"

namespace pairinglab::testing {

inline DensityMatrix plus_state() { return DensityMatrix(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}); }

// Canonical MC state c = [[0.5,0.3],[0.3,0.5]] on |00>, |11>.
inline BipartiteState mc_example() {
  ComplexMatrix m(4, 4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  m(0, 3) = 0.3;
  m(3, 0) = 0.3;
  return BipartiteState(DensityMatrix(m), 2, 2);
}

inline BipartiteState bell_state() {
  ComplexMatrix m(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return BipartiteState(DensityMatrix(m), 2, 2);
}

inline BipartiteState diagonal_state(std::size_t d_a, std::size_t d_b, Rng& rng) {
  const auto w = random_simplex(d_a * d_b, rng);
  return BipartiteState(DensityMatrix(ComplexMatrix::diagonal(w)), d_a, d_b);
}

inline ComplexMatrix random_complex(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix x(rows, cols);
  for (auto& z : x.entries()) z = rng.complex_normal();
  return x;
}

inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  const ComplexMatrix x = random_complex(n, n, rng);
  return 0.5 * (x + x.adjoint());
}

inline double max_offdiag(const ComplexMatrix& m) {
  double o = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c) o = std::max(o, std::abs(m(r, c)));
  return o;
}

}  // namespace pairinglab::testing
