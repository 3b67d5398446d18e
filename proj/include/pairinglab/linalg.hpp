#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pairinglab/matrix.hpp"

namespace pairinglab {

/// Default tolerance for accepting a matrix as a density matrix.
inline constexpr double kValidationTol = 1e-9;

/// Hermitian, positive semidefinite, unit-trace matrix. The stored matrix is
/// the Hermitian part of the input, so downstream code sees exact symmetry.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat, double validation_tol = kValidationTol);

  /// ⊕_i w_i ρ_i for nonnegative weights summing to one. Skips the spectral
  /// check since each summand is already a valid state.
  static DensityMatrix direct_sum(std::span<const DensityMatrix> blocks, std::span<const double> weights,
                                  double validation_tol = kValidationTol);

  const ComplexMatrix& mat() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.rows(); }
  double validation_tol() const noexcept { return tol_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

 private:
  DensityMatrix(ComplexMatrix mat, double validation_tol, std::nullptr_t) : mat_(std::move(mat)), tol_(validation_tol) {}

  ComplexMatrix mat_;
  double tol_;
};

/// A density matrix on H_A ⊗ H_B. Basis label |jk> sits at index j·d_B + k.
class BipartiteState {
 public:
  BipartiteState(DensityMatrix state, std::size_t d_a, std::size_t d_b);

  const DensityMatrix& state() const noexcept { return state_; }
  const ComplexMatrix& mat() const noexcept { return state_.mat(); }
  std::size_t d_a() const noexcept { return d_a_; }
  std::size_t d_b() const noexcept { return d_b_; }
  std::size_t dim() const noexcept { return state_.dim(); }
  std::size_t index(std::size_t j, std::size_t k) const noexcept { return j * d_b_ + k; }

 private:
  DensityMatrix state_;
  std::size_t d_a_;
  std::size_t d_b_;
};

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // columns, orthonormal
};

/// Cyclic complex Jacobi. Throws NotHermitian / NoConvergence.
SpectralDecomposition hermitian_eig(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Nonnegative, descending. Computed from the eigenvectors V of X†X as the
/// column norms of XV, which keeps tiny singular values accurate.
std::vector<double> singular_values(const ComplexMatrix& x);
double trace_norm(const ComplexMatrix& x);
double entrywise_l1_norm(const ComplexMatrix& x);

ComplexMatrix partial_transpose(const BipartiteState& bs);
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b);
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Eigenvalues with |λ| ≤ 1e-10·max(1, spectral radius) count as zero.
double zero_eigenvalue_threshold(std::span<const double> eigenvalues);

/// Entropy in bits of a probability vector; entries at or below `zero` are dropped.
double shannon_entropy(std::span<const double> p, double zero = 0.0);
double von_neumann_entropy(const DensityMatrix& rho);
double binary_entropy(double x);

DensityMatrix dephase(const DensityMatrix& rho);

/// |X| = sqrt(X†X) for Hermitian X, via its eigendecomposition.
ComplexMatrix hermitian_abs(const ComplexMatrix& x);

}  // namespace pairinglab
