#pragma once

#include <span>
#include <vector>

#include "pairinglab/matrix.hpp"

namespace pairinglab {

inline constexpr double kMajorizationTol = 1e-9;

/// True iff x ≺ y: descending partial sums of x never exceed those of y and
/// the totals agree. The shorter sequence is padded with zeros.
bool majorizes(std::span<const double> y, std::span<const double> x, double tol = kMajorizationTol);

/// u = |X_jk|² flattened row-major, v = diag(X†X), w = eig(X†X).
struct MajorizationTriple {
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> w;

  /// Σu = Σv = Σw and u ≺ v ≺ w.
  bool holds(double tol = kMajorizationTol) const;
};

MajorizationTriple uvw_triple(const ComplexMatrix& x);

struct TraceL1Comparison {
  double trace_norm;
  double l1_norm;
  bool is_monomial;
  double gap;         // l1 − trace
  bool consistent;    // gap ≥ −tol, and gap ≤ tol exactly when monomial
};

/// `zero_tol` is relative to the largest entry modulus.
TraceL1Comparison trace_vs_l1(const ComplexMatrix& x, double zero_tol = 1e-10);

}  // namespace pairinglab
