#include "pairinglab/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pairinglab/kernels.hpp"
#include "pairinglab/linalg.hpp"

namespace pairinglab {

bool majorizes(std::span<const double> y, std::span<const double> x, double tol) {
  const std::size_t n = std::max(x.size(), y.size());
  std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  xs.resize(n, 0.0);
  ys.resize(n, 0.0);
  std::sort(xs.begin(), xs.end(), std::greater<>());
  std::sort(ys.begin(), ys.end(), std::greater<>());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    if (sx > sy + tol) return false;
  }
  return std::abs(sx - sy) <= tol;
}

bool MajorizationTriple::holds(double tol) const { return majorizes(v, u, tol) && majorizes(w, v, tol); }

MajorizationTriple uvw_triple(const ComplexMatrix& x) {
  MajorizationTriple t;
  t.u.reserve(x.rows() * x.cols());
  for (const cplx& z : x.entries()) t.u.push_back(std::norm(z));
  const ComplexMatrix g = kernels::gram(x);
  for (std::size_t i = 0; i < g.rows(); ++i) t.v.push_back(g(i, i).real());
  t.w = hermitian_eigenvalues(g);
  // Round-off can leave eigenvalues of a PSD Gram matrix slightly negative.
  for (double& e : t.w) e = std::max(e, 0.0);
  return t;
}

TraceL1Comparison trace_vs_l1(const ComplexMatrix& x, double zero_tol) {
  const double thr = zero_tol * x.max_abs();
  bool monomial = true;
  std::vector<std::size_t> per_col(x.cols(), 0);
  for (std::size_t r = 0; r < x.rows() && monomial; ++r) {
    std::size_t per_row = 0;
    for (std::size_t c = 0; c < x.cols(); ++c) {
      if (std::abs(x(r, c)) <= thr) continue;
      if (++per_row > 1 || ++per_col[c] > 1) monomial = false;
    }
  }
  const double tn = trace_norm(x), l1 = entrywise_l1_norm(x);
  const double gap = l1 - tn;
  return {tn, l1, monomial, gap, gap >= -kMajorizationTol && (monomial == (gap <= kMajorizationTol))};
}

}  // namespace pairinglab
