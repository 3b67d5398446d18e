#include "pairinglab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pairinglab/error.hpp"
#include "pairinglab/kernels.hpp"

namespace pairinglab {

namespace {

constexpr double kHermitianTol = 1e-9;
constexpr double kJacobiTol = 1e-12;
constexpr int kJacobiSweeps = 100;

double hermitian_defect(const ComplexMatrix& m) {
  double d = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c) d = std::max(d, std::abs(m(r, c) - std::conj(m(c, r))));
  return d;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    h(r, r) = m(r, r).real();
    for (std::size_t c = r + 1; c < m.cols(); ++c) {
      h(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
      h(c, r) = std::conj(h(r, c));
    }
  }
  return h;
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// One two-sided rotation A <- J† A J zeroing A(p,q), accumulated into V <- V J.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double mod = std::abs(apq);
  if (mod == 0.0) return;
  const cplx phase = apq / mod;
  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mod);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const cplx jpp = c, jpq = s;
  const cplx jqp = -s * std::conj(phase), jqq = c * std::conj(phase);

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p), akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k), aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p), vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

std::vector<std::size_t> descending_order(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });
  return order;
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix mat, double validation_tol) : tol_(validation_tol) {
  if (!(validation_tol >= 0.0)) throw Error(Errc::OutOfRange, "validation_tol must be nonnegative");
  if (!mat.is_square() || mat.empty()) throw Error(Errc::InvalidState, "density matrix must be square and non-empty");
  std::ostringstream why;
  if (const double d = hermitian_defect(mat); d > validation_tol) {
    why << "not Hermitian (defect " << d << ")";
    throw Error(Errc::InvalidState, why.str());
  }
  const cplx tr = mat.trace();
  if (std::abs(tr - 1.0) > validation_tol) {
    why << "trace " << tr.real() << " differs from 1";
    throw Error(Errc::InvalidState, why.str());
  }
  mat_ = hermitian_part(mat);
  const auto ev = hermitian_eigenvalues(mat_);
  if (ev.back() < -validation_tol) {
    why << "smallest eigenvalue " << ev.back() << " is negative";
    throw Error(Errc::InvalidState, why.str());
  }
}

DensityMatrix DensityMatrix::direct_sum(std::span<const DensityMatrix> blocks, std::span<const double> weights,
                                       double validation_tol) {
  if (blocks.size() != weights.size()) throw Error(Errc::DimensionMismatch, "one weight per block required");
  double total = 0.0;
  std::size_t dim = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!(weights[i] >= 0.0)) throw Error(Errc::InvalidState, "negative block weight");
    total += weights[i];
    dim += blocks[i].dim();
  }
  if (dim == 0 || std::abs(total - 1.0) > validation_tol) throw Error(Errc::InvalidState, "block weights must sum to 1");
  ComplexMatrix out(dim, dim);
  std::size_t at = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::size_t n = blocks[i].dim();
    if (weights[i] != 0.0)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out(at + r, at + c) = weights[i] * blocks[i](r, c);
    at += n;
  }
  return DensityMatrix(std::move(out), validation_tol, nullptr);
}

BipartiteState::BipartiteState(DensityMatrix state, std::size_t d_a, std::size_t d_b)
    : state_(std::move(state)), d_a_(d_a), d_b_(d_b) {
  if (d_a == 0 || d_b == 0 || d_a * d_b != state_.dim()) {
    throw Error(Errc::DimensionMismatch, "d_A*d_B = " + std::to_string(d_a * d_b) +
                                             " but state dimension is " + std::to_string(state_.dim()));
  }
}

SpectralDecomposition hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(Errc::NotHermitian, "matrix is not square");
  const double scale = std::max(1.0, m.max_abs());
  if (hermitian_defect(m) > kHermitianTol * scale) throw Error(Errc::NotHermitian, "symmetry check failed");

  const std::size_t n = m.rows();
  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double target = kJacobiTol * a.frobenius_norm();

  bool converged = off_diagonal_norm(a) <= target;
  for (int sweep = 0; sweep < kJacobiSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    converged = off_diagonal_norm(a) <= target;
  }
  if (!converged) throw Error(Errc::NoConvergence, "Jacobi sweep budget exhausted");

  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  const auto order = descending_order(diag);
  SpectralDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.eigenvalues[i] = diag[order[i]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, i) = v(r, order[i]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) { return hermitian_eig(m).eigenvalues; }

std::vector<double> singular_values(const ComplexMatrix& x) {
  const auto eig = hermitian_eig(kernels::gram(x));
  const ComplexMatrix xv = x * eig.eigenvectors;
  std::vector<double> sv(xv.cols());
  for (std::size_t c = 0; c < xv.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < xv.rows(); ++r) s += std::norm(xv(r, c));
    sv[c] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  sv.resize(std::min(x.rows(), x.cols()));
  return sv;
}

double trace_norm(const ComplexMatrix& x) {
  const auto sv = singular_values(x);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

double entrywise_l1_norm(const ComplexMatrix& x) { return kernels::entrywise_l1(x); }

ComplexMatrix partial_transpose(const BipartiteState& bs) {
  return kernels::partial_transpose_a(bs.mat(), bs.d_a(), bs.d_b());
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b) {
  return kernels::partial_transpose_a(m, d_a, d_b);
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) { return kernels::kron(a, b); }

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kernels::kron(a.mat(), b.mat()), std::max(a.validation_tol(), b.validation_tol()));
}

double zero_eigenvalue_threshold(std::span<const double> eigenvalues) {
  double radius = 0.0;
  for (double l : eigenvalues) radius = std::max(radius, std::abs(l));
  return 1e-10 * std::max(1.0, radius);
}

double shannon_entropy(std::span<const double> p, double zero) {
  double h = 0.0;
  for (double x : p)
    if (x > zero) h -= x * std::log2(x);
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto ev = hermitian_eigenvalues(rho.mat());
  if (ev.back() < -rho.validation_tol())
    throw Error(Errc::NegativeEigenvalue, "eigenvalue " + std::to_string(ev.back()));
  return shannon_entropy(ev, zero_eigenvalue_threshold(ev));
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(Errc::OutOfRange, "binary entropy argument outside [0,1]");
  const double p[2] = {x, 1.0 - x};
  return shannon_entropy(p);
}

DensityMatrix dephase(const DensityMatrix& rho) {
  std::vector<double> diag(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) diag[i] = rho(i, i).real();
  return DensityMatrix(ComplexMatrix::diagonal(diag), rho.validation_tol());
}

ComplexMatrix hermitian_abs(const ComplexMatrix& x) {
  const auto eig = hermitian_eig(x);
  ComplexMatrix scaled = eig.eigenvectors;
  for (std::size_t c = 0; c < scaled.cols(); ++c)
    for (std::size_t r = 0; r < scaled.rows(); ++r) scaled(r, c) *= std::abs(eig.eigenvalues[c]);
  return scaled * eig.eigenvectors.adjoint();
}

}  // namespace pairinglab
