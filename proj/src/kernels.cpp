#include "pairinglab/kernels.hpp"

#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pairinglab/error.hpp"

namespace pairinglab::kernels {

namespace {

void require_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "inner dimensions differ");
}

void require_bipartite(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b) {
  if (!m.is_square() || m.rows() != d_a * d_b)
    throw Error(Errc::DimensionMismatch, "matrix is not (d_A*d_B) square");
}

}  // namespace

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_inner(a, b);
  const std::size_t n = a.rows(), m = b.cols(), inner = a.cols();
  ComplexMatrix out(n, m);
#pragma omp parallel for schedule(static) if (n * m * inner > kParallelWork)
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < inner; ++k) {
      const cplx ark = a(r, k);
      if (ark == cplx{}) continue;
      for (std::size_t c = 0; c < m; ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

ComplexMatrix gram(const ComplexMatrix& x) {
  const std::size_t n = x.cols(), rows = x.rows();
  ComplexMatrix out(n, n);
#pragma omp parallel for schedule(static) if (n * n * rows > kParallelWork)
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < rows; ++k) s += std::conj(x(k, r)) * x(k, c);
      out(r, c) = s;
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t br = b.rows(), bc = b.cols();
  ComplexMatrix out(a.rows() * br, a.cols() * bc);
#pragma omp parallel for schedule(static) if (out.rows() * out.cols() > kParallelWork)
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l) out(i * br + k, j * bc + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix partial_transpose_a(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b) {
  require_bipartite(m, d_a, d_b);
  ComplexMatrix out(m.rows(), m.cols());
  // <jk|out|j'k'> = <j'k|in|jk'>
#pragma omp parallel for schedule(static) if (m.rows() * m.cols() > kParallelWork)
  for (std::size_t j = 0; j < d_a; ++j)
    for (std::size_t k = 0; k < d_b; ++k)
      for (std::size_t jp = 0; jp < d_a; ++jp)
        for (std::size_t kp = 0; kp < d_b; ++kp)
          out(j * d_b + k, jp * d_b + kp) = m(jp * d_b + k, j * d_b + kp);
  return out;
}

double entrywise_l1(const ComplexMatrix& m) {
  std::vector<double> row_sum(m.rows(), 0.0);
#pragma omp parallel for schedule(static) if (m.rows() * m.cols() > kParallelWork)
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += std::abs(m(r, c));
    row_sum[r] = s;
  }
  double total = 0.0;
  for (double s : row_sum) total += s;
  return total;
}

namespace serial {

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_inner(a, b);
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx ark = a(r, k);
      if (ark == cplx{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

ComplexMatrix gram(const ComplexMatrix& x) {
  ComplexMatrix out(x.cols(), x.cols());
  for (std::size_t r = 0; r < x.cols(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < x.rows(); ++k) s += std::conj(x(k, r)) * x(k, c);
      out(r, c) = s;
    }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMatrix partial_transpose_a(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b) {
  require_bipartite(m, d_a, d_b);
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t j = 0; j < d_a; ++j)
    for (std::size_t k = 0; k < d_b; ++k)
      for (std::size_t jp = 0; jp < d_a; ++jp)
        for (std::size_t kp = 0; kp < d_b; ++kp)
          out(j * d_b + k, jp * d_b + kp) = m(jp * d_b + k, j * d_b + kp);
  return out;
}

double entrywise_l1(const ComplexMatrix& m) {
  double total = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += std::abs(m(r, c));
    total += s;
  }
  return total;
}

}  // namespace serial

}  // namespace pairinglab::kernels
