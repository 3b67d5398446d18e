#pragma once

// Data-parallel matrix kernels. The default namespace holds the OpenMP
// versions; `kernels::serial` keeps the straightforward loops they are tested
// and benchmarked against. Both produce bit-identical results: the parallel
// versions only split the outer loop, never the accumulation order.

#include <cstddef>

#include "pairinglab/matrix.hpp"

namespace pairinglab::kernels {

/// Below this many complex multiply-adds the OpenMP region is not entered.
inline constexpr std::size_t kParallelWork = 1u << 15;

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
/// X†X without forming X†.
ComplexMatrix gram(const ComplexMatrix& x);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// Transpose on the first tensor factor; index convention j·d_B + k.
ComplexMatrix partial_transpose_a(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b);
double entrywise_l1(const ComplexMatrix& m);

namespace serial {
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix gram(const ComplexMatrix& x);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix partial_transpose_a(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b);
double entrywise_l1(const ComplexMatrix& m);
}  // namespace serial

/// Number of OpenMP threads available (1 when built without OpenMP).
int max_threads() noexcept;

}  // namespace pairinglab::kernels
