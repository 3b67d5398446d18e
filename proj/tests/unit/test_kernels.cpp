#include <doctest.h>

#include "pairinglab/kernels.hpp"
#include "test_support.hpp"

using namespace pairinglab;
using namespace pairinglab::testing;

// The OpenMP kernels must agree with the serial references bit for bit, both
// below and above the parallel work threshold.
TEST_CASE("parallel kernels match serial references") {
  Rng rng(99);
  for (std::size_t n : {1u, 3u, 8u, 17u, 40u, 72u}) {
    CAPTURE(n);
    const ComplexMatrix a = random_complex(n, n, rng);
    const ComplexMatrix b = random_complex(n, n, rng);
    CHECK(kernels::multiply(a, b) == kernels::serial::multiply(a, b));
    CHECK(kernels::gram(a) == kernels::serial::gram(a));
    CHECK(kernels::entrywise_l1(a) == kernels::serial::entrywise_l1(a));
    const ComplexMatrix small = random_complex(1 + n % 5, 2, rng);
    CHECK(kernels::kron(a, small) == kernels::serial::kron(a, small));
  }
  for (auto [da, db] : {std::pair<std::size_t, std::size_t>{2, 3}, {4, 4}, {8, 9}, {16, 12}}) {
    const ComplexMatrix m = random_complex(da * db, da * db, rng);
    CHECK(kernels::partial_transpose_a(m, da, db) == kernels::serial::partial_transpose_a(m, da, db));
  }
}

TEST_CASE("multiply against hand-computed product") {
  const ComplexMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const ComplexMatrix b{{cplx(0, 1), 0.0}, {1.0, -1.0}};
  const ComplexMatrix expected{{cplx(2, 1), -2.0}, {cplx(4, 3), -4.0}};
  CHECK(kernels::multiply(a, b) == expected);
  CHECK(kernels::gram(a) == kernels::multiply(a.adjoint(), a));
}

TEST_CASE("kernels reject incompatible shapes") {
  CHECK_THROWS(kernels::multiply(ComplexMatrix(2, 3), ComplexMatrix(2, 3)));
  CHECK_THROWS(kernels::partial_transpose_a(ComplexMatrix(6, 6), 2, 2));
}
