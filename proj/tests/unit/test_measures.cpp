#include <doctest.h>

#include <cmath>

#include "pairinglab/error.hpp"
#include "pairinglab/measures.hpp"
#include "test_support.hpp"

using namespace pairinglab;
using namespace pairinglab::testing;
using doctest::Approx;

TEST_CASE("l1-norm of coherence") {
  Rng rng(1);
  CHECK(c_l1(diagonal_state(2, 3, rng).state()) == 0.0);
  CHECK(c_l1(plus_state()) == Approx(1.0));
  CHECK(c_l1_within_bound(plus_state()));
  CHECK(c_l1(mc_example().state()) == Approx(0.6));
  CHECK(c_l1(mc_example().state()) <= 3.0);
}

TEST_CASE("logarithmic coherence and additivity") {
  Rng rng(2);
  CHECK(c_log(diagonal_state(2, 2, rng).state()) == 0.0);
  CHECK(c_log(plus_state()) == Approx(1.0));
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng.below(4), n = 1 + rng.below(4);
    const auto rho = ginibre_density(m, 1 + rng.below(m), rng);
    const auto sigma = ginibre_density(n, 1 + rng.below(n), rng);
    REQUIRE(std::abs(c_log(tensor_product(rho, sigma)) - c_log(rho) - c_log(sigma)) <= 1e-9);
  }
}

TEST_CASE("relative entropy of coherence") {
  Rng rng(3);
  CHECK(c_rel_entropy(diagonal_state(3, 1, rng).state()) == Approx(0.0).scale(1.0));
  CHECK(c_rel_entropy(plus_state()) == Approx(1.0));
  CHECK(c_rel_entropy(mc_example().state()) == Approx(1.0 - 0.7219280948873623).epsilon(1e-12));
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = ginibre_density(4, 1 + rng.below(4), rng);
    REQUIRE(c_rel_entropy(rho) >= -1e-9);
    REQUIRE(c_l1(dephase(rho)) == 0.0);
    REQUIRE(std::abs(c_rel_entropy(dephase(rho))) <= 1e-12);
  }
}

TEST_CASE("negativity closed cases") {
  Rng rng(4);
  const auto diag = negativity(diagonal_state(2, 3, rng));
  CHECK(diag.n == Approx(0.0).scale(1.0));
  CHECK(diag.n_log == Approx(0.0).scale(1.0));
  const auto bell = negativity(bell_state());
  CHECK(bell.n == Approx(1.0).epsilon(1e-14));
  CHECK(bell.n_log == Approx(1.0).epsilon(1e-14));
  const ComplexMatrix iso = 0.5 * bell_state().mat() + 0.125 * ComplexMatrix::identity(4);
  CHECK(negativity(BipartiteState(DensityMatrix(iso), 2, 2)).n == Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(BipartiteState(ginibre_density(6, 2, rng), 4, 2), Error);
}

TEST_CASE("Schmidt-form negativity") {
  CHECK(schmidt_negativity(SchmidtVector({1.0})) == 0.0);
  CHECK(schmidt_negativity(SchmidtVector({0.5, 0.5})) == Approx(1.0));
  CHECK(schmidt_negativity(SchmidtVector({0.5, 0.3, 0.2})) == Approx(1.8969501498317949).epsilon(1e-14));
  CHECK_THROWS_AS(SchmidtVector({0.5, 0.2}), Error);
  CHECK_THROWS_AS(SchmidtVector({1.5, -0.5}), Error);
}

TEST_CASE("pure-state negativity equals the Schmidt formula") {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t da = 1 + rng.below(4), db = 1 + rng.below(4);
    const auto psi = haar_random_pure(da * db, rng);
    const BipartiteState bs(DensityMatrix(ComplexMatrix::outer(psi)), da, db);
    const auto sv = SchmidtVector::of_pure_state(psi, da, db);
    REQUIRE(std::abs(negativity(bs).n - schmidt_negativity(sv)) <= 1e-8);
  }
}

TEST_CASE("counters N0 and C_l0") {
  Rng rng(6);
  const auto diag = diagonal_state(3, 3, rng);
  CHECK(n0_count(diag) == 0);
  CHECK(c_l0_count(diag.state()) == 0);
  CHECK(n0_count(mc_example()) == 1);
  CHECK(c_l0_count(mc_example().state()) == 2);
  const DensityMatrix pp = tensor_product(plus_state(), plus_state());
  CHECK(c_l0_count(pp) == 12);

  // Pure state of Schmidt rank r has r(r−1)/2 negative partial-transpose eigenvalues.
  for (std::size_t r = 1; r <= 4; ++r) {
    std::vector<cplx> psi(16);
    for (std::size_t i = 0; i < r; ++i) psi[i * 4 + i] = std::sqrt(1.0 / static_cast<double>(r));
    const BipartiteState bs(DensityMatrix(ComplexMatrix::outer(psi)), 4, 4);
    CHECK(n0_count(bs) == r * (r - 1) / 2);
  }
}

TEST_CASE("negativity never exceeds C_l1 and C_l0 ≥ 2 N0") {
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t da = 1 + rng.below(4), db = 1 + rng.below(4);
    const auto rho = ginibre_density(da * db, 1 + rng.below(da * db), rng);
    const BipartiteState bs(rho, da, db);
    REQUIRE(negativity(bs).n <= c_l1(rho) + 1e-9);
    REQUIRE(c_l0_count(rho) >= 2 * n0_count(bs));
  }
}

TEST_CASE("measure report") {
  const auto report = measure_report(bell_state());
  CHECK(report.at("C_l1") == Approx(1.0));
  CHECK(report.at("N") == Approx(1.0));
  CHECK(report.at("N0") == 1.0);
  CHECK(report.at("C_l0") == 2.0);
  CHECK(report.consistent());
  CHECK_FALSE(report.entries().at("N").formula.empty());
  CHECK_THROWS_AS(report.at("E_R"), Error);
  const auto uni = measure_report(plus_state());
  CHECK_FALSE(uni.contains("N"));
  CHECK(uni.at("C_r") == Approx(1.0));
}
