#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "pairinglab/error.hpp"
#include "pairinglab/measures.hpp"
#include "pairinglab/pairing.hpp"
#include "pairinglab/randgen.hpp"
#include "../test_support.hpp"

using namespace pairinglab;
using namespace pairinglab::testing;

namespace {

// Two-qubit MC blocks [[a,c],[c,b]] placed at |0 b0>,|1 b1> of C²⊗C^{d_b}.
struct Placed {
  double a, b, c;
  std::size_t b0, b1;
};

BipartiteState qubit_qudit(std::size_t d_b, const std::vector<Placed>& blocks,
                           const std::vector<std::pair<std::size_t, double>>& diag = {}) {
  ComplexMatrix m(2 * d_b, 2 * d_b);
  for (const auto& p : blocks) {
    const std::size_t u = p.b0, v = d_b + p.b1;
    m(u, u) += p.a;
    m(v, v) += p.b;
    m(u, v) += p.c;
    m(v, u) += p.c;
  }
  for (const auto& [i, w] : diag) m(i, i) += w;
  return BipartiteState(DensityMatrix(m), 2, d_b);
}

}  // namespace

TEST_CASE("detector: diagonal state gives empty certificate") {
  Rng rng(3);
  for (auto [da, db] : {std::pair{2, 2}, {2, 3}, {3, 3}, {4, 2}}) {
    const auto bs = diagonal_state(da, db, rng);
    const auto cert = detect_canonical_pairing(bs);
    REQUIRE(cert);
    CHECK(cert->pairing_number() == 0);
    CHECK(cert->fixed_points.size() == static_cast<std::size_t>(da * db));
    CHECK(cert->well_formed());
  }
}

TEST_CASE("detector: MC example") {
  const auto cert = detect_canonical_pairing(mc_example());
  REQUIRE(cert);
  REQUIRE(cert->pairing_number() == 1);
  const auto& t = cert->transpositions[0];
  CHECK(t.first == Label{0, 1});
  CHECK(t.second == Label{1, 0});
  CHECK(cert->fixed_points == std::vector<Label>{{0, 0}, {1, 1}});
  CHECK(cert->well_formed());
}

TEST_CASE("detector: isotropic mixtures only at the endpoints") {
  auto iso = [](double p) {
    ComplexMatrix m = ComplexMatrix::identity(4);
    m *= (1 - p) / 4;
    m(0, 0) += p / 2;
    m(3, 3) += p / 2;
    m(0, 3) += p / 2;
    m(3, 0) += p / 2;
    return BipartiteState(DensityMatrix(m), 2, 2);
  };
  for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) CHECK_FALSE(detect_canonical_pairing(iso(p)));
  CHECK(detect_canonical_pairing(iso(0.0)));
  CHECK(detect_canonical_pairing(iso(1.0)));
}

TEST_CASE("detector: rejects states whose partial transpose has a long cycle or full rows") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto rho = ginibre_density(6, 3, rng);
    CHECK_FALSE(detect_canonical_pairing(BipartiteState(rho, 2, 3)));
  }
  // Coherence between |00> and |01> lands on the diagonal block of the
  // partial transpose as a same-A-label swap.
  ComplexMatrix m(4, 4);
  m(0, 0) = m(1, 1) = 0.5;
  m(0, 1) = m(1, 0) = 0.2;
  CHECK_FALSE(detect_canonical_pairing(BipartiteState(DensityMatrix(m), 2, 2)));
}

TEST_CASE("detector: completeness on the generated family") {
  Rng root(2024);
  std::size_t trial = 0;
  for (std::size_t da = 2; da <= 4; ++da)
    for (std::size_t db = 2; db <= 4; ++db) {
      const std::size_t top = pairing_number_upper_bound(da, db);
      for (std::size_t n = 0; n <= top; ++n)
        for (int rep = 0; rep < 4; ++rep) {
          Rng rng = root.split(trial++);
          BipartiteState bs = [&] {
            try {
              return random_canonical_pairing(da, db, n, rng);
            } catch (const Error& e) {
              REQUIRE(e.code() == Errc::Infeasible);
              return diagonal_state(da, db, rng);
            }
          }();
          const auto cert = detect_canonical_pairing(bs);
          REQUIRE(cert);
          CHECK(cert->well_formed());
          const Negativity neg = negativity(bs);
          CHECK(std::abs(neg.n - c_l1(bs.state())) <= 1e-9 * static_cast<double>(bs.dim()));
          if (da == db) CHECK(pairing_number_bound_check(*cert, da));
          if (da == db && cert->pairing_number() == da * (da - 1) / 2 && da > 1)
            CHECK(has_canonical_mc_structure(bs));
          for (std::size_t w = 0; w < cert->pairing_number(); ++w)
            CHECK(distill_witness(bs, *cert, w).block_negativity > 1e-6);
          CHECK(ppt_cost_condition(bs, *cert) == doctest::Approx(neg.n_log).epsilon(1e-12));
        }
    }
}

TEST_CASE("detector: generator hits the requested pairing number") {
  Rng root(77);
  for (std::size_t n = 0; n <= 3; ++n) {
    Rng rng = root.split(n);
    const auto bs = random_canonical_pairing(3, 3, n, rng);
    const auto cert = detect_canonical_pairing(bs);
    REQUIRE(cert);
    CHECK(cert->pairing_number() == n);
  }
}

TEST_CASE("pairing number bound") {
  PairingCertificate one{{{{0, 1}, {1, 0}}}, {{0, 0}, {1, 1}}};
  CHECK(pairing_number_bound_check(one, 2));
  PairingCertificate two = one;
  two.transpositions.push_back({{0, 0}, {1, 1}});
  CHECK_FALSE(pairing_number_bound_check(two, 2));

  // Schmidt rank 3 pure state saturates the 3×3 bound.
  const double l[3] = {0.5, 0.3, 0.2};
  ComplexMatrix m(9, 9);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) m(4 * a, 4 * b) = std::sqrt(l[a] * l[b]);
  const BipartiteState pure(DensityMatrix(m), 3, 3);
  const auto cert = detect_canonical_pairing(pure);
  REQUIRE(cert);
  CHECK(cert->pairing_number() == 3);
  CHECK(pairing_number_bound_check(*cert, 3));
  CHECK(has_canonical_mc_structure(pure));
  CHECK_FALSE(has_canonical_mc_structure(qubit_qudit(3, {{0.3, 0.3, 0.2, 0, 1}}, {{2, 0.4}})));
}

TEST_CASE("PPT cost condition") {
  auto check = [](const BipartiteState& bs, double expect) {
    const auto cert = detect_canonical_pairing(bs);
    REQUIRE(cert);
    CHECK(ppt_cost_condition(bs, *cert) == doctest::Approx(expect).epsilon(1e-12));
  };
  check(bell_state(), 1.0);
  Rng rng(5);
  check(diagonal_state(3, 2, rng), 0.0);
  check(mc_example(), std::log2(1.6));

  // A certificate naming a transposition the state does not have.
  PairingCertificate wrong{{{{0, 1}, {1, 0}}}, {{0, 0}, {1, 1}}};
  CHECK_THROWS_AS(ppt_cost_condition(diagonal_state(2, 2, rng), wrong), Error);
}

TEST_CASE("qubit-qudit decomposition") {
  SUBCASE("two MC blocks") {
    const auto bs = qubit_qudit(4, {{0.25, 0.25, 0.2, 0, 1}, {0.3, 0.2, 0.1, 2, 3}});
    const auto dec = qubit_qudit_decompose(bs);
    CHECK(dec.p0 == 0.0);
    CHECK_FALSE(dec.diag_block);
    REQUIRE(dec.blocks.size() == 2);
    double total = 0.0;
    for (const auto& b : dec.blocks) {
      total += b.p;
      CHECK(has_canonical_mc_structure(b.rho));
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(max_abs_diff(dec.reassemble(), bs.mat()) <= 1e-12);
  }
  SUBCASE("diagonal 2x3") {
    Rng rng(8);
    const auto bs = diagonal_state(2, 3, rng);
    const auto dec = qubit_qudit_decompose(bs);
    CHECK(dec.p0 == doctest::Approx(1.0));
    CHECK(dec.blocks.empty());
    CHECK(max_abs_diff(dec.reassemble(), bs.mat()) <= 1e-12);
  }
  SUBCASE("mixed blocks and diagonal part") {
    const auto bs = qubit_qudit(5, {{0.2, 0.1, 0.12, 3, 1}}, {{0, 0.3}, {5 + 2, 0.25}, {4, 0.15}});
    const auto dec = qubit_qudit_decompose(bs);
    REQUIRE(dec.blocks.size() == 1);
    CHECK(dec.blocks[0].b0 == 3);
    CHECK(dec.blocks[0].b1 == 1);
    CHECK(dec.p0 == doctest::Approx(0.7));
    CHECK(dec.diag_columns == std::vector<std::size_t>{0, 2, 4});
    CHECK(max_abs_diff(dec.reassemble(), bs.mat()) <= 1e-12);
  }
  SUBCASE("errors") {
    ComplexMatrix m(9, 9);
    m(0, 0) = 1.0;
    CHECK_THROWS_WITH_AS(qubit_qudit_decompose(BipartiteState(DensityMatrix(m), 3, 3)), doctest::Contains("NotQubit"),
                         Error);
    Rng rng(1);
    const auto rho = ginibre_density(4, 4, rng);
    try {
      qubit_qudit_decompose(BipartiteState(rho, 2, 2));
      FAIL("expected NotCanonicalPairing");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotCanonicalPairing);
    }
  }
  SUBCASE("round trip on generated states") {
    Rng root(99);
    for (std::uint64_t i = 0; i < 200; ++i) {
      Rng rng = root.split(i);
      const std::size_t db = 2 + rng.below(4);
      const std::size_t n = rng.below(pairing_number_upper_bound(2, db) + 1);
      const auto bs = random_canonical_pairing(2, db, n, rng);
      const auto dec = qubit_qudit_decompose(bs);
      CHECK(dec.blocks.size() == n);
      CHECK(max_abs_diff(dec.reassemble(), bs.mat()) <= 1e-9);
      const auto pm = pairing_measures(dec);
      CHECK(pm.e_d <= pm.e_ppt + 1e-9);
      CHECK(pm.e_d <= pm.e_c + 1e-9);
      const std::pair<std::size_t, std::size_t> pairs[] = {{0, 1}};
      CHECK(distillable_lower_bound(bs, *detect_canonical_pairing(bs), pairs) ==
            doctest::Approx(pm.e_d).epsilon(1e-9));
    }
  }
}

TEST_CASE("pairing measures closed forms") {
  SUBCASE("Bell") {
    const auto pm = pairing_measures(qubit_qudit_decompose(bell_state()));
    CHECK(pm.e_d == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pm.c_d == pm.e_d);
    CHECK(pm.e_c == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pm.c_c == pm.e_c);
    CHECK(pm.e_ppt == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("MC example") {
    const auto pm = pairing_measures(qubit_qudit_decompose(mc_example()));
    CHECK(pm.e_d == doctest::Approx(0.2780719051126377).epsilon(1e-12));
    CHECK(pm.e_c == doctest::Approx(0.4689955935892811).epsilon(1e-12));
    CHECK(pm.e_ppt == doctest::Approx(0.6780719051126377).epsilon(1e-12));
  }
  SUBCASE("diagonal") {
    Rng rng(4);
    const auto pm = pairing_measures(qubit_qudit_decompose(diagonal_state(2, 4, rng)));
    CHECK(pm.e_d == doctest::Approx(0.0));
    CHECK(pm.e_c == 0.0);
    CHECK(pm.e_ppt == doctest::Approx(0.0));
  }
}

TEST_CASE("distillation witness") {
  SUBCASE("MC example") {
    const auto bs = mc_example();
    const auto w = distill_witness(bs, *detect_canonical_pairing(bs), 0);
    CHECK(max_abs_diff(w.projector, ComplexMatrix::identity(4)) == 0.0);
    CHECK(max_abs_diff(w.block, bs.mat()) <= 1e-15);
    CHECK(w.weight == doctest::Approx(1.0));
    CHECK(w.block_negativity == doctest::Approx(0.6).epsilon(1e-12));
  }
  SUBCASE("Bell with spectator") {
    ComplexMatrix m(9, 9);
    m(0, 0) = m(4, 4) = m(0, 4) = m(4, 0) = 0.4;
    m(8, 8) = 0.2;
    const BipartiteState bs(DensityMatrix(m), 3, 3);
    const auto cert = detect_canonical_pairing(bs);
    REQUIRE(cert);
    REQUIRE(cert->pairing_number() == 1);
    const auto w = distill_witness(bs, *cert, 0);
    CHECK(w.weight == doctest::Approx(0.8));
    CHECK(w.block_negativity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_abs_diff(w.two_qubit.mat(), bell_state().mat()) <= 1e-12);
    CHECK(w.block(8, 8) == cplx(0.0));
  }
  SUBCASE("errors") {
    Rng rng(2);
    const auto bs = diagonal_state(2, 2, rng);
    const auto cert = *detect_canonical_pairing(bs);
    try {
      distill_witness(bs, cert, 0);
      FAIL("expected NoTransposition");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NoTransposition);
    }
    const auto mc = mc_example();
    CHECK_THROWS_AS(distill_witness(mc, *detect_canonical_pairing(mc), 1), Error);
  }
}

TEST_CASE("distillable lower bound") {
  using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;
  SUBCASE("diagonal") {
    Rng rng(6);
    const auto bs = diagonal_state(4, 3, rng);
    const Pairs pairs{{0, 1}, {2, 3}};
    CHECK(distillable_lower_bound(bs, *detect_canonical_pairing(bs), pairs) == doctest::Approx(0.0));
  }
  SUBCASE("two Bell-like blocks") {
    // 0.6·MC on |00>,|11> plus 0.4·MC on |22>,|33>.
    ComplexMatrix m(16, 16);
    auto place = [&](std::size_t u, std::size_t v, double a, double b, double c) {
      m(u, u) = a;
      m(v, v) = b;
      m(u, v) = m(v, u) = c;
    };
    place(0, 5, 0.3, 0.3, 0.25);
    place(10, 15, 0.25, 0.15, 0.1);
    const BipartiteState bs(DensityMatrix(m), 4, 4);
    const auto cert = detect_canonical_pairing(bs);
    REQUIRE(cert);
    const Pairs pairs{{0, 1}, {2, 3}};
    const double got = distillable_lower_bound(bs, *cert, pairs);
    auto block_term = [](double p, double a, double b, double c) {
      ComplexMatrix s(4, 4);
      s(0, 0) = a / p;
      s(3, 3) = b / p;
      s(0, 3) = s(3, 0) = c / p;
      return p * c_rel_entropy(DensityMatrix(s));
    };
    CHECK(got == doctest::Approx(block_term(0.6, 0.3, 0.3, 0.25) + block_term(0.4, 0.25, 0.15, 0.1)).epsilon(1e-12));
    CHECK(got <= negativity(bs).n_log + 1e-9);
  }
  SUBCASE("invalid partitions") {
    const auto bs = mc_example();
    const auto cert = *detect_canonical_pairing(bs);
    for (const Pairs& bad : {Pairs{{0, 0}}, Pairs{{0, 2}}, Pairs{{0, 1}, {1, 0}}}) {
      try {
        distillable_lower_bound(bs, cert, bad);
        FAIL("expected InvalidPartition");
      } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidPartition);
      }
    }
  }
  SUBCASE("never exceeds log-negativity") {
    Rng root(31);
    for (std::uint64_t i = 0; i < 100; ++i) {
      Rng rng = root.split(i);
      const std::size_t da = 2 + rng.below(3), db = 2 + rng.below(3);
      std::size_t n = rng.below(pairing_number_upper_bound(da, db) + 1);
      const auto bs = [&] {
        for (;; --n) {
          try {
            return random_canonical_pairing(da, db, n, rng);
          } catch (const Error&) {
          }
        }
      }();
      Pairs pairs;
      for (std::size_t a = 0; a + 1 < da; a += 2) pairs.push_back({a, a + 1});
      CHECK(distillable_lower_bound(bs, *detect_canonical_pairing(bs), pairs) <= negativity(bs).n_log + 1e-9);
    }
  }
}
