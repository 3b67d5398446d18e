#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "pairinglab/linalg.hpp"

namespace pairinglab {

/// Philox4x32-10 block function: one 128-bit counter and a 64-bit key in,
/// 128 pseudo-random bits out.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based generator state. The seed is the Philox key; the counter is
/// split into a 64-bit stream id (high words) and a 64-bit block index (low
/// words), so streams obtained from `split` never share a block.
class Rng {
 public:
  using result_type = std::uint32_t;
  static constexpr std::string_view algorithm = "philox4x32-10";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept : seed_(seed), stream_(stream) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Standard normal via Box–Muller; no cached second variate.
  double normal() noexcept;
  cplx complex_normal() noexcept;
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) noexcept;

  /// Independent child stream; deterministic in (this stream, id).
  Rng split(std::uint64_t id) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

/// Haar-distributed unit vector in C^d.
std::vector<cplx> haar_random_pure(std::size_t d, Rng& rng);

/// GG†/tr(GG†) for a d×rank complex Ginibre matrix G.
DensityMatrix ginibre_density(std::size_t d, std::size_t rank, Rng& rng);

/// Random point of the probability simplex (flat Dirichlet).
std::vector<double> random_simplex(std::size_t n, Rng& rng);

/// Phase times permutation; unitary with one nonzero per row and column.
ComplexMatrix random_monomial_unitary(std::size_t d, Rng& rng);

/// Canonical pairing state with exactly `n_pairs` transpositions in the
/// monomial partial transpose. Throws Infeasible when no placement exists.
BipartiteState random_canonical_pairing(std::size_t d_a, std::size_t d_b, std::size_t n_pairs, Rng& rng);

/// Largest pairing number allowed by the counting argument 2m + n ≤ d_A·d_B,
/// m ≤ n(n−1)/2, tightened to d_A(d_A−1)/2 when d_A = d_B.
std::size_t pairing_number_upper_bound(std::size_t d_a, std::size_t d_b);

}  // namespace pairinglab
