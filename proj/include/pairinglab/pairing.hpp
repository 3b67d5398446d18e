#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pairinglab/linalg.hpp"

namespace pairinglab {

/// Relative presence threshold used by the detector: an entry of ρ^T_A counts
/// when its modulus exceeds zero_tol · (largest entry modulus).
inline constexpr double kDefaultPairingTol = 1e-10;

/// Product-basis label |jk>.
struct Label {
  std::size_t j;
  std::size_t k;
  auto operator<=>(const Label&) const = default;
};

struct Transposition {
  Label first;
  Label second;
};

/// Witness that ρ^T_A = Σ a_{jk} |jk><π(jk)| with π a product of disjoint
/// transpositions obeying the side conditions (j ≠ j', k ≠ k', and jk', j'k
/// fixed with positive weight).
struct PairingCertificate {
  std::vector<Transposition> transpositions;
  std::vector<Label> fixed_points;  // labels with a_{jk} > 0 and π(jk) = jk

  std::size_t pairing_number() const noexcept { return transpositions.size(); }
  /// Checks the structural invariants of the certificate on its own.
  bool well_formed() const;
};

std::optional<PairingCertificate> detect_canonical_pairing(const BipartiteState& bs,
                                                           double zero_tol = kDefaultPairingTol);

/// pairing_number ≤ d_A(d_A − 1)/2.
bool pairing_number_bound_check(const PairingCertificate& cert, std::size_t d_a);

/// Support labels of the nonzero diagonal have pairwise distinct A labels and
/// pairwise distinct B labels, i.e. ρ is canonically maximally correlated.
bool has_canonical_mc_structure(const BipartiteState& bs, double zero_tol = kDefaultPairingTol);

/// Checks that |ρ^T_A| is diagonal and |ρ^T_A|^T_A ≥ 0, then returns
/// E_PPT = N_L. Throws ConditionViolated when the certificate does not fit.
double ppt_cost_condition(const BipartiteState& bs, const PairingCertificate& cert);

/// One entangled summand of the qubit–qudit form: a two-qubit canonical MC
/// state supported on |0 b0>, |1 b1> of the full space.
struct QubitQuditBlock {
  double p;
  BipartiteState rho;  // 2×2, local B index 0 ↔ b0, 1 ↔ b1
  std::size_t b0;
  std::size_t b1;
};

struct QubitQuditDecomposition {
  std::size_t d_b = 0;
  double p0 = 0.0;
  std::optional<DensityMatrix> diag_block;  // on C² ⊗ span{diag_columns}
  std::vector<std::size_t> diag_columns;
  std::vector<QubitQuditBlock> blocks;

  /// ⊕_j p_j ρ_j placed back on C² ⊗ C^{d_B}.
  ComplexMatrix reassemble() const;
};

QubitQuditDecomposition qubit_qudit_decompose(const BipartiteState& bs, double zero_tol = kDefaultPairingTol);

/// Distillable entanglement and entanglement cost of a qubit–qudit pairing
/// state, with their coherence counterparts and the PPT exact cost.
struct PairingMeasures {
  double e_d;
  double c_d;
  double e_c;
  double c_c;
  double e_ppt;
};

PairingMeasures pairing_measures(const QubitQuditDecomposition& dec);

struct DistillWitness {
  ComplexMatrix projector;     // (|j><j| + |j'><j'|) ⊗ (|k><k| + |k'><k'|)
  ComplexMatrix block;         // PρP, subnormalized, full dimension
  double weight;               // tr(PρP)
  BipartiteState two_qubit;    // PρP restricted to the 2×2 subspace, renormalized
  double block_negativity;
};

DistillWitness distill_witness(const BipartiteState& bs, const PairingCertificate& cert, std::size_t which);

/// Σ_j p_j [S(ρ̃_j^diag) − S(ρ̃_j)] over the local projections onto the given
/// two-element A subsets; projections with p_j ≤ zero_tol are dropped.
double distillable_lower_bound(const BipartiteState& bs, const PairingCertificate& cert,
                               std::span<const std::pair<std::size_t, std::size_t>> a_pairs,
                               double zero_tol = kDefaultPairingTol);

}  // namespace pairinglab
