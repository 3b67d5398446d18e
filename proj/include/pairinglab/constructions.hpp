#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pairinglab/linalg.hpp"

namespace pairinglab {

/// ρ = Σ c_rs |j_r k_r><j_s k_s| with injective label lists.
struct MCSpec {
  ComplexMatrix coeffs;
  std::vector<std::size_t> a_labels;
  std::vector<std::size_t> b_labels;
};

BipartiteState make_mc_state(const MCSpec& spec, std::size_t d_a, std::size_t d_b);

/// Two-qubit MC coefficients placed on |0 b0>, |1 b1>.
struct QubitQuditBlockSpec {
  double p;
  ComplexMatrix coeffs;  // 2×2
  std::size_t b0;
  std::size_t b1;
};

/// p0·diag ⊕ Σ p_j ρ_j on C² ⊗ C^{d_B}. `diag` is a distribution over all
/// 2·d_B product labels (index j·d_B + k) and must vanish on block columns;
/// it is ignored when p0 = 0.
BipartiteState make_qubit_qudit_pairing(std::size_t d_b, double p0, std::span<const double> diag,
                                        std::span<const QubitQuditBlockSpec> blocks);

/// Σ ρ_jk |jj><kk| on C^d ⊗ C^d.
BipartiteState cnot_embed(const DensityMatrix& rho);

struct AppendixAReport {
  bool k_valid = false;           // K ≥ 2d and L | K
  bool trace_below_one = false;   // tr M < 1
  bool multiset_match = false;    // off-diagonal entries of ρ₂ and ρ₃ agree
  bool abs_map = false;           // ρ₄ = |ρ₃| entrywise
  bool unitary_map = false;       // W ρ₃ W† = ρ₄ for the diagonal W built from V
  double multiset_max_dev = 0.0;
  std::size_t offdiag_count = 0;  // nonzero off-diagonal entries compared

  bool all() const noexcept { return k_valid && trace_below_one && multiset_match && abs_map && unitary_map; }
};

struct AppendixAChain {
  std::size_t d;
  std::size_t K;
  std::size_t L;
  cplx omega;
  DensityMatrix rho2;
  DensityMatrix rho3;
  DensityMatrix rho4;
  ComplexMatrix m1;                // I_{2K^{d-2}} ⊗ |ψ><ψ|
  ComplexMatrix m2;                // I_{2(K^{d-2}-1)/(K-1)} ⊗ |φ><φ|, empty when d = 2
  ComplexMatrix m3;                // (1/K) I_K ⊗ [[1,1],[1,1]]
  std::vector<double> weights;     // |ρ_jk| for j < k, row-major
  std::vector<cplx> v_diag;        // V = diag(ω^{-a})
  std::vector<cplx> w_diag;        // diagonal unitary with W ρ₃ W† = ρ₄
  double trace_m;
  AppendixAReport report;
};

inline constexpr std::size_t kAppendixADimCap = 4096;

/// Builds ρ₂, ρ₃, ρ₄ for a state whose off-diagonal phases are L-th roots of
/// unity and checks the structural invariants.
AppendixAChain appendix_a_chain(const DensityMatrix& rho, std::size_t L, std::size_t dim_cap = kAppendixADimCap);

/// How many nonzero off-diagonal entries of m lie within tol of value.
std::size_t offdiag_value_count(const ComplexMatrix& m, cplx value, double tol = 1e-10);

/// p|ψ><ψ| + (1 − p) I/(d_A d_B).
BipartiteState isotropic_state(double p, std::span<const cplx> psi, std::size_t d_a, std::size_t d_b);

struct Counterexample {
  std::string name;
  DensityMatrix state;
  std::vector<std::size_t> dims;          // {d} or {d_A, d_B}
  std::optional<ComplexMatrix> companion;  // τ(ρ) = |ρ| entrywise, tau-remark only

  BipartiteState bipartite() const;
};

/// tau-remark; appendix-f; isotropic with params {p} (Bell) or {p, d}
/// (maximally entangled on d×d).
Counterexample named_counterexample(std::string_view name, std::span<const double> params = {});

std::vector<std::string> counterexample_names();

}  // namespace pairinglab
