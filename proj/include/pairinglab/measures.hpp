#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pairinglab/linalg.hpp"

namespace pairinglab {

struct MeasureEntry {
  double value;
  std::string formula;  // which closed form produced the value
};

/// Named scalar results keyed by C_l1, C_L, C_r, N, N_L, N0, C_l0.
class MeasureReport {
 public:
  void set(const std::string& name, double value, std::string formula);
  bool contains(const std::string& name) const { return entries_.count(name) != 0; }
  double at(const std::string& name) const;
  const std::map<std::string, MeasureEntry>& entries() const noexcept { return entries_; }

  /// C_L = log2(1 + C_l1), N_L = log2(1 + N), everything ≥ −1e-9.
  bool consistent() const;

 private:
  std::map<std::string, MeasureEntry> entries_;
};

/// Schmidt coefficients λ_j (squared singular values), descending, Σλ = 1.
class SchmidtVector {
 public:
  explicit SchmidtVector(std::vector<double> lambdas);
  /// From the coefficient matrix of a bipartite pure state |ψ> = Σ ψ_{jk}|jk>.
  static SchmidtVector of_pure_state(std::span<const cplx> psi, std::size_t d_a, std::size_t d_b);

  const std::vector<double>& lambdas() const noexcept { return lambdas_; }

 private:
  std::vector<double> lambdas_;
};

struct Negativity {
  double n;
  double n_log;
};

double c_l1(const DensityMatrix& rho);
double c_log(const DensityMatrix& rho);
/// Relative entropy of coherence S(ρ^diag) − S(ρ).
double c_rel_entropy(const DensityMatrix& rho);
/// False when C_l1 exceeds d − 1 by more than the validation tolerance.
bool c_l1_within_bound(const DensityMatrix& rho);

Negativity negativity(const BipartiteState& bs);
double schmidt_negativity(const SchmidtVector& sv);

/// Default threshold for the integer-valued counters: 1e-10·max(1, max |entry|).
double default_zero_tol(const ComplexMatrix& m);
std::size_t n0_count(const BipartiteState& bs, std::optional<double> zero_tol = std::nullopt);
std::size_t c_l0_count(const DensityMatrix& rho, std::optional<double> zero_tol = std::nullopt);

MeasureReport measure_report(const DensityMatrix& rho);
MeasureReport measure_report(const BipartiteState& bs, std::optional<double> zero_tol = std::nullopt);

}  // namespace pairinglab
