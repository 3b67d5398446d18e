#include "pairinglab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pairinglab/error.hpp"

namespace pairinglab {

void MeasureReport::set(const std::string& name, double value, std::string formula) {
  entries_[name] = MeasureEntry{value, std::move(formula)};
}

double MeasureReport::at(const std::string& name) const {
  const auto it = entries_.find(name);
  if (it == entries_.end()) throw Error(Errc::UnknownName, "no measure named " + name);
  return it->second.value;
}

bool MeasureReport::consistent() const {
  for (const auto& [name, e] : entries_)
    if (e.value < -1e-9) return false;
  if (contains("C_l1") && contains("C_L") && std::abs(at("C_L") - std::log2(1.0 + at("C_l1"))) > 1e-12) return false;
  if (contains("N") && contains("N_L") && std::abs(at("N_L") - std::log2(1.0 + at("N"))) > 1e-12) return false;
  return true;
}

SchmidtVector::SchmidtVector(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) throw Error(Errc::OutOfRange, "empty Schmidt vector");
  for (double l : lambdas_)
    if (!(l >= 0.0)) throw Error(Errc::OutOfRange, "Schmidt coefficients must be nonnegative");
  if (std::abs(std::accumulate(lambdas_.begin(), lambdas_.end(), 0.0) - 1.0) > 1e-9)
    throw Error(Errc::OutOfRange, "Schmidt coefficients must sum to 1");
  std::sort(lambdas_.begin(), lambdas_.end(), std::greater<>());
}

SchmidtVector SchmidtVector::of_pure_state(std::span<const cplx> psi, std::size_t d_a, std::size_t d_b) {
  if (psi.size() != d_a * d_b) throw Error(Errc::DimensionMismatch, "state vector length is not d_A*d_B");
  const ComplexMatrix coeff(d_a, d_b, std::vector<cplx>(psi.begin(), psi.end()));
  auto sv = singular_values(coeff);
  for (auto& s : sv) s *= s;
  return SchmidtVector(std::move(sv));
}

double c_l1(const DensityMatrix& rho) {
  double s = 0.0;
  for (std::size_t r = 0; r < rho.dim(); ++r)
    for (std::size_t c = 0; c < rho.dim(); ++c)
      if (r != c) s += std::abs(rho(r, c));
  return s;
}

double c_log(const DensityMatrix& rho) { return std::log2(1.0 + c_l1(rho)); }

double c_rel_entropy(const DensityMatrix& rho) {
  std::vector<double> diag(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) diag[i] = rho(i, i).real();
  return shannon_entropy(diag) - von_neumann_entropy(rho);
}

bool c_l1_within_bound(const DensityMatrix& rho) {
  return c_l1(rho) <= static_cast<double>(rho.dim() - 1) + std::max(1e-9, rho.validation_tol());
}

Negativity negativity(const BipartiteState& bs) {
  const double n = trace_norm(partial_transpose(bs)) - 1.0;
  return {n, std::log2(1.0 + n)};
}

double schmidt_negativity(const SchmidtVector& sv) {
  double s = 0.0;
  for (double l : sv.lambdas()) s += std::sqrt(l);
  return s * s - 1.0;
}

double default_zero_tol(const ComplexMatrix& m) { return 1e-10 * std::max(1.0, m.max_abs()); }

std::size_t n0_count(const BipartiteState& bs, std::optional<double> zero_tol) {
  const ComplexMatrix pt = partial_transpose(bs);
  const double tol = zero_tol.value_or(default_zero_tol(pt));
  const auto ev = hermitian_eigenvalues(pt);
  return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [&](double l) { return l < -tol; }));
}

std::size_t c_l0_count(const DensityMatrix& rho, std::optional<double> zero_tol) {
  const double tol = zero_tol.value_or(default_zero_tol(rho.mat()));
  std::size_t count = 0;
  for (std::size_t r = 0; r < rho.dim(); ++r)
    for (std::size_t c = 0; c < rho.dim(); ++c)
      if (r != c && std::abs(rho(r, c)) > tol) ++count;
  return count;
}

MeasureReport measure_report(const DensityMatrix& rho) {
  MeasureReport report;
  const double l1 = c_l1(rho);
  report.set("C_l1", l1, "sum_{j!=k} |rho_jk|");
  report.set("C_L", std::log2(1.0 + l1), "log2(1 + C_l1)");
  report.set("C_r", c_rel_entropy(rho), "S(rho_diag) - S(rho)");
  return report;
}

MeasureReport measure_report(const BipartiteState& bs, std::optional<double> zero_tol) {
  MeasureReport report = measure_report(bs.state());
  const auto neg = negativity(bs);
  report.set("N", neg.n, "||rho^T_A||_1 - 1");
  report.set("N_L", neg.n_log, "log2(1 + N)");
  report.set("N0", static_cast<double>(n0_count(bs, zero_tol)), "#{eig(rho^T_A) < -zero_tol}");
  report.set("C_l0", static_cast<double>(c_l0_count(bs.state(), zero_tol)), "#{j!=k : |rho_jk| > zero_tol}");
  return report;
}

}  // namespace pairinglab
