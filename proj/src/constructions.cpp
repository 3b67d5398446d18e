#include "pairinglab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "pairinglab/error.hpp"

namespace pairinglab {

namespace {

constexpr double kPhaseFloor = 1e-12;
constexpr double kPhaseTol = 1e-9;
constexpr double kChainTol = 1e-10;

DensityMatrix coefficient_state(const ComplexMatrix& coeffs) {
  try {
    return DensityMatrix(coeffs);
  } catch (const Error& e) {
    throw Error(Errc::InvalidCoeffs, e.what());
  }
}

void require_injective(std::span<const std::size_t> labels, std::size_t bound, const char* side) {
  std::set<std::size_t> seen;
  for (std::size_t l : labels) {
    if (l >= bound) throw Error(Errc::DimensionMismatch, std::string(side) + " label " + std::to_string(l) + " out of range");
    if (!seen.insert(l).second) throw Error(Errc::LabelCollision, std::string(side) + " label " + std::to_string(l) + " repeated");
  }
}

// Checked a·b against the cap; returns cap + 1 on overflow of the cap.
std::size_t capped_mul(std::size_t a, std::size_t b, std::size_t cap) {
  if (a != 0 && b > (cap + 1) / a + 1) return cap + 1;
  return std::min(a * b, cap + 1);
}

DensityMatrix projector_state(std::span<const cplx> v) { return DensityMatrix(ComplexMatrix::outer(v)); }

struct MultisetMatch {
  bool equal;
  double max_dev;
  std::size_t count;
};

std::vector<cplx> nonzero_offdiag(const ComplexMatrix& m) {
  std::vector<cplx> out;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c && m(r, c) != cplx(0.0)) out.push_back(m(r, c));
  return out;
}

// Greedy matching after sorting by modulus; candidates come from the band of
// moduli within tol of the probe.
MultisetMatch match_offdiag(const ComplexMatrix& x, const ComplexMatrix& y, double tol) {
  auto a = nonzero_offdiag(x), b = nonzero_offdiag(y);
  if (a.size() != b.size()) return {false, 0.0, a.size()};
  auto by_mod = [](cplx p, cplx q) { return std::abs(p) < std::abs(q); };
  std::sort(a.begin(), a.end(), by_mod);
  std::sort(b.begin(), b.end(), by_mod);
  std::vector<bool> used(b.size(), false);
  std::size_t lo = 0;
  double dev = 0.0;
  for (const cplx& z : a) {
    const double mz = std::abs(z);
    while (lo < b.size() && (used[lo] || std::abs(b[lo]) < mz - tol)) ++lo;
    bool found = false;
    for (std::size_t i = lo; i < b.size() && std::abs(b[i]) <= mz + tol; ++i) {
      if (used[i] || std::abs(b[i] - z) > tol) continue;
      used[i] = true;
      dev = std::max(dev, std::abs(b[i] - z));
      found = true;
      break;
    }
    if (!found) return {false, dev, a.size()};
  }
  return {true, dev, a.size()};
}

}  // namespace

BipartiteState make_mc_state(const MCSpec& spec, std::size_t d_a, std::size_t d_b) {
  const std::size_t n = spec.coeffs.rows();
  if (spec.a_labels.size() != n || spec.b_labels.size() != n)
    throw Error(Errc::InvalidCoeffs, "label lists must match the coefficient dimension");
  const DensityMatrix c = coefficient_state(spec.coeffs);
  require_injective(spec.a_labels, d_a, "A");
  require_injective(spec.b_labels, d_b, "B");
  ComplexMatrix m(d_a * d_b, d_a * d_b);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      m(spec.a_labels[r] * d_b + spec.b_labels[r], spec.a_labels[s] * d_b + spec.b_labels[s]) = c(r, s);
  return BipartiteState(DensityMatrix(std::move(m)), d_a, d_b);
}

BipartiteState make_qubit_qudit_pairing(std::size_t d_b, double p0, std::span<const double> diag,
                                        std::span<const QubitQuditBlockSpec> blocks) {
  if (d_b == 0) throw Error(Errc::DimensionMismatch, "d_B must be positive");
  if (!(p0 >= 0.0)) throw Error(Errc::WeightMismatch, "p0 must be nonnegative");
  std::vector<bool> taken(d_b, false);
  double total = p0;
  for (const auto& blk : blocks) {
    if (!(blk.p >= 0.0)) throw Error(Errc::WeightMismatch, "block weight must be nonnegative");
    if (blk.coeffs.rows() != 2 || blk.coeffs.cols() != 2) throw Error(Errc::InvalidCoeffs, "block coefficients must be 2x2");
    if (blk.b0 >= d_b || blk.b1 >= d_b) throw Error(Errc::DimensionMismatch, "block column out of range");
    if (blk.b0 == blk.b1 || taken[blk.b0] || taken[blk.b1]) throw Error(Errc::SupportOverlap, "block columns overlap");
    taken[blk.b0] = taken[blk.b1] = true;
    total += blk.p;
  }
  if (std::abs(total - 1.0) > kValidationTol) throw Error(Errc::WeightMismatch, "weights sum to " + std::to_string(total));

  ComplexMatrix m(2 * d_b, 2 * d_b);
  if (p0 > 0.0) {
    if (diag.size() != 2 * d_b) throw Error(Errc::WeightMismatch, "diagonal part needs 2*d_B entries");
    double mass = 0.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
      if (!(diag[i] >= 0.0)) throw Error(Errc::InvalidCoeffs, "diagonal part must be nonnegative");
      if (diag[i] > 0.0 && taken[i % d_b]) throw Error(Errc::SupportOverlap, "diagonal part touches a block column");
      mass += diag[i];
      m(i, i) = p0 * diag[i];
    }
    if (std::abs(mass - 1.0) > kValidationTol) throw Error(Errc::WeightMismatch, "diagonal part must sum to 1");
  }
  for (const auto& blk : blocks) {
    const DensityMatrix c = coefficient_state(blk.coeffs);
    const std::size_t idx[2] = {blk.b0, d_b + blk.b1};
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t s = 0; s < 2; ++s) m(idx[r], idx[s]) = blk.p * c(r, s);
  }
  return BipartiteState(DensityMatrix(std::move(m)), 2, d_b);
}

BipartiteState cnot_embed(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  ComplexMatrix m(d * d, d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) m(j * d + j, k * d + k) = rho(j, k);
  return BipartiteState(DensityMatrix(std::move(m), rho.validation_tol()), d, d);
}

AppendixAChain appendix_a_chain(const DensityMatrix& rho, std::size_t L, std::size_t dim_cap) {
  const std::size_t d = rho.dim();
  if (d < 2) throw Error(Errc::OutOfRange, "dimension must be at least 2");
  if (L == 0) throw Error(Errc::OutOfRange, "L must be positive");
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      const double mod = std::abs(rho(j, k));
      if (j == k || mod <= kPhaseFloor) continue;
      const cplx phase = rho(j, k) / mod;
      const double m = std::round(std::arg(phase) * static_cast<double>(L) / (2.0 * std::numbers::pi));
      if (std::abs(phase - std::polar(1.0, 2.0 * std::numbers::pi * m / static_cast<double>(L))) > kPhaseTol)
        throw Error(Errc::PhaseNotRoot, "phase of entry (" + std::to_string(j) + "," + std::to_string(k) +
                                            ") is not an L-th root of unity");
    }

  const std::size_t K = L * ((2 * d + L - 1) / L);
  std::size_t kd = 1;  // K^d, capped
  for (std::size_t i = 0; i < d; ++i) kd = capped_mul(kd, K, dim_cap);
  const std::size_t dim2 = capped_mul(kd, d, dim_cap);
  if (dim2 > dim_cap) throw Error(Errc::DimensionCapExceeded, "rho2 dimension exceeds " + std::to_string(dim_cap));
  const std::size_t kd1 = kd / K, kd2 = kd1 / K;  // K^{d-1}, K^{d-2}
  const std::size_t m1_copies = 2 * kd2, m2_copies = 2 * (kd2 - 1) / (K - 1), m3_copies = K;
  const std::size_t n_pairs = d * (d - 1) / 2;
  const std::size_t dim3 = n_pairs * (m1_copies * K + m2_copies * K + m3_copies * 2) + 1;
  if (dim3 > dim_cap) throw Error(Errc::DimensionCapExceeded, "rho3 dimension exceeds " + std::to_string(dim_cap));

  std::vector<cplx> omega_pow(K);
  for (std::size_t a = 0; a < K; ++a) omega_pow[a] = std::polar(1.0, 2.0 * std::numbers::pi * a / static_cast<double>(K));

  // ρ₂: one block U ρ U† per U = diag(ω^{u_0}, …, ω^{u_{d-1}}), u in lexicographic order.
  std::vector<DensityMatrix> blocks2;
  blocks2.reserve(kd);
  std::vector<std::size_t> u(d, 0);
  for (std::size_t g = 0; g < kd; ++g) {
    std::size_t rest = g;
    for (std::size_t j = d; j-- > 0;) {
      u[j] = rest % K;
      rest /= K;
    }
    ComplexMatrix b(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      b(j, j) = rho(j, j);
      for (std::size_t k = j + 1; k < d; ++k) {
        b(j, k) = rho(j, k) * omega_pow[(u[j] + K - u[k]) % K];
        b(k, j) = std::conj(b(j, k));
      }
    }
    blocks2.emplace_back(std::move(b), rho.validation_tol());
  }
  const std::vector<double> weights2(kd, 1.0 / static_cast<double>(kd));

  std::vector<cplx> psi(K), phi(K, 1.0 / std::sqrt(static_cast<double>(K))), v_diag(K);
  for (std::size_t a = 0; a < K; ++a) {
    psi[a] = omega_pow[a] / std::sqrt(static_cast<double>(K));
    v_diag[a] = std::conj(omega_pow[a]);
  }
  const DensityMatrix psi_state = projector_state(psi), phi_state = projector_state(phi);
  const DensityMatrix pair_state(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}});
  const DensityMatrix point(ComplexMatrix{{1.0}});

  std::vector<double> pair_weights;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) pair_weights.push_back(std::abs(rho(j, k)));

  // ρ₃ and ρ₄ share weights; they differ only in the M₁ summands.
  std::vector<DensityMatrix> blocks3, blocks4;
  std::vector<double> weights34;
  std::vector<cplx> w_diag;
  double trace_m = 0.0;
  auto push = [&](const DensityMatrix& b3, const DensityMatrix& b4, double w, bool rotate) {
    blocks3.push_back(b3);
    blocks4.push_back(b4);
    weights34.push_back(w);
    trace_m += w;
    for (std::size_t a = 0; a < b3.dim(); ++a) w_diag.push_back(rotate ? v_diag[a] : cplx(1.0));
  };
  for (double w : pair_weights) {
    const double scale = w / static_cast<double>(kd1);
    for (std::size_t i = 0; i < m1_copies; ++i) push(psi_state, phi_state, scale, true);
    for (std::size_t i = 0; i < m2_copies; ++i) push(phi_state, phi_state, scale, false);
    for (std::size_t i = 0; i < m3_copies; ++i) push(pair_state, pair_state, 2.0 * scale / static_cast<double>(K), false);
  }
  const double rest = 1.0 - trace_m;
  blocks3.push_back(point);
  blocks4.push_back(point);
  weights34.push_back(std::max(rest, 0.0));
  w_diag.push_back(1.0);
  if (rest < 0.0) throw Error(Errc::ConditionViolated, "tr M exceeds 1");

  auto kron_identity = [](std::size_t copies, const ComplexMatrix& x) {
    return tensor_product(ComplexMatrix::identity(copies), x);
  };
  AppendixAChain chain{
      d,
      K,
      L,
      omega_pow.size() > 1 ? omega_pow[1] : cplx(1.0),
      DensityMatrix::direct_sum(blocks2, weights2, rho.validation_tol()),
      DensityMatrix::direct_sum(blocks3, weights34, rho.validation_tol()),
      DensityMatrix::direct_sum(blocks4, weights34, rho.validation_tol()),
      kron_identity(m1_copies, psi_state.mat()),
      m2_copies ? kron_identity(m2_copies, phi_state.mat()) : ComplexMatrix(),
      kron_identity(K, ComplexMatrix{{1.0, 1.0}, {1.0, 1.0}}) * cplx(1.0 / static_cast<double>(K)),
      std::move(pair_weights),
      std::move(v_diag),
      std::move(w_diag),
      trace_m,
      {}};

  AppendixAReport& rep = chain.report;
  rep.k_valid = K >= 2 * d && K % L == 0;
  rep.trace_below_one = trace_m < 1.0;
  const MultisetMatch mm = match_offdiag(chain.rho2.mat(), chain.rho3.mat(), kChainTol);
  rep.multiset_match = mm.equal;
  rep.multiset_max_dev = mm.max_dev;
  rep.offdiag_count = mm.count;

  const ComplexMatrix& r3 = chain.rho3.mat();
  const ComplexMatrix& r4 = chain.rho4.mat();
  double abs_dev = 0.0, unitary_dev = 0.0;
  for (std::size_t r = 0; r < r3.rows(); ++r)
    for (std::size_t c = 0; c < r3.cols(); ++c) {
      abs_dev = std::max(abs_dev, std::abs(std::abs(r3(r, c)) - r4(r, c)));
      unitary_dev = std::max(unitary_dev, std::abs(chain.w_diag[r] * r3(r, c) * std::conj(chain.w_diag[c]) - r4(r, c)));
    }
  rep.abs_map = abs_dev <= kChainTol;
  rep.unitary_map = unitary_dev <= kChainTol;
  return chain;
}

std::size_t offdiag_value_count(const ComplexMatrix& m, cplx value, double tol) {
  std::size_t n = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c && m(r, c) != cplx(0.0) && std::abs(m(r, c) - value) <= tol) ++n;
  return n;
}

BipartiteState isotropic_state(double p, std::span<const cplx> psi, std::size_t d_a, std::size_t d_b) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::OutOfRange, "isotropic weight p must lie in [0,1]");
  if (psi.size() != d_a * d_b) throw Error(Errc::DimensionMismatch, "pure state has wrong length");
  ComplexMatrix m = ComplexMatrix::outer(psi);
  m *= p;
  const double mix = (1.0 - p) / static_cast<double>(d_a * d_b);
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += mix;
  return BipartiteState(DensityMatrix(std::move(m)), d_a, d_b);
}

BipartiteState Counterexample::bipartite() const {
  if (dims.size() == 2) return BipartiteState(state, dims[0], dims[1]);
  throw Error(Errc::DimensionMismatch, name + " is not a bipartite state");
}

std::vector<std::string> counterexample_names() { return {"tau-remark", "appendix-f", "isotropic"}; }

Counterexample named_counterexample(std::string_view name, std::span<const double> params) {
  if (name == "tau-remark") {
    const double a = 1.0 / std::sqrt(2.0);
    ComplexMatrix m{{1, a, 0, -a}, {a, 1, a, 0}, {0, a, 1, a}, {-a, 0, a, 1}};
    m *= 0.25;
    ComplexMatrix tau(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) tau(r, c) = std::abs(m(r, c));
    return {std::string(name), DensityMatrix(std::move(m)), {4}, std::move(tau)};
  }
  if (name == "appendix-f") {
    // ¼(|02><02| + |20><20| + |ψ><ψ| + |φ><φ|), ψ = (|00>+|11>)/√2, φ = (|11>+|22>)/√2.
    ComplexMatrix m(9, 9);
    m(2, 2) += 0.25;
    m(6, 6) += 0.25;
    for (auto [u, v] : {std::pair<std::size_t, std::size_t>{0, 4}, {4, 8}}) {
      m(u, u) += 0.125;
      m(v, v) += 0.125;
      m(u, v) += 0.125;
      m(v, u) += 0.125;
    }
    return {std::string(name), DensityMatrix(std::move(m)), {3, 3}, std::nullopt};
  }
  if (name == "isotropic") {
    if (params.empty() || params.size() > 2) throw Error(Errc::OutOfRange, "isotropic takes p and optionally d");
    const double dv = params.size() == 2 ? params[1] : 2.0;
    if (!(dv >= 2.0 && dv == std::floor(dv) && dv <= 64.0)) throw Error(Errc::OutOfRange, "isotropic d must be an integer in [2,64]");
    const auto d = static_cast<std::size_t>(dv);
    std::vector<cplx> psi(d * d);
    for (std::size_t j = 0; j < d; ++j) psi[j * d + j] = 1.0 / std::sqrt(static_cast<double>(d));
    auto bs = isotropic_state(params[0], psi, d, d);
    return {std::string(name), bs.state(), {d, d}, std::nullopt};
  }
  throw Error(Errc::UnknownName, "unknown counterexample '" + std::string(name) + "'");
}

}  // namespace pairinglab
