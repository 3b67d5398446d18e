#include "pairinglab/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "pairinglab/error.hpp"
#include "pairinglab/measures.hpp"

namespace pairinglab {

namespace {

constexpr double kBlockWeightFloor = 1e-14;

std::size_t flat(const Label& l, std::size_t d_b) { return l.j * d_b + l.k; }
Label label_of(std::size_t index, std::size_t d_b) { return {index / d_b, index % d_b}; }

double present_threshold(const ComplexMatrix& m, double zero_tol) { return zero_tol * m.max_abs(); }

void require_cert_fits(const BipartiteState& bs, const PairingCertificate& cert) {
  auto inside = [&](const Label& l) { return l.j < bs.d_a() && l.k < bs.d_b(); };
  for (const auto& t : cert.transpositions)
    if (!inside(t.first) || !inside(t.second)) throw Error(Errc::DimensionMismatch, "certificate label out of range");
  for (const auto& l : cert.fixed_points)
    if (!inside(l)) throw Error(Errc::DimensionMismatch, "certificate label out of range");
}

}  // namespace

bool PairingCertificate::well_formed() const {
  std::set<Label> moved;
  const std::set<Label> fixed(fixed_points.begin(), fixed_points.end());
  for (const auto& t : transpositions) {
    if (t.first.j == t.second.j || t.first.k == t.second.k) return false;
    if (!moved.insert(t.first).second || !moved.insert(t.second).second) return false;
    if (!fixed.count({t.first.j, t.second.k}) || !fixed.count({t.second.j, t.first.k})) return false;
  }
  for (const auto& l : fixed)
    if (moved.count(l)) return false;
  return true;
}

std::optional<PairingCertificate> detect_canonical_pairing(const BipartiteState& bs, double zero_tol) {
  const ComplexMatrix pt = partial_transpose(bs);
  const std::size_t d = bs.dim(), d_b = bs.d_b();
  const double thr = present_threshold(pt, zero_tol);

  // Read the permutation off row by row; a row with two entries is not monomial.
  constexpr std::size_t kEmpty = static_cast<std::size_t>(-1);
  std::vector<std::size_t> perm(d, kEmpty);
  std::vector<bool> column_used(d, false);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      if (std::abs(pt(r, c)) <= thr) continue;
      if (perm[r] != kEmpty || column_used[c]) return std::nullopt;
      perm[r] = c;
      column_used[c] = true;
    }
  }

  PairingCertificate cert;
  for (std::size_t r = 0; r < d; ++r) {
    if (perm[r] == kEmpty) continue;  // zero row: π(jk) = jk with a_jk = 0
    if (perm[r] == r) {
      cert.fixed_points.push_back(label_of(r, d_b));
      continue;
    }
    const std::size_t c = perm[r];
    if (perm[c] != r) return std::nullopt;  // cycle longer than two
    if (r < c) cert.transpositions.push_back({label_of(r, d_b), label_of(c, d_b)});
  }
  for (const auto& t : cert.transpositions) {
    const Label a{t.first.j, t.second.k}, b{t.second.j, t.first.k};
    if (t.first.j == t.second.j || t.first.k == t.second.k) return std::nullopt;
    if (perm[flat(a, d_b)] != flat(a, d_b) || perm[flat(b, d_b)] != flat(b, d_b)) return std::nullopt;
  }

  // Saturation N = C_l1 must hold for anything we certify.
  const double gap = std::abs(negativity(bs).n - c_l1(bs.state()));
  if (gap > 10.0 * zero_tol * static_cast<double>(d)) return std::nullopt;
  return cert;
}

bool pairing_number_bound_check(const PairingCertificate& cert, std::size_t d_a) {
  return cert.pairing_number() <= d_a * (d_a - 1) / 2;
}

bool has_canonical_mc_structure(const BipartiteState& bs, double zero_tol) {
  const ComplexMatrix& m = bs.mat();
  const double thr = present_threshold(m, zero_tol);
  std::set<std::size_t> a_labels, b_labels;
  std::vector<bool> support(bs.dim(), false);
  for (std::size_t i = 0; i < bs.dim(); ++i) {
    if (std::abs(m(i, i)) <= thr) continue;
    const Label l = label_of(i, bs.d_b());
    if (!a_labels.insert(l.j).second || !b_labels.insert(l.k).second) return false;
    support[i] = true;
  }
  for (std::size_t r = 0; r < bs.dim(); ++r)
    for (std::size_t c = 0; c < bs.dim(); ++c)
      if (std::abs(m(r, c)) > thr && !(support[r] && support[c])) return false;
  return true;
}

double ppt_cost_condition(const BipartiteState& bs, const PairingCertificate& cert) {
  require_cert_fits(bs, cert);
  const ComplexMatrix pt = partial_transpose(bs);
  const double thr = present_threshold(pt, kDefaultPairingTol);
  for (const auto& t : cert.transpositions) {
    if (std::abs(pt(flat(t.first, bs.d_b()), flat(t.second, bs.d_b()))) <= thr)
      throw Error(Errc::ConditionViolated, "certificate transposition has no partial-transpose entry");
  }
  const ComplexMatrix abs_pt = hermitian_abs(pt);
  const double tol = 1e-9 * std::max(1.0, abs_pt.max_abs());
  for (std::size_t r = 0; r < abs_pt.rows(); ++r)
    for (std::size_t c = 0; c < abs_pt.cols(); ++c)
      if (r != c && std::abs(abs_pt(r, c)) > tol)
        throw Error(Errc::ConditionViolated, "|rho^T_A| is not diagonal");
  const auto ev = hermitian_eigenvalues(partial_transpose(abs_pt, bs.d_a(), bs.d_b()));
  if (ev.back() < -1e-9) throw Error(Errc::ConditionViolated, "|rho^T_A|^T_A is not positive semidefinite");
  return negativity(bs).n_log;
}

ComplexMatrix QubitQuditDecomposition::reassemble() const {
  ComplexMatrix out(2 * d_b, 2 * d_b);
  if (diag_block) {
    const std::size_t n = diag_columns.size();
    for (std::size_t r = 0; r < 2 * n; ++r)
      for (std::size_t c = 0; c < 2 * n; ++c)
        out((r / n) * d_b + diag_columns[r % n], (c / n) * d_b + diag_columns[c % n]) = p0 * (*diag_block)(r, c);
  }
  for (const auto& blk : blocks) {
    const std::size_t cols[2] = {blk.b0, blk.b1};
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        out((r / 2) * d_b + cols[r % 2], (c / 2) * d_b + cols[c % 2]) = blk.p * blk.rho.mat()(r, c);
  }
  return out;
}

QubitQuditDecomposition qubit_qudit_decompose(const BipartiteState& bs, double zero_tol) {
  if (bs.d_a() != 2) throw Error(Errc::NotQubit, "d_A = " + std::to_string(bs.d_a()));
  const auto cert = detect_canonical_pairing(bs, zero_tol);
  if (!cert) throw Error(Errc::NotCanonicalPairing, "partial transpose is not a disjoint-transposition monomial");

  const std::size_t d_b = bs.d_b();
  QubitQuditDecomposition dec;
  dec.d_b = d_b;
  std::vector<bool> in_block(d_b, false);
  double total = 0.0;
  for (const auto& t : cert->transpositions) {
    // ρ^T_A pairs |0 k> with |1 k'>, so ρ couples |0 k'> with |1 k>.
    const Label& zero_side = t.first.j == 0 ? t.first : t.second;
    const Label& one_side = t.first.j == 0 ? t.second : t.first;
    const std::size_t b0 = one_side.k, b1 = zero_side.k;
    if (in_block[b0] || in_block[b1]) throw Error(Errc::ConditionViolated, "overlapping block supports");
    in_block[b0] = in_block[b1] = true;
    const std::size_t idx[4] = {b0, b1, d_b + b0, d_b + b1};
    ComplexMatrix sub = submatrix(bs.mat(), idx);
    const double p = sub.trace().real();
    sub *= 1.0 / p;
    dec.blocks.push_back({p, BipartiteState(DensityMatrix(std::move(sub)), 2, 2), b0, b1});
    total += p;
  }
  for (std::size_t k = 0; k < d_b; ++k)
    if (!in_block[k]) dec.diag_columns.push_back(k);
  if (!dec.diag_columns.empty()) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k : dec.diag_columns) idx.push_back(j * d_b + k);
    ComplexMatrix sub = submatrix(bs.mat(), idx);
    const double p0 = sub.trace().real();
    if (p0 > kBlockWeightFloor) {
      sub *= 1.0 / p0;
      dec.diag_block = DensityMatrix(std::move(sub));
      dec.p0 = p0;
      total += p0;
    }
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error(Errc::ConditionViolated, "block weights do not sum to one");
  if (max_abs_diff(dec.reassemble(), bs.mat()) > 1e-9)
    throw Error(Errc::ConditionViolated, "blocks do not reproduce the state");
  return dec;
}

PairingMeasures pairing_measures(const QubitQuditDecomposition& dec) {
  const BipartiteState whole(DensityMatrix(dec.reassemble()), 2, dec.d_b);
  const double e_d = c_rel_entropy(whole.state());
  double e_c = 0.0;
  for (const auto& blk : dec.blocks) {
    const double n = std::min(1.0, std::max(0.0, negativity(blk.rho).n));
    e_c += blk.p * binary_entropy((1.0 + std::sqrt(1.0 - n * n)) / 2.0);
  }
  return {e_d, e_d, e_c, e_c, negativity(whole).n_log};
}

DistillWitness distill_witness(const BipartiteState& bs, const PairingCertificate& cert, std::size_t which) {
  if (cert.transpositions.empty()) throw Error(Errc::NoTransposition, "certificate has no transposition");
  if (which >= cert.transpositions.size()) throw Error(Errc::OutOfRange, "transposition index out of range");
  require_cert_fits(bs, cert);
  const auto& t = cert.transpositions[which];
  const std::size_t d_b = bs.d_b();
  // Standard product order on the 2×2 subspace: (j<j') ⊗ (k<k').
  const std::size_t j0 = std::min(t.first.j, t.second.j), j1 = std::max(t.first.j, t.second.j);
  const std::size_t k0 = std::min(t.first.k, t.second.k), k1 = std::max(t.first.k, t.second.k);
  const std::size_t idx[4] = {j0 * d_b + k0, j0 * d_b + k1, j1 * d_b + k0, j1 * d_b + k1};

  ComplexMatrix projector(bs.dim(), bs.dim());
  for (std::size_t i : idx) projector(i, i) = 1.0;
  ComplexMatrix block = projector * bs.mat() * projector;
  ComplexMatrix sub = submatrix(bs.mat(), idx);
  const double weight = sub.trace().real();
  if (!(weight > 0.0)) throw Error(Errc::ConditionViolated, "projected block has zero weight");
  sub *= 1.0 / weight;
  BipartiteState two_qubit(DensityMatrix(std::move(sub)), 2, 2);
  const double neg = negativity(two_qubit).n;
  return {std::move(projector), std::move(block), weight, std::move(two_qubit), neg};
}

double distillable_lower_bound(const BipartiteState& bs, const PairingCertificate& cert,
                               std::span<const std::pair<std::size_t, std::size_t>> a_pairs, double zero_tol) {
  require_cert_fits(bs, cert);
  std::set<std::size_t> used;
  for (const auto& [x, y] : a_pairs) {
    if (x == y || x >= bs.d_a() || y >= bs.d_a())
      throw Error(Errc::InvalidPartition, "A subsets must hold two distinct labels below d_A");
    if (!used.insert(x).second || !used.insert(y).second)
      throw Error(Errc::InvalidPartition, "A subsets overlap");
  }
  const std::size_t d_b = bs.d_b();
  double bound = 0.0;
  for (const auto& [x, y] : a_pairs) {
    std::vector<std::size_t> idx;
    for (std::size_t m : {x, y})
      for (std::size_t k = 0; k < d_b; ++k) idx.push_back(m * d_b + k);
    ComplexMatrix sub = submatrix(bs.mat(), idx);
    const double p = sub.trace().real();
    if (p <= zero_tol) continue;
    sub *= 1.0 / p;
    bound += p * c_rel_entropy(DensityMatrix(std::move(sub)));
  }
  return bound;
}

}  // namespace pairinglab
