#include "pairinglab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "pairinglab/error.hpp"
#include "pairinglab/linalg.hpp"
#include "pairinglab/majorization.hpp"
#include "pairinglab/measures.hpp"
#include "pairinglab/pairing.hpp"
#include "pairinglab/randgen.hpp"

namespace pairinglab {

namespace {

struct Check {
  std::string quantity;
  double lhs;
  double rhs;
  double gap;
  bool failed;
};

class Recorder {
 public:
  explicit Recorder(std::optional<double> tol_override) : override_(tol_override) {}

  void at_most(std::string q, double lhs, double rhs, double tol) {
    const double t = override_.value_or(tol);
    push(std::move(q), lhs, rhs, lhs - rhs, lhs - rhs > t);
  }
  void equal(std::string q, double lhs, double rhs, double tol) {
    const double t = override_.value_or(tol);
    push(std::move(q), lhs, rhs, std::abs(lhs - rhs), !(std::abs(lhs - rhs) <= t));
  }
  // Integer and boolean facts ignore the tolerance override.
  void exact_at_most(std::string q, double lhs, double rhs) { push(std::move(q), lhs, rhs, lhs - rhs, lhs > rhs); }
  void exact_equal(std::string q, double lhs, double rhs) {
    push(std::move(q), lhs, rhs, std::abs(lhs - rhs), lhs != rhs);
  }
  // A passing boolean carries no margin, so it never becomes the worst gap.
  void holds(std::string q, bool ok) {
    push(std::move(q), ok ? 1.0 : 0.0, 1.0, ok ? -std::numeric_limits<double>::infinity() : 1.0, !ok);
  }
  void error(const std::exception& e) {
    push(std::string("exception: ") + e.what(), 0.0, 0.0, std::numeric_limits<double>::infinity(), true);
  }

  std::vector<Check>& checks() { return checks_; }

 private:
  void push(std::string q, double lhs, double rhs, double gap, bool failed) {
    checks_.push_back({std::move(q), lhs, rhs, gap, failed});
  }
  std::optional<double> override_;
  std::vector<Check> checks_;
};

constexpr std::size_t kDimCycle[3] = {2, 3, 4};

std::pair<std::size_t, std::size_t> trial_dims(const VerifyOptions& o, std::uint64_t trial) {
  if (o.dims) return *o.dims;
  return {kDimCycle[(trial / 3) % 3], kDimCycle[trial % 3]};
}

// Mixed ensemble: pure states, low-rank and full-rank Ginibre states.
BipartiteState random_state(std::size_t da, std::size_t db, Rng& rng) {
  const std::size_t d = da * db;
  const std::size_t rank = rng.below(3) == 0 ? 1 : 1 + rng.below(d);
  return BipartiteState(ginibre_density(d, rank, rng), da, db);
}

struct GeneratedPairing {
  BipartiteState state;
  std::size_t n_pairs;
};

// Draws a pairing number in [min_pairs, bound] and steps down until the
// generator finds a placement; the counting bound is not always reachable.
GeneratedPairing random_pairing(std::size_t da, std::size_t db, std::size_t min_pairs, Rng& rng) {
  const std::size_t top = pairing_number_upper_bound(da, db);
  if (top < min_pairs) throw Error(Errc::Infeasible, "dimensions admit no transposition");
  std::size_t n = min_pairs + rng.below(top - min_pairs + 1);
  for (;; --n) {
    try {
      return {random_canonical_pairing(da, db, n, rng), n};
    } catch (const Error& e) {
      if (e.code() != Errc::Infeasible || n == min_pairs) throw;
    }
  }
}

using TrialFn = std::function<void(Recorder&, Rng&, std::size_t, std::size_t)>;

void negativity_bound(Recorder& r, Rng& rng, std::size_t da, std::size_t db) {
  const auto bs = random_state(da, db, rng);
  r.at_most("N <= C_l1", negativity(bs).n, c_l1(bs.state()), 1e-9);
}

void l0_bound(Recorder& r, Rng& rng, std::size_t da, std::size_t db) {
  const auto bs = random_state(da, db, rng);
  r.exact_at_most("2*N0 <= C_l0", 2.0 * static_cast<double>(n0_count(bs)), static_cast<double>(c_l0_count(bs.state())));
  const auto ps = random_pairing(da, db, 0, rng).state;
  r.exact_equal("pairing: C_l0 = 2*N0", static_cast<double>(c_l0_count(ps.state())),
                2.0 * static_cast<double>(n0_count(ps)));
}

void additivity(Recorder& r, Rng& rng, std::size_t da, std::size_t db) {
  const auto rho = ginibre_density(da, 1 + rng.below(da), rng);
  const auto sigma = ginibre_density(db, 1 + rng.below(db), rng);
  const auto joint = tensor_product(rho, sigma);
  r.equal("C_L(rho x sigma) = C_L(rho) + C_L(sigma)", c_log(joint), c_log(rho) + c_log(sigma), 1e-9);
  r.equal("C_r(rho x sigma) = C_r(rho) + C_r(sigma)", c_rel_entropy(joint), c_rel_entropy(rho) + c_rel_entropy(sigma),
          1e-9);
}

void pairing_roundtrip(Recorder& r, Rng& rng, std::size_t da, std::size_t db) {
  const auto gen = random_pairing(da, db, 0, rng);
  const BipartiteState& bs = gen.state;
  const std::size_t n = gen.n_pairs;
  const Negativity neg = negativity(bs);
  r.equal("N = C_l1", neg.n, c_l1(bs.state()), 1e-8);
  const auto cert = detect_canonical_pairing(bs);
  r.holds("certificate found", cert.has_value());
  if (!cert) return;
  r.exact_equal("pairing number = generated", static_cast<double>(cert->pairing_number()), static_cast<double>(n));
  r.holds("certificate well formed", cert->well_formed());
  r.exact_equal("N0 = pairing number", static_cast<double>(n0_count(bs)), static_cast<double>(cert->pairing_number()));
  if (da == db) r.holds("pairing number <= d(d-1)/2", pairing_number_bound_check(*cert, da));
  if (da == db && cert->pairing_number() == da * (da - 1) / 2)
    r.holds("saturated bound has MC structure", has_canonical_mc_structure(bs));
  if (da == 2) {
    const auto dec = qubit_qudit_decompose(bs);
    r.at_most("reassembly error", max_abs_diff(dec.reassemble(), bs.mat()), 0.0, 1e-9);
    const auto pm = pairing_measures(dec);
    r.at_most("E_D <= E_PPT", pm.e_d, pm.e_ppt, 1e-9);
    r.at_most("E_D <= E_C", pm.e_d, pm.e_c, 1e-9);
  }
}

void witness(Recorder& r, Rng& rng, std::size_t da, std::size_t db) {
  const auto bs = random_pairing(da, db, 1, rng).state;
  const auto cert = detect_canonical_pairing(bs);
  r.holds("certificate found", cert.has_value());
  if (!cert) return;
  for (std::size_t w = 0; w < cert->pairing_number(); ++w)
    r.exact_at_most("1e-6 < witness block negativity", 1e-6, distill_witness(bs, *cert, w).block_negativity);
}

void majorization(Recorder& r, Rng& rng, std::size_t da, std::size_t db) {
  const std::size_t rows = 1 + rng.below(2 * da), cols = 1 + rng.below(2 * db);
  ComplexMatrix x(rows, cols);
  for (auto& z : x.entries()) z = rng.complex_normal();
  const auto t = trace_vs_l1(x);
  r.at_most("trace norm <= l1 norm", t.trace_norm, t.l1_norm, 1e-9);
  r.holds("u < v < w", uvw_triple(x).holds());

  const std::size_t n = std::max(da, db);
  ComplexMatrix mono = random_monomial_unitary(n, rng);
  for (auto& z : mono.entries()) z *= 0.1 + 2.0 * rng.uniform();
  const auto tm = trace_vs_l1(mono);
  r.holds("monomial detected", tm.is_monomial);
  r.at_most("monomial gap", tm.gap, 0.0, 1e-9);
  r.holds("monomial u < v < w", uvw_triple(mono).holds());

  // Two entries above 0.1 in one row rule out equality.
  ComplexMatrix two = mono;
  const std::size_t row = rng.below(n);
  std::size_t col = rng.below(n);
  while (std::abs(two(row, col)) != 0.0) col = (col + 1) % n;
  two(row, col) = std::polar(0.1 + rng.uniform(), 2.0 * 3.141592653589793 * rng.uniform());
  if (n > 1) r.exact_at_most("two-entry row gap > 1e-7", 1e-7, trace_vs_l1(two).gap);
}

void lowerbound(Recorder& r, Rng& rng, std::size_t da, std::size_t db) {
  const auto bs = random_pairing(da, db, 0, rng).state;
  const auto cert = detect_canonical_pairing(bs);
  r.holds("certificate found", cert.has_value());
  if (!cert) return;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a + 1 < da; a += 2) pairs.push_back({a, a + 1});
  const double bound = distillable_lower_bound(bs, *cert, pairs);
  r.at_most("lower bound <= N_L", bound, negativity(bs).n_log, 1e-9);
  if (da == 2) r.equal("lower bound = E_D", bound, pairing_measures(qubit_qudit_decompose(bs)).e_d, 1e-8);
}

struct Suite {
  std::string name;
  TrialFn fn;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"negativity-bound", negativity_bound}, {"l0-bound", l0_bound},   {"additivity", additivity},
      {"pairing-roundtrip", pairing_roundtrip}, {"witness", witness}, {"majorization", majorization},
      {"lowerbound", lowerbound},
  };
  return all;
}

SuiteResult run_suite(std::size_t suite_id, const VerifyOptions& opts) {
  const Suite& suite = suites()[suite_id];
  const auto start = std::chrono::steady_clock::now();
  const Rng suite_rng = Rng(opts.seed).split(suite_id);
  const auto trials = static_cast<std::int64_t>(opts.trials);
  std::vector<std::vector<Check>> per_trial(opts.trials);

#pragma omp parallel for schedule(dynamic, 8) if (trials > 16)
  for (std::int64_t t = 0; t < trials; ++t) {
    const auto trial = static_cast<std::uint64_t>(t);
    Rng rng = suite_rng.split(trial);
    const auto [da, db] = trial_dims(opts, trial);
    Recorder rec(opts.tol);
    try {
      suite.fn(rec, rng, da, db);
    } catch (const std::exception& e) {
      rec.error(e);
    }
    per_trial[trial] = std::move(rec.checks());
  }

  SuiteResult res;
  res.suite = suite.name;
  res.trials = opts.trials;
  for (std::size_t t = 0; t < per_trial.size(); ++t) {
    for (auto& c : per_trial[t]) {
      ++res.checks;
      if (c.gap > res.worst_gap) {
        res.worst_gap = c.gap;
        res.worst_quantity = c.quantity;
      }
      if (c.failed) res.violations.push_back({t, c.quantity, c.lhs, c.rhs, c.gap});
    }
  }
  res.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return res;
}

nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& s : suites()) n.push_back(s.name);
    return n;
  }();
  return names;
}

VerifyReport run_verify(std::string_view suite, const VerifyOptions& opts) {
  if (opts.dims && (opts.dims->first < 2 || opts.dims->second < 2))
    throw Error(Errc::OutOfRange, "verify dimensions must be at least 2");
  VerifyReport report{opts.seed, opts.trials, opts.dims, {}};
  bool found = false;
  for (std::size_t i = 0; i < suites().size(); ++i) {
    if (suite != "all" && suite != suites()[i].name) continue;
    found = true;
    report.suites.push_back(run_suite(i, opts));
  }
  if (!found) throw Error(Errc::UnknownName, "unknown suite '" + std::string(suite) + "'");
  return report;
}

bool VerifyReport::ok() const noexcept { return violation_count() == 0; }

std::size_t VerifyReport::violation_count() const noexcept {
  std::size_t n = 0;
  for (const auto& s : suites) n += s.violations.size();
  return n;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json j;
  j["rng"] = std::string(Rng::algorithm);
  j["seed"] = seed;
  j["trials"] = trials;
  j["dims"] = dims ? nlohmann::json::array({dims->first, dims->second}) : nlohmann::json();
  j["suites"] = nlohmann::json::array();
  for (const auto& s : suites) {
    nlohmann::json sj;
    sj["suite"] = s.suite;
    sj["trials"] = s.trials;
    sj["checks"] = s.checks;
    sj["worst_gap"] = finite_or_null(s.worst_gap);
    sj["worst_quantity"] = s.worst_quantity;
    sj["elapsed_ms"] = s.elapsed_ms;
    sj["violations"] = nlohmann::json::array();
    for (const auto& v : s.violations)
      sj["violations"].push_back(
          {{"trial", v.trial}, {"quantity", v.quantity}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"gap", finite_or_null(v.gap)}});
    j["suites"].push_back(std::move(sj));
  }
  j["violations"] = violation_count();
  j["ok"] = ok();
  return j;
}

}  // namespace pairinglab
