#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pairinglab/constructions.hpp"
#include "pairinglab/error.hpp"
#include "pairinglab/measures.hpp"
#include "pairinglab/pairing.hpp"
#include "pairinglab/randgen.hpp"
#include "pairinglab/state_io.hpp"
#include "pairinglab/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pairinglab;

namespace {

enum Exit : int {
  kOk = 0,
  kViolations = 1,
  kParse = 2,
  kValidation = 3,
  kNotPairing = 4,
  kInfeasible = 5,
};

struct Failure {
  int code;
  std::string message;
};

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string label_text(const Label& l) { return "(" + std::to_string(l.j) + "," + std::to_string(l.k) + ")"; }

int validation_exit(Errc c) {
  switch (c) {
    case Errc::ParseError: return kParse;
    case Errc::NotCanonicalPairing: return kNotPairing;
    default: return kValidation;
  }
}

StateFile load(const std::string& path) {
  try {
    return read_state_file(path);
  } catch (const Error& e) {
    throw Failure{kParse, e.what()};
  }
}

template <class F>
auto validated(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Failure{validation_exit(e.code()), e.what()};
  }
}

// Construction parameters: anything the library rejects is an infeasible request.
template <class F>
auto feasible(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Failure{e.code() == Errc::ParseError ? kParse : kInfeasible, e.what()};
  }
}

json json_arg(const std::string& text, const char* what) {
  std::string body = text;
  if (fs::exists(text)) {
    std::ifstream in(text);
    std::ostringstream buf;
    buf << in.rdbuf();
    body = buf.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, std::string(what) + ": " + e.what());
  }
}

// Accepts [[x, ...], ...] with real entries or [[[re, im], ...], ...].
ComplexMatrix coeffs_from_json(const json& j, std::string_view field) {
  if (j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_number()) {
    json pairs = json::array();
    for (const auto& row : j) {
      if (!row.is_array()) throw Error(Errc::ParseError, std::string(field) + ": rows must be arrays");
      json prow = json::array();
      for (const auto& x : row) prow.push_back({x, 0.0});
      pairs.push_back(std::move(prow));
    }
    return matrix_from_json(pairs, field);
  }
  return matrix_from_json(j, field);
}

template <class T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw Error(Errc::ParseError, std::string("spec: missing field ") + name);
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw Error(Errc::ParseError, std::string("spec.") + name + ": wrong type");
  }
}

void emit(const json& j, bool as_json, const std::vector<std::pair<std::string, std::string>>& lines) {
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::size_t width = 0;
  for (const auto& [k, v] : lines) width = std::max(width, k.size());
  for (const auto& [k, v] : lines) {
    if (v.empty())
      std::cout << k << "\n";
    else
      std::cout << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
  }
}

std::string dims_text(const std::vector<std::size_t>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "x" : "") + std::to_string(dims[i]);
  return s;
}

json certificate_json(const PairingCertificate& cert) {
  json t = json::array(), f = json::array();
  for (const auto& x : cert.transpositions)
    t.push_back({{x.first.j, x.first.k}, {x.second.j, x.second.k}});
  for (const auto& l : cert.fixed_points) f.push_back({l.j, l.k});
  return {{"pairing_number", cert.pairing_number()}, {"transpositions", t}, {"fixed_points", f}};
}

// ---------------------------------------------------------------- measure

struct MeasureArgs {
  std::string path;
  std::optional<double> tol;
  bool json = false;
};

int cmd_measure(const MeasureArgs& a) {
  const StateFile sf = load(a.path);
  const MeasureReport rep = validated([&] {
    return sf.bipartite() ? measure_report(sf.bipartite_state(), a.tol) : measure_report(sf.density());
  });
  json j{{"file", a.path}, {"dims", sf.dims}, {"consistent", rep.consistent()}};
  if (sf.label) j["label"] = *sf.label;
  std::vector<std::pair<std::string, std::string>> lines{{"state", dims_text(sf.dims) + (sf.label ? " " + *sf.label : "")}};
  static const char* order[] = {"C_l1", "C_L", "C_r", "N", "N_L", "N0", "C_l0"};
  for (const char* name : order) {
    if (!rep.contains(name)) continue;
    const auto& e = rep.entries().at(name);
    j["measures"][name] = {{"value", e.value}, {"formula", e.formula}};
    lines.emplace_back(name, num(e.value));
  }
  emit(j, a.json, lines);
  return kOk;
}

// ---------------------------------------------------------------- detect

struct DetectArgs {
  std::string path;
  std::optional<double> tol;
  bool decompose = false;
  bool json = false;
};

int cmd_detect(const DetectArgs& a) {
  const StateFile sf = load(a.path);
  const BipartiteState bs = validated([&] { return sf.bipartite_state(); });
  const double zero_tol = a.tol.value_or(kDefaultPairingTol);
  const auto cert = detect_canonical_pairing(bs, zero_tol);
  const Negativity neg = negativity(bs);
  const double cl1 = c_l1(bs.state());
  if (!cert) {
    json j{{"file", a.path}, {"canonical_pairing", false}, {"N", neg.n}, {"C_l1", cl1}, {"gap", cl1 - neg.n}};
    emit(j, a.json, {{"not canonical pairing", ""}, {"N", num(neg.n)}, {"C_l1", num(cl1)}, {"C_l1 - N", num(cl1 - neg.n)}});
    return kNotPairing;
  }
  json j{{"file", a.path}, {"canonical_pairing", true}, {"certificate", certificate_json(*cert)}, {"N", neg.n},
         {"C_l1", cl1}};
  std::string ts, fs_text;
  for (const auto& t : cert->transpositions) ts += (ts.empty() ? "" : " ") + label_text(t.first) + "<->" + label_text(t.second);
  for (const auto& l : cert->fixed_points) fs_text += (fs_text.empty() ? "" : " ") + label_text(l);
  std::vector<std::pair<std::string, std::string>> lines{
      {"canonical pairing state", ""},
      {"pairing number", std::to_string(cert->pairing_number())},
      {"transpositions", ts.empty() ? "none" : ts},
      {"fixed points", fs_text.empty() ? "none" : fs_text},
      {"N", num(neg.n)},
      {"C_l1", num(cl1)},
  };
  const double e_ppt = validated([&] { return ppt_cost_condition(bs, *cert); });
  j["E_PPT"] = e_ppt;
  lines.emplace_back("E_PPT", num(e_ppt));

  if (a.decompose) {
    if (bs.d_a() != 2) {
      j["decomposition"] = nullptr;
      j["decomposition_error"] = "NotQubit: d_A = " + std::to_string(bs.d_a());
      lines.emplace_back("decomposition", "unavailable (d_A = " + std::to_string(bs.d_a()) + ")");
    } else {
      const auto dec = validated([&] { return qubit_qudit_decompose(bs, zero_tol); });
      const auto pm = pairing_measures(dec);
      json blocks = json::array();
      lines.emplace_back("p0", num(dec.p0));
      for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
        const auto& b = dec.blocks[i];
        const double nb = negativity(b.rho).n;
        blocks.push_back({{"p", b.p}, {"columns", {b.b0, b.b1}}, {"N", nb}, {"matrix", matrix_to_json(b.rho.mat())}});
        lines.emplace_back("block " + std::to_string(i),
                           "p = " + num(b.p) + ", columns (" + std::to_string(b.b0) + "," + std::to_string(b.b1) +
                               "), N = " + num(nb));
      }
      j["decomposition"] = {{"p0", dec.p0}, {"diag_columns", dec.diag_columns}, {"blocks", blocks}};
      j["measures"] = {{"E_D", pm.e_d}, {"C_D", pm.c_d}, {"E_C", pm.e_c}, {"C_C", pm.c_c}, {"E_PPT", pm.e_ppt}};
      for (auto [k, v] : {std::pair{"E_D", pm.e_d}, {"C_D", pm.c_d}, {"E_C", pm.e_c}, {"C_C", pm.c_c}})
        lines.emplace_back(k, num(v));
    }
  }
  emit(j, a.json, lines);
  return kOk;
}

// ---------------------------------------------------------------- witness

struct WitnessArgs {
  std::string path;
  std::size_t index = 0;
  std::vector<std::size_t> a_pairs;
  std::optional<double> tol;
  bool json = false;
};

int cmd_witness(const WitnessArgs& a) {
  const StateFile sf = load(a.path);
  const BipartiteState bs = validated([&] { return sf.bipartite_state(); });
  const double zero_tol = a.tol.value_or(kDefaultPairingTol);
  const auto cert = detect_canonical_pairing(bs, zero_tol);
  if (!cert) {
    emit({{"file", a.path}, {"canonical_pairing", false}}, a.json, {{"not canonical pairing", ""}});
    return kNotPairing;
  }
  const auto w = feasible([&] { return distill_witness(bs, *cert, a.index); });
  const auto& t = cert->transpositions[a.index];
  json j{{"file", a.path},
         {"transposition", {{t.first.j, t.first.k}, {t.second.j, t.second.k}}},
         {"weight", w.weight},
         {"block_negativity", w.block_negativity},
         {"two_qubit_block", matrix_to_json(w.two_qubit.mat())}};
  std::vector<std::pair<std::string, std::string>> lines{
      {"transposition", label_text(t.first) + "<->" + label_text(t.second)},
      {"weight", num(w.weight)},
      {"block negativity", num(w.block_negativity)},
  };
  if (!a.a_pairs.empty()) {
    if (a.a_pairs.size() % 2 != 0) throw Failure{kInfeasible, "InvalidPartition: --a-pairs needs an even count"};
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < a.a_pairs.size(); i += 2) pairs.push_back({a.a_pairs[i], a.a_pairs[i + 1]});
    const double lb = feasible([&] { return distillable_lower_bound(bs, *cert, pairs, zero_tol); });
    j["distillable_lower_bound"] = lb;
    j["N_L"] = negativity(bs).n_log;
    lines.emplace_back("distillable lower bound", num(lb));
    lines.emplace_back("N_L", num(negativity(bs).n_log));
  }
  emit(j, a.json, lines);
  return kOk;
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  std::string kind;
  std::string out;
  std::string spec;
  std::string input;
  std::size_t L = 1;
  std::size_t cap = kAppendixADimCap;
  int stage = 4;
  std::string name;
  std::optional<double> p;
  std::optional<std::size_t> d;
  bool json = false;
};

fs::path sidecar_path(const fs::path& out) {
  fs::path s = out;
  s.replace_extension(".report.json");
  return s;
}

int cmd_construct(const ConstructArgs& a) {
  std::optional<StateFile> result;
  json report{{"kind", a.kind}};
  std::vector<std::pair<std::string, std::string>> lines{{"kind", a.kind}};
  auto note = [&](const std::string& key, double v) {
    report["values"][key] = v;
    lines.emplace_back(key, num(v));
  };
  auto check = [&](const std::string& key, bool ok) {
    report["checks"][key] = ok;
    lines.emplace_back(key, ok ? "PASS" : "FAIL");
  };
  auto input_density = [&] {
    if (a.input.empty()) throw Failure{kInfeasible, "--input is required for " + a.kind};
    const StateFile sf = load(a.input);
    return validated([&] { return sf.density(); });
  };

  if (a.kind == "mc" || a.kind == "qubit-qudit") {
    if (a.spec.empty()) throw Failure{kInfeasible, "--spec is required for " + a.kind};
    const json spec = feasible([&] { return json_arg(a.spec, "spec"); });
    const BipartiteState bs = feasible([&] {
      if (a.kind == "mc") {
        const auto dims = field<std::vector<std::size_t>>(spec, "dims");
        if (dims.size() != 2) throw Error(Errc::ParseError, "spec.dims: expected [d_A, d_B]");
        MCSpec m{coeffs_from_json(field<json>(spec, "coeffs"), "spec.coeffs"),
                 field<std::vector<std::size_t>>(spec, "a_labels"), field<std::vector<std::size_t>>(spec, "b_labels")};
        return make_mc_state(m, dims[0], dims[1]);
      }
      std::vector<QubitQuditBlockSpec> blocks;
      for (const auto& b : field<json>(spec, "blocks")) {
        const auto cols = field<std::vector<std::size_t>>(b, "columns");
        if (cols.size() != 2) throw Error(Errc::ParseError, "spec.blocks.columns: expected [b0, b1]");
        blocks.push_back({field<double>(b, "p"), coeffs_from_json(field<json>(b, "coeffs"), "spec.blocks.coeffs"),
                          cols[0], cols[1]});
      }
      const double p0 = spec.contains("p0") ? field<double>(spec, "p0") : 0.0;
      const auto diag = spec.contains("diag") ? field<std::vector<double>>(spec, "diag") : std::vector<double>{};
      return make_qubit_qudit_pairing(field<std::size_t>(spec, "d_b"), p0, diag, blocks);
    });
    const auto cert = detect_canonical_pairing(bs);
    const double n = negativity(bs).n, c = c_l1(bs.state());
    note("N", n);
    note("C_l1", c);
    check("N = C_l1", std::abs(n - c) <= 1e-9);
    check("certified canonical pairing", cert.has_value());
    if (cert) note("pairing_number", static_cast<double>(cert->pairing_number()));
    if (a.kind == "mc") check("canonical MC structure", has_canonical_mc_structure(bs));
    result = make_state_file(bs, a.kind);
  } else if (a.kind == "cnot-embed") {
    const DensityMatrix rho = input_density();
    const BipartiteState bs = cnot_embed(rho);
    const double n = negativity(bs).n, c = c_l1(rho);
    note("C_l1(input)", c);
    note("N(output)", n);
    check("N(output) = C_l1(input)", std::abs(n - c) <= 1e-8);
    const auto cert = detect_canonical_pairing(bs);
    check("certified canonical pairing", cert.has_value());
    if (cert) note("pairing_number", static_cast<double>(cert->pairing_number()));
    result = make_state_file(bs, "cnot-embed");
  } else if (a.kind == "appendix-a") {
    if (a.stage < 2 || a.stage > 4) throw Failure{kInfeasible, "--stage must be 2, 3 or 4"};
    const DensityMatrix rho = input_density();
    const auto chain = feasible([&] { return appendix_a_chain(rho, a.L, a.cap); });
    report["K"] = chain.K;
    report["L"] = chain.L;
    report["d"] = chain.d;
    report["dims"] = {{"rho2", chain.rho2.dim()}, {"rho3", chain.rho3.dim()}, {"rho4", chain.rho4.dim()}};
    report["offdiag_count"] = chain.report.offdiag_count;
    report["multiset_max_dev"] = chain.report.multiset_max_dev;
    lines.emplace_back("K", std::to_string(chain.K));
    lines.emplace_back("dims rho2/rho3/rho4", std::to_string(chain.rho2.dim()) + "/" + std::to_string(chain.rho3.dim()) +
                                                  "/" + std::to_string(chain.rho4.dim()));
    note("trace(M)", chain.trace_m);
    check("K >= 2d and L | K", chain.report.k_valid);
    check("trace(M) < 1", chain.report.trace_below_one);
    check("off-diagonal multiset rho2 = rho3", chain.report.multiset_match);
    check("rho4 = |rho3| entrywise", chain.report.abs_map);
    check("diagonal unitary maps rho3 to rho4", chain.report.unitary_map);
    const DensityMatrix& out = a.stage == 2 ? chain.rho2 : a.stage == 3 ? chain.rho3 : chain.rho4;
    report["stage"] = a.stage;
    result = make_state_file(out, "appendix-a rho" + std::to_string(a.stage));
  } else if (a.kind == "counterexample") {
    std::vector<double> params;
    if (a.p) params.push_back(*a.p);
    if (a.d) params.push_back(static_cast<double>(*a.d));
    if (a.name == "isotropic" && !a.p) throw Failure{kInfeasible, "isotropic needs --p"};
    const auto ce = feasible([&] { return named_counterexample(a.name, params); });
    report["name"] = ce.name;
    lines.emplace_back("name", ce.name);
    if (ce.name == "tau-remark") {
      const auto ev = hermitian_eigenvalues(ce.state.mat());
      const auto tev = hermitian_eigenvalues(*ce.companion);
      report["rho_eigenvalues"] = ev;
      report["tau_eigenvalues"] = tev;
      report["tau_matrix"] = matrix_to_json(*ce.companion);
      note("tau min eigenvalue", tev.back());
      check("tau(rho) not positive semidefinite", tev.back() < -1e-10);
    } else {
      const BipartiteState bs = ce.bipartite();
      const auto cert = detect_canonical_pairing(bs);
      const double n = negativity(bs).n, c = c_l1(bs.state());
      note("N", n);
      note("C_l1", c);
      note("C_l1 - N", c - n);
      check("certified canonical pairing", cert.has_value());
      if (ce.name == "appendix-f") {
        check("N = C_l1", std::abs(n - c) <= 1e-9);
        bool refused = false;
        try {
          qubit_qudit_decompose(bs);
        } catch (const Error& e) {
          refused = e.code() == Errc::NotQubit;
        }
        check("qubit-qudit decomposition refused", refused);
      }
    }
    result = make_state_file(ce.state, ce.name);
    result->dims = ce.dims;
  } else {
    throw Failure{kInfeasible, "unknown construction '" + a.kind + "'"};
  }

  bool all_pass = true;
  if (report.contains("checks"))
    for (const auto& [k, v] : report["checks"].items()) all_pass = all_pass && v.get<bool>();
  report["all_checks_pass"] = all_pass;
  report["out"] = a.out;
  report["dims"] = result->dims;
  feasible([&] {
    write_state_file(a.out, *result);
    write_json_file(sidecar_path(a.out), report);
    return 0;
  });
  lines.emplace_back("wrote", a.out + " (+ " + sidecar_path(a.out).string() + ")");
  emit(report, a.json, lines);
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite = "all";
  std::size_t trials = 100;
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> dims;
  std::optional<double> tol;
  std::string report;
  bool json = false;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PAIRINGLAB_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Failure{kParse, std::string("PAIRINGLAB_SEED: not an unsigned integer: ") + env};
  }
  return 0;
}

int cmd_verify(const VerifyArgs& a) {
  VerifyOptions opts;
  opts.trials = a.trials;
  opts.seed = resolve_seed(a.seed);
  opts.tol = a.tol;
  if (!a.dims.empty()) opts.dims = std::pair{a.dims[0], a.dims[1]};
  const VerifyReport rep = feasible([&] { return run_verify(a.suite, opts); });
  const json j = rep.to_json();
  if (!a.report.empty()) feasible([&] {
      write_json_file(a.report, j);
      return 0;
    });
  if (a.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "rng " << Rng::algorithm << ", seed " << rep.seed << ", trials " << rep.trials << "\n";
    for (const auto& s : rep.suites) {
      std::cout << std::left << std::setw(18) << s.suite << "  checks " << std::setw(7) << s.checks << "  violations "
                << std::setw(4) << s.violations.size() << "  worst gap " << num(s.worst_gap) << " ("
                << s.worst_quantity << ")  " << num(s.elapsed_ms) << " ms\n";
      for (std::size_t i = 0; i < s.violations.size() && i < 10; ++i) {
        const auto& v = s.violations[i];
        std::cout << "  trial " << v.trial << ": " << v.quantity << "  lhs " << num(v.lhs) << "  rhs " << num(v.rhs)
                  << "  gap " << num(v.gap) << "\n";
      }
      if (s.violations.size() > 10) std::cout << "  ... " << s.violations.size() - 10 << " more\n";
    }
    std::cout << (rep.ok() ? "OK" : "VIOLATIONS: " + std::to_string(rep.violation_count())) << "\n";
  }
  return rep.ok() ? kOk : kViolations;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence, negativity and pairing-state toolkit"};
  app.require_subcommand(1);

  MeasureArgs ma;
  auto* measure = app.add_subcommand("measure", "Coherence and negativity measures of a state file");
  measure->add_option("file", ma.path, "State file")->required();
  measure->add_option("--tol", ma.tol, "Zero tolerance for the N0 and C_l0 counters");
  measure->add_flag("--json", ma.json, "Full-precision JSON output");

  DetectArgs da;
  auto* detect = app.add_subcommand("detect", "Certify a canonical pairing state");
  detect->add_option("file", da.path, "Bipartite state file")->required();
  detect->add_option("--tol", da.tol, "Relative presence threshold for partial-transpose entries");
  detect->add_flag("--decompose", da.decompose, "Qubit-qudit block decomposition and closed-form measures (d_A = 2)");
  detect->add_flag("--json", da.json, "Full-precision JSON output");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a state and write it with a report sidecar");
  construct->add_option("kind", ca.kind, "mc | qubit-qudit | cnot-embed | appendix-a | counterexample")->required();
  construct->add_option("-o,--out", ca.out, "Output state file")->required();
  construct->add_option("--spec", ca.spec, "JSON spec (inline or file) for mc / qubit-qudit");
  construct->add_option("--input", ca.input, "Input state file for cnot-embed / appendix-a");
  construct->add_option("--L", ca.L, "Phase order for appendix-a");
  construct->add_option("--cap", ca.cap, "Dimension cap for appendix-a");
  construct->add_option("--stage", ca.stage, "Which appendix-a state to write (2, 3 or 4)");
  construct->add_option("--name", ca.name, "Counterexample name: tau-remark | appendix-f | isotropic");
  construct->add_option("--p", ca.p, "Isotropic mixing weight");
  construct->add_option("--d", ca.d, "Isotropic local dimension");
  construct->add_flag("--json", ca.json, "Print the report as JSON");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run seeded property suites");
  verify->add_option("--suite", va.suite, "Suite name or 'all'");
  verify->add_option("--trials", va.trials, "Trials per suite");
  verify->add_option("--seed", va.seed, "Seed (falls back to PAIRINGLAB_SEED, then 0)");
  verify->add_option("--dims", va.dims, "Fixed dimensions d_A d_B")->expected(2);
  verify->add_option("--tol", va.tol, "Override every continuous tolerance");
  verify->add_option("--report", va.report, "Also write the JSON report here");
  verify->add_flag("--json", va.json, "Full-precision JSON output");

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "Distillation witness for one transposition");
  witness->add_option("file", wa.path, "Bipartite state file")->required();
  witness->add_option("--index", wa.index, "Transposition index");
  witness->add_option("--a-pairs", wa.a_pairs, "Disjoint A-label pairs for the distillable lower bound");
  witness->add_option("--tol", wa.tol, "Relative presence threshold for partial-transpose entries");
  witness->add_flag("--json", wa.json, "Full-precision JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*measure) return cmd_measure(ma);
    if (*detect) return cmd_detect(da);
    if (*construct) return cmd_construct(ca);
    if (*verify) return cmd_verify(va);
    if (*witness) return cmd_witness(wa);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return validation_exit(e.code());
  }
  return kOk;
}
