#include <doctest.h>

#include <omp.h>

#include "pairinglab/error.hpp"
#include "pairinglab/verify.hpp"

using namespace pairinglab;

namespace {
nlohmann::json without_timing(nlohmann::json j) {
  for (auto& s : j["suites"]) s.erase("elapsed_ms");
  return j;
}
}  // namespace

TEST_CASE("every suite passes on the default ensemble") {
  VerifyOptions opts;
  opts.trials = 90;
  opts.seed = 7;
  const auto report = run_verify("all", opts);
  REQUIRE(report.suites.size() == suite_names().size());
  for (const auto& s : report.suites) {
    INFO(s.suite);
    CHECK(s.violations.empty());
    CHECK(s.checks >= s.trials);
    if (!s.violations.empty()) MESSAGE(s.violations.front().quantity);
  }
  CHECK(report.ok());
  const auto j = report.to_json();
  CHECK(j["rng"] == "philox4x32-10");
  CHECK(j["ok"] == true);
  CHECK(j["dims"].is_null());
}

TEST_CASE("fixed dimensions") {
  VerifyOptions opts;
  opts.trials = 200;
  opts.seed = 7;
  opts.dims = {3, 3};
  CHECK(run_verify("negativity-bound", opts).ok());
  opts.dims = {2, 6};
  CHECK(run_verify("lowerbound", opts).ok());
  CHECK(run_verify("pairing-roundtrip", opts).ok());
  opts.dims = {1, 3};
  CHECK_THROWS_AS(run_verify("witness", opts), Error);
}

TEST_CASE("reports are deterministic and independent of thread count") {
  VerifyOptions opts;
  opts.trials = 64;
  opts.seed = 1234;
  const int threads = omp_get_max_threads();
  omp_set_num_threads(4);
  const auto a = without_timing(run_verify("all", opts).to_json());
  omp_set_num_threads(1);
  const auto b = without_timing(run_verify("all", opts).to_json());
  omp_set_num_threads(threads);
  CHECK(a == b);
  opts.seed = 1235;
  CHECK(without_timing(run_verify("all", opts).to_json()) != a);
}

TEST_CASE("violations are reported in trial order") {
  VerifyOptions opts;
  opts.trials = 40;
  opts.seed = 3;
  opts.tol = -1.0;  // no equality can hold
  const auto report = run_verify("additivity", opts);
  REQUIRE_FALSE(report.ok());
  const auto& v = report.suites[0].violations;
  CHECK(v.size() == 80);
  CHECK(std::is_sorted(v.begin(), v.end(), [](const Violation& x, const Violation& y) { return x.trial < y.trial; }));
  CHECK(report.suites[0].worst_gap >= 0.0);
}

TEST_CASE("unknown suite") {
  try {
    run_verify("bogus", {});
    FAIL("expected UnknownName");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownName);
  }
}
