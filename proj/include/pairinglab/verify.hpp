#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pairinglab {

/// gap is lhs − rhs for inequalities (lhs ≤ rhs expected) and |lhs − rhs| for
/// equalities; a check fails when gap exceeds its tolerance.
struct Violation {
  std::uint64_t trial;
  std::string quantity;
  double lhs;
  double rhs;
  double gap;
};

struct SuiteResult {
  std::string suite;
  std::size_t trials = 0;
  std::size_t checks = 0;
  std::vector<Violation> violations;  // sorted by trial index
  double worst_gap = -std::numeric_limits<double>::infinity();
  std::string worst_quantity;
  double elapsed_ms = 0.0;
};

struct VerifyOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::optional<std::pair<std::size_t, std::size_t>> dims;  // cycles {2,3,4}² when absent
  std::optional<double> tol;                                 // overrides every continuous tolerance
};

struct VerifyReport {
  std::uint64_t seed;
  std::size_t trials;
  std::optional<std::pair<std::size_t, std::size_t>> dims;
  std::vector<SuiteResult> suites;

  bool ok() const noexcept;
  std::size_t violation_count() const noexcept;
  nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();

/// `suite` is one of suite_names() or "all"; anything else throws UnknownName.
VerifyReport run_verify(std::string_view suite, const VerifyOptions& opts);

}  // namespace pairinglab
