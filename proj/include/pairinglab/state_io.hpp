#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pairinglab/linalg.hpp"

namespace pairinglab {

/// On-disk state: {"dims": [dA, dB] | [d], "matrix": [[[re, im], ...], ...], "label": "..."}.
struct StateFile {
  std::vector<std::size_t> dims;
  ComplexMatrix matrix;
  std::optional<std::string> label;

  bool bipartite() const noexcept { return dims.size() == 2; }
  /// Validation failures throw InvalidState or DimensionMismatch.
  DensityMatrix density(double validation_tol = kValidationTol) const;
  BipartiteState bipartite_state(double validation_tol = kValidationTol) const;
};

StateFile make_state_file(const DensityMatrix& rho, std::optional<std::string> label = std::nullopt);
StateFile make_state_file(const BipartiteState& bs, std::optional<std::string> label = std::nullopt);

/// Structural problems throw ParseError naming the field and row/column.
StateFile parse_state_file(std::string_view text);
StateFile read_state_file(const std::filesystem::path& path);

/// Shortest round-trip decimal form for every double, so reading back is bit-exact.
std::string format_state_file(const StateFile& sf);
void write_state_file(const std::filesystem::path& path, const StateFile& sf);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, std::string_view field = "matrix");

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace pairinglab
