#include "pairinglab/state_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pairinglab/error.hpp"

namespace pairinglab {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(Errc::ParseError, where + ": " + what);
}

std::string at(std::string_view field, std::size_t r) { return std::string(field) + "[" + std::to_string(r) + "]"; }
std::string at(std::string_view field, std::size_t r, std::size_t c) { return at(field, r) + "[" + std::to_string(c) + "]"; }

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) parse_fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_fail(where, "non-finite value");
  return x;
}

}  // namespace

DensityMatrix StateFile::density(double validation_tol) const {
  std::size_t d = 1;
  for (std::size_t x : dims) d *= x;
  if (dims.empty() || d != matrix.rows())
    throw Error(Errc::DimensionMismatch, "dims multiply to " + std::to_string(d) + " but matrix is " +
                                             std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()));
  return DensityMatrix(matrix, validation_tol);
}

BipartiteState StateFile::bipartite_state(double validation_tol) const {
  if (!bipartite()) throw Error(Errc::DimensionMismatch, "state file is not bipartite (dims has one entry)");
  return BipartiteState(density(validation_tol), dims[0], dims[1]);
}

StateFile make_state_file(const DensityMatrix& rho, std::optional<std::string> label) {
  return {{rho.dim()}, rho.mat(), std::move(label)};
}

StateFile make_state_file(const BipartiteState& bs, std::optional<std::string> label) {
  return {{bs.d_a(), bs.d_b()}, bs.mat(), std::move(label)};
}

ComplexMatrix matrix_from_json(const json& j, std::string_view field) {
  if (!j.is_array() || j.empty()) parse_fail(std::string(field), "expected a non-empty array of rows");
  const std::size_t n = j.size();
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const json& row = j[r];
    if (!row.is_array()) parse_fail(at(field, r), "expected an array");
    if (row.size() != n)
      parse_fail(at(field, r), "has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
    for (std::size_t c = 0; c < n; ++c) {
      const json& e = row[c];
      const std::string where = at(field, r, c);
      if (!e.is_array() || e.size() != 2) parse_fail(where, "expected [re, im] pair");
      m(r, c) = cplx(finite_number(e[0], where + "[0]"), finite_number(e[1], where + "[1]"));
    }
  }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    // Adding +0.0 turns -0.0 into 0.0 and leaves every other value unchanged.
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real() + 0.0, m(r, c).imag() + 0.0});
    rows.push_back(std::move(row));
  }
  return rows;
}

StateFile parse_state_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail("document", e.what());
  }
  if (!doc.is_object()) parse_fail("document", "expected a JSON object");

  StateFile sf;
  if (!doc.contains("dims")) parse_fail("dims", "missing field");
  const json& dims = doc["dims"];
  if (!dims.is_array() || dims.empty() || dims.size() > 2) parse_fail("dims", "expected [d] or [d_A, d_B]");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!dims[i].is_number_unsigned() || dims[i].get<std::size_t>() == 0)
      parse_fail(at("dims", i), "expected a positive integer");
    sf.dims.push_back(dims[i].get<std::size_t>());
  }
  if (!doc.contains("matrix")) parse_fail("matrix", "missing field");
  sf.matrix = matrix_from_json(doc["matrix"]);
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) parse_fail("label", "expected a string");
    sf.label = doc["label"].get<std::string>();
  }
  return sf;
}

StateFile read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_file(buf.str());
}

// One matrix row per line; numbers go through the JSON serializer so they
// keep their shortest round-trip form.
std::string format_state_file(const StateFile& sf) {
  std::string out = "{\n  \"dims\": " + json(sf.dims).dump() + ",\n";
  if (sf.label) out += "  \"label\": " + json(*sf.label).dump() + ",\n";
  out += "  \"matrix\": [\n";
  const json rows = matrix_to_json(sf.matrix);
  for (std::size_t r = 0; r < rows.size(); ++r) out += "    " + rows[r].dump() + (r + 1 < rows.size() ? ",\n" : "\n");
  out += "  ]\n}\n";
  return out;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << j.dump(2) << "\n";
}

void write_state_file(const std::filesystem::path& path, const StateFile& sf) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << format_state_file(sf);
}

}  // namespace pairinglab
