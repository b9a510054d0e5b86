#include "geocoh/cli/state_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace geocoh::cli {

using nlohmann::json;

StateFile parse_state(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("state file must be a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw ParseError("missing integer field 'dim'");
  }
  if (!doc.contains("matrix") || !doc["matrix"].is_array()) {
    throw ParseError("missing array field 'matrix'");
  }
  const auto dim = doc["dim"].get<long long>();
  const json& rows = doc["matrix"];
  if (dim < 1 || static_cast<long long>(rows.size()) != dim) {
    throw ParseError("'dim' is " + std::to_string(dim) + " but 'matrix' has " +
                     std::to_string(rows.size()) + " rows");
  }
  if (!rows[0].is_array()) throw ParseError("matrix row 0 is not an array");
  const auto cols = rows[0].size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) {
      throw ParseError("matrix row " + std::to_string(i) + " has inconsistent length");
    }
  }

  StateFile state;
  state.matrix.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const json& entry = rows[i][j];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") is not a [re, im] pair");
      }
      state.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw ParseError("'label' must be a string");
    state.label = doc["label"].get<std::string>();
  }
  return state;
}

StateFile read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_state(buffer.str());
}

std::string serialize_state(const StateFile& state) {
  // One matrix row per line keeps hand-edited files readable and diffs small.
  std::ostringstream out;
  out << "{\n \"dim\": " << state.matrix.rows() << ",\n";
  if (!state.label.empty()) out << " \"label\": " << json(state.label).dump() << ",\n";
  out << " \"matrix\": [\n";
  for (Eigen::Index i = 0; i < state.matrix.rows(); ++i) {
    out << "  [";
    for (Eigen::Index j = 0; j < state.matrix.cols(); ++j) {
      const Complex z = state.matrix(i, j);
      out << (j ? ", " : "") << "[" << json(z.real()).dump() << ", " << json(z.imag()).dump()
          << "]";
    }
    out << "]" << (i + 1 < state.matrix.rows() ? "," : "") << "\n";
  }
  out << " ]\n}\n";
  return out.str();
}

void write_state_file(const std::filesystem::path& path, const StateFile& state) {
  std::ofstream out(path);
  if (!out) throw FileNotFound("cannot write " + path.string());
  out << serialize_state(state);
  if (!out) throw FileNotFound("write failed for " + path.string());
}

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

}  // namespace geocoh::cli
