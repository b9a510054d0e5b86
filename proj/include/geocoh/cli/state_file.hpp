#pragma once

// JSON state files:
//   {"dim": 2, "label": "plus", "matrix": [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]]}
// Entries are [re, im] pairs in row-major order.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "geocoh/matcore.hpp"

namespace geocoh::cli {

struct StateFile {
  std::string label;
  CMatrix matrix;
};

/// Missing or unreadable file.
class FileNotFound : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed JSON or a document that does not follow the state-file schema.
class ParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

StateFile parse_state(std::string_view text);
StateFile read_state_file(const std::filesystem::path& path);

std::string serialize_state(const StateFile& state);
void write_state_file(const std::filesystem::path& path, const StateFile& state);

/// Shortest decimal representation that reads back to the same double.
std::string format_double(double value);

}  // namespace geocoh::cli
