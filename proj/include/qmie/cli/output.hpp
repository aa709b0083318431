#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qmie::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One table cell; std::monostate renders as an undefined value.
using Value = std::variant<std::monostate, double, std::int64_t, std::string>;

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Everything a command emits: the echoed configuration, scalar summary
/// lines, and a rectangular table.
struct Document {
  std::string command;
  KeyValues config;
  KeyValues summary;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// `#` provenance lines (tool version, command, config, summary), then the
/// column header, then one line per row. Undefined cells are written as "undef".
std::string render_csv(const Document& doc);

/// {"config": {...}, "schema": {...}, "data": [[...], ...]}; undefined cells
/// and non-finite numbers become null.
std::string render_json(const Document& doc);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

inline constexpr const char* kToolVersion = "qmie 0.1.0";

}  // namespace qmie::cli
