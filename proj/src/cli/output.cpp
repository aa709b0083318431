#include "qmie/cli/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

namespace qmie::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), res.ptr};
}

namespace {

std::string csv_cell(const Value& v) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "undef"; }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, v);
}

nlohmann::ordered_json json_cell(const Value& v) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double d) const {
      if (!std::isfinite(d)) return nullptr;
      return d;
    }
    nlohmann::ordered_json operator()(std::int64_t i) const { return i; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, v);
}

}  // namespace

std::string render_csv(const Document& doc) {
  std::string out;
  out += "# ";
  out += kToolVersion;
  out += "\n# command = " + doc.command + "\n";
  for (const auto& [key, value] : doc.config) out += "# " + key + " = " + value + "\n";
  for (const auto& [key, value] : doc.summary) out += "# summary " + key + " = " + value + "\n";
  for (std::size_t i = 0; i < doc.columns.size(); ++i) {
    if (i) out += ',';
    out += doc.columns[i];
  }
  out += '\n';
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Document& doc) {
  nlohmann::ordered_json j;
  auto& config = j["config"];
  config["version"] = kToolVersion;
  config["command"] = doc.command;
  for (const auto& [key, value] : doc.config) config[key] = value;
  j["schema"]["columns"] = doc.columns;
  j["summary"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : doc.summary) j["summary"][key] = value;
  auto& data = j["data"];
  data = nlohmann::ordered_json::array();
  for (const auto& row : doc.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& cell : row) r.push_back(json_cell(cell));
    data.push_back(std::move(r));
  }
  return j.dump(1) + "\n";
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path + "'");
  }
}

}  // namespace qmie::cli
