#include "catamp/cli/output.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>

#include "catamp/errors.hpp"

namespace catamp::cli {
namespace {

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<int>(c)) return std::to_string(std::get<int>(c));
  if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return {};
}

Json cell_json(const Cell& c) {
  if (std::holds_alternative<int>(c)) return std::get<int>(c);
  if (std::holds_alternative<double>(c)) return std::get<double>(c);
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return nullptr;
}

}  // namespace

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ConfigError(fmt::format("--format must be csv or json, got '{}'", s));
}

std::string format_number(double v) { return fmt::format("{}", v); }

std::string Table::csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
    out += '\n';
  }
  return out;
}

Json Table::json() const {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["columns"] = columns;
  Json rows_json = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array();
    for (const Cell& c : row) r.push_back(cell_json(c));
    rows_json.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows_json);
  return doc;
}

void OutputSet::add_json(const std::string& name, const Json& doc) { add_text(name, doc.dump(2) + "\n"); }

void OutputSet::add_table(const Table& table, Format format) {
  if (format == Format::csv) {
    add_text(table.stem + ".csv", table.csv());
  } else {
    add_json(table.stem + ".json", table.json());
  }
}

void OutputSet::add_text(const std::string& name, std::string content) {
  for (auto& f : files_) {
    if (f.name == name) {
      f.content = std::move(content);
      return;
    }
  }
  files_.push_back(Artifact{name, std::move(content)});
}

const Artifact* OutputSet::find(const std::string& name) const {
  for (const auto& f : files_) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

Json write_outputs(const std::string& dir, const OutputSet& out) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError(fmt::format("cannot create output directory '{}': {}", dir, ec.message()));
  Json digests = Json::object();
  for (const auto& f : out.files()) {
    const std::filesystem::path path = std::filesystem::path(dir) / f.name;
    std::ofstream os(path, std::ios::binary);
    os << f.content;
    if (!os) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
    digests[f.name] = "fnv1a64:" + hex64(fnv1a64(f.content));
  }
  return digests;
}

}  // namespace catamp::cli
