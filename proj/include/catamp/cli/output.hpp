#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "catamp/serialize.hpp"

namespace catamp::cli {

enum class Format { csv, json };

Format format_from_string(const std::string& s);

using Cell = std::variant<std::monostate, int, double, std::string>;

/// Column-major-agnostic table rendered as CSV with a header row or as a
/// JSON document {schema_version, columns, rows}.
struct Table {
  std::string stem;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string csv() const;
  Json json() const;
};

struct Artifact {
  std::string name;
  std::string content;
};

/// Files produced by one command, written in one pass at the end.
class OutputSet {
 public:
  void add_json(const std::string& name, const Json& doc);
  void add_table(const Table& table, Format format);
  void add_text(const std::string& name, std::string content);

  const std::vector<Artifact>& files() const { return files_; }
  const Artifact* find(const std::string& name) const;

 private:
  std::vector<Artifact> files_;
};

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

/// Shortest round-trip decimal for a double.
std::string format_number(double v);

/// Writes every artifact under `dir` and returns the digest map.
Json write_outputs(const std::string& dir, const OutputSet& out);

}  // namespace catamp::cli
