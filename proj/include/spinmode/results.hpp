#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

// Deterministic result emission: CSV (one file per table, values in
// round-trip-exact shortest form, empty cells for singular samples) plus a
// JSON mirror that embeds the scenario so every output can be re-run without
// the original file.

namespace spinmode {

using Cell = std::optional<double>;

struct ResultTable {
  std::string name;  // appended to the output basename
  std::vector<std::string> columns;
  std::vector<bool> integer_column;  // same length as columns
  std::vector<std::vector<Cell>> rows;

  ResultTable(std::string table_name, std::vector<std::string> cols);
  void mark_integer(const std::string& column);
  void add_row(std::vector<Cell> row);
};

enum class OutputFormat { csv, json, both };

OutputFormat output_format_from_string(const std::string& name);

std::string format_cell(const Cell& cell, bool integer);

// returns the paths written
std::vector<std::filesystem::path> write_results(
    const std::filesystem::path& directory, const std::string& basename,
    const std::vector<ResultTable>& tables, const nlohmann::json& scenario,
    OutputFormat format);

}  // namespace spinmode
