#include "spinmode/results.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "spinmode/version.hpp"

namespace spinmode {

ResultTable::ResultTable(std::string table_name, std::vector<std::string> cols)
    : name(std::move(table_name)),
      columns(std::move(cols)),
      integer_column(columns.size(), false) {}

void ResultTable::mark_integer(const std::string& column) {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == column) {
      integer_column[i] = true;
      return;
    }
  throw std::logic_error("mark_integer: no column named " + column);
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("add_row: cell count does not match columns");
  rows.push_back(std::move(row));
}

OutputFormat output_format_from_string(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "both") return OutputFormat::both;
  throw std::invalid_argument("unknown output format '" + name + "' (expected csv, json, both)");
}

std::string format_cell(const Cell& cell, bool integer) {
  if (!cell) return "";
  if (integer) return std::to_string(static_cast<long long>(*cell));
  // shortest representation that round-trips the double, matching the mirror
  return nlohmann::json(*cell).dump();
}

namespace {

nlohmann::json table_to_json(const ResultTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!row[i])
        r.push_back(nullptr);
      else if (table.integer_column[i])
        r.push_back(static_cast<long long>(*row[i]));
      else
        r.push_back(*row[i]);
    }
    rows.push_back(std::move(r));
  }
  return {{"columns", table.columns}, {"rows", std::move(rows)}};
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << body;
  if (!out) throw std::runtime_error("short write to " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> write_results(
    const std::filesystem::path& directory, const std::string& basename,
    const std::vector<ResultTable>& tables, const nlohmann::json& scenario,
    OutputFormat format) {
  std::filesystem::create_directories(directory);
  std::vector<std::filesystem::path> written;
  const std::string scenario_line = scenario.dump();

  if (format == OutputFormat::csv || format == OutputFormat::both) {
    for (const auto& table : tables) {
      std::string body;
      body += "# generator: spinmode " + std::string(kVersion) + "\n";
      body += "# scenario: " + scenario_line + "\n";
      for (std::size_t i = 0; i < table.columns.size(); ++i)
        body += (i ? "," : "") + table.columns[i];
      body += "\n";
      for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i) body += ",";
          body += format_cell(row[i], table.integer_column[i]);
        }
        body += "\n";
      }
      const std::string stem =
          table.name.empty() ? basename : basename + "_" + table.name;
      const auto path = directory / (stem + ".csv");
      write_file(path, body);
      written.push_back(path);
    }
  }

  if (format == OutputFormat::json || format == OutputFormat::both) {
    nlohmann::json doc;
    doc["generator"] = "spinmode " + std::string(kVersion);
    doc["scenario"] = scenario;
    nlohmann::json tabs = nlohmann::json::object();
    for (const auto& table : tables)
      tabs[table.name.empty() ? "results" : table.name] = table_to_json(table);
    doc["tables"] = std::move(tabs);
    const auto path = directory / (basename + ".json");
    write_file(path, doc.dump(2) + "\n");
    written.push_back(path);
  }
  return written;
}

}  // namespace spinmode
