#pragma once

// Census tables, JSON rendering and batch scheduling behind the glform CLI.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "glform/bounds.hpp"
#include "glform/error.hpp"
#include "glform/quasialt.hpp"
#include "json.hpp"

namespace glform {

struct CensusTable {
  std::vector<KnotRecord> rows;
  std::string source;
  std::set<std::string> columns;

  const KnotRecord* find(const std::string& name) const;
  bool has(const std::string& column) const { return columns.count(column) > 0; }
};

// Header row required, with at least `name` and `pd`; other known columns are
// optional and empty cells mean "absent". Throws MissingColumn or BadRow.
CensusTable parse_census(std::istream& in, const std::string& source);
CensusTable load_census(const std::filesystem::path& path);

// Exact name first; otherwise "X*" resolves to the mirror of row X.
// Throws UnknownName.
KnotRecord lookup_knot(const std::vector<CensusTable>& tables, const std::string& name);

nlohmann::json integer_to_json(const Integer& n);
nlohmann::json invariants_json(const Diagram& d);
nlohmann::json verdict_json(const QAVerdict& v);
nlohmann::json interval_json(const Interval& iv);
nlohmann::json report_json(const BoundsReport& r);
nlohmann::json error_json(const Error& e);

// key.path = value lines.
std::string json_to_text(const nlohmann::json& j);

struct ConventionFinding {
  std::string name;
  std::string column;
  std::string table_value;
  std::string computed_value;
};
// Rows whose sigma or det column disagrees with the computation.
std::vector<ConventionFinding> audit_conventions(const CensusTable& table);

// Runs `task` on every row with at most `jobs` workers; results keep row order.
std::vector<std::string> run_batch(const std::vector<KnotRecord>& rows,
                                   const std::function<std::string(const KnotRecord&)>& task, int jobs);

}  // namespace glform
