#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace pqb {

/// Ordered, pre-formatted result rows. Everything is a string already so
/// CSV and JSON render byte-identically across runs.
struct ResultTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> schema;
  std::vector<std::vector<std::string>> rows;
};

/// Shortest decimal that round-trips; "-0" is normalized to "0".
std::string format_double(double v);

/// One '#' meta comment line, header row, data rows.
void write_csv(const ResultTable& table, std::ostream& os);

/// Single object {"meta": {...}, "schema": [...], "rows": [[...]]}.
void write_json(const ResultTable& table, std::ostream& os);

}  // namespace pqb
