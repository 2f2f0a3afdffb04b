#include "pqb/table.hpp"

#include <charconv>
#include <json.hpp>

namespace pqb {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // fold negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv(const ResultTable& table, std::ostream& os) {
  os << "#";
  for (const auto& [key, value] : table.meta) os << " " << key << "=" << value;
  os << "\n";
  for (std::size_t i = 0; i < table.schema.size(); ++i)
    os << (i ? "," : "") << table.schema[i];
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

void write_json(const ResultTable& table, std::ostream& os) {
  nlohmann::ordered_json j;
  auto& meta = j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) meta[key] = value;
  j["schema"] = table.schema;
  j["rows"] = table.rows;
  os << j.dump(2) << "\n";
}

}  // namespace pqb
