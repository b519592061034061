#include <ostream>

#include <json.hpp>

#include "harmtree/cli.hpp"

namespace harmtree::cli {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void write_rows(std::ostream& out, OutputFormat format, const Header& header, const std::vector<Row>& rows) {
  auto flag = [](const Row& r) -> std::string {
    if (!r.monotone_ok) return "na";
    return *r.monotone_ok ? "true" : "false";
  };

  if (format == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["header"] = {{"d", header.d}, {"p", header.p}, {"mode", header.mode}, {"seed", header.seed},
                   {"model", header.model}};
    j["rows"] = nlohmann::ordered_json::array();
    for (const Row& r : rows) {
      nlohmann::ordered_json row = {{"k", r.k},
                                    {"functional", r.functional},
                                    {"value_exact", r.value_exact},
                                    {"value_decimal", r.value_decimal}};
      row["monotone_ok"] = r.monotone_ok ? nlohmann::ordered_json(*r.monotone_ok) : nlohmann::ordered_json(nullptr);
      j["rows"].push_back(row);
    }
    out << j.dump(2) << '\n';
    return;
  }

  const char sep = format == OutputFormat::csv ? ',' : '\t';
  out << "k" << sep << "functional" << sep << "value_exact" << sep << "value_decimal" << sep << "monotone_ok\n";
  for (const Row& r : rows) {
    out << r.k << sep << r.functional << sep << r.value_exact << sep << r.value_decimal << sep << flag(r) << '\n';
  }
}

}  // namespace harmtree::cli
