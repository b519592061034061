#include "harmtree/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace harmtree {

namespace {

using nlohmann::json;

Rational rational_field(const json& j, const std::string& what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw Error(ErrorKind::parse_error, what + " must be a \"p/q\" string");
}

std::vector<Rational> rational_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorKind::parse_error, what + " must be an array");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_field(x, what));
  return out;
}

json rational_list_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

Splitter parse_splitter(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "equal_split") return Splitter::equal_split();
  if (kind == "double_half") return Splitter::double_half();
  if (kind == "random") {
    return Splitter::random(j.value("seed", std::uint64_t{0}), j.value("magnitude", 9), j.value("denominator", 4));
  }
  if (kind == "table") {
    TableSplit table;
    for (const auto& row : j.at("table")) {
      const ValueClass cls{rational_field(row.at("value"), "value"), rational_field(row.at("parent"), "parent")};
      table.table[cls] = rational_list(row.at("children"), "children");
    }
    return Splitter(std::move(table));
  }
  throw Error(ErrorKind::invalid_config, "unknown splitter kind '" + kind + "'");
}

json splitter_json(const Splitter& s) {
  return std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, EqualSplit>) {
          return {{"kind", "equal_split"}};
        } else if constexpr (std::is_same_v<K, DoubleHalf>) {
          return {{"kind", "double_half"}};
        } else if constexpr (std::is_same_v<K, RandomSplit>) {
          return {{"kind", "random"}, {"seed", k.seed}, {"magnitude", k.magnitude}, {"denominator", k.denominator}};
        } else if constexpr (std::is_same_v<K, TableSplit>) {
          json rows = json::array();
          for (const auto& [cls, kids] : k.table) {
            rows.push_back({{"value", to_string(cls.value)},
                            {"parent", to_string(cls.parent)},
                            {"children", rational_list_json(kids)}});
          }
          return {{"kind", "table"}, {"table", rows}};
        } else {
          throw Error(ErrorKind::representation_unsupported, "custom splitters cannot be written to a file");
        }
      },
      s.kind());
}

}  // namespace

ModelDefinition parse_model_definition(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("model file: ") + e.what());
  }
  try {
    ModelDefinition def;
    def.d = j.at("d").get<int>();
    def.root.u0 = rational_field(j.at("root").at("u0"), "root.u0");
    def.root.children = rational_list(j.at("root").at("children"), "root.children");
    def.splitter = j.contains("splitter") ? parse_splitter(j.at("splitter")) : Splitter::equal_split();
    def.K = j.value("K", 0);
    if (def.K < 0) throw Error(ErrorKind::invalid_config, "K must be non-negative");
    validate(TreeConfig(def.d), def.root);
    return def;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("model file: ") + e.what());
  }
}

ModelDefinition load_model_definition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_config, "cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model_definition(buf.str());
}

std::string to_json(const ModelDefinition& def) {
  json j;
  j["d"] = def.d;
  j["root"] = {{"u0", to_string(def.root.u0)}, {"children", rational_list_json(def.root.children)}};
  j["splitter"] = splitter_json(def.splitter);
  j["K"] = def.K;
  return j.dump(2);
}

HarmonicModel build_model(const ModelDefinition& def, Representation repr) {
  return build_model(TreeConfig(def.d), def.root, def.splitter, def.K, repr);
}

}  // namespace harmtree
