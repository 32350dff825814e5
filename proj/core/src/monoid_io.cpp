#include "piword/monoid_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace piword {

using nlohmann::ordered_json;

std::string monoid_to_json(const FiniteMonoid& m) {
  ordered_json j;
  j["name"] = m.name;
  j["elements"] = m.elements;
  j["identity"] = m.elements[m.identity];
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.size(); ++i) {
    ordered_json row = ordered_json::array();
    for (int k = 0; k < m.size(); ++k) row.push_back(m.elements[m.mul(i, k)]);
    rows.push_back(row);
  }
  j["table"] = rows;
  return j.dump(2);
}

FiniteMonoid monoid_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid monoid JSON: ") + e.what());
  }
  FiniteMonoid m;
  try {
    m.name = j.value("name", "");
    m.elements = j.at("elements").get<std::vector<std::string>>();
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(m.elements.size()); ++i) index[m.elements[i]] = i;
    std::string id = j.at("identity").get<std::string>();
    if (!index.count(id)) throw ParseError("identity '" + id + "' is not an element");
    m.identity = index[id];
    auto rows = j.at("table");
    if (rows.size() != m.elements.size()) throw ParseError("table row count mismatch");
    for (const auto& row : rows) {
      if (row.size() != m.elements.size()) throw ParseError("table column count mismatch");
      for (const auto& cell : row) {
        std::string v = cell.get<std::string>();
        if (!index.count(v)) throw ParseError("table entry '" + v + "' is not an element");
        m.table.push_back(index[v]);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid monoid JSON: ") + e.what());
  }
  validate(m);
  return m;
}

FiniteMonoid load_monoid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open monoid file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return monoid_from_json(ss.str());
}

}  // namespace piword
