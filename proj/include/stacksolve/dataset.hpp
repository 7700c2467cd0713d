#pragma once
// Line-delimited JSON dataset of benchmark items.
//
// {"id": ..., "family": 0, "condition": "initial", "seed": 42, "rng": "...",
//  "objects": [{"name": "plate", "ood": false}, ...],
//  "init": [["on-table", "plate"], ["on", "mug", "plate"], ["clear", "mug"], ...],
//  "goal": [...], "nl_text": "Initially:\n..."}

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stacksolve/benchgen.hpp"
#include "stacksolve/core.hpp"

namespace stacksolve {

class IoError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  SchemaError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace dataset {

using Json = nlohmann::ordered_json;

inline Json fact_to_json(const Fact& f) {
  switch (f.kind) {
    case Fact::Kind::On: return Json::array({"on", f.a, f.b});
    case Fact::Kind::OnTable: return Json::array({"on-table", f.a});
    case Fact::Kind::Clear: return Json::array({"clear", f.a});
  }
  return {};
}

inline Fact fact_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("fact must be a non-empty array");
  const auto pred = j.at(0).get<std::string>();
  if (pred == "on" && j.size() == 3) return Fact::on(j[1].get<std::string>(), j[2].get<std::string>());
  if (pred == "on-table" && j.size() == 2) return Fact::on_table(j[1].get<std::string>());
  if (pred == "clear" && j.size() == 2) return Fact::clear(j[1].get<std::string>());
  throw std::invalid_argument("bad fact triple " + j.dump());
}

inline Json facts_to_json(const std::vector<Fact>& facts) {
  Json out = Json::array();
  for (const auto& f : facts) out.push_back(fact_to_json(f));
  return out;
}

inline Json item_to_json(const BenchmarkItem& item) {
  Json j;
  j["id"] = item.id;
  j["family"] = item.family;
  j["condition"] = to_string(item.condition);
  j["seed"] = item.seed;
  j["rng"] = std::string(kRngName);
  Json objects = Json::array();
  for (const auto& o : item.problem.objects) objects.push_back(Json{{"name", o.name}, {"ood", o.ood}});
  j["objects"] = std::move(objects);
  j["init"] = facts_to_json(item.problem.init.ordered_facts(item.problem.object_names()));
  j["goal"] = facts_to_json(item.problem.goal);
  j["nl_text"] = item.nl_text;
  return j;
}

inline BenchmarkItem item_from_json(const Json& j) {
  BenchmarkItem item;
  item.id = j.at("id").get<std::string>();
  item.family = j.at("family").get<std::size_t>();
  item.condition = parse_condition(j.at("condition").get<std::string>());
  item.seed = j.at("seed").get<std::uint64_t>();
  item.nl_text = j.at("nl_text").get<std::string>();
  item.problem.id = item.id;
  std::vector<std::string> names;
  for (const auto& o : j.at("objects")) {
    item.problem.objects.push_back({o.at("name").get<std::string>(), o.at("ood").get<bool>()});
    names.push_back(item.problem.objects.back().name);
  }
  FactSet init;
  for (const auto& f : j.at("init")) init.insert(fact_from_json(f));
  item.problem.init = canonicalize(init, names);
  for (const auto& f : j.at("goal")) item.problem.goal.push_back(fact_from_json(f));
  check_problem(item.problem);
  return item;
}

inline void write_dataset(std::ostream& out, const std::vector<BenchmarkItem>& items) {
  for (const auto& item : items) out << item_to_json(item).dump() << "\n";
}

inline void write_dataset(const std::vector<BenchmarkItem>& items, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_dataset(out, items);
  if (!out) throw IoError("error writing " + path);
}

/// Blank lines are skipped; any other malformed line raises SchemaError with
/// its 1-based line number.
inline std::vector<BenchmarkItem> read_dataset(std::istream& in) {
  std::vector<BenchmarkItem> items;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      items.push_back(item_from_json(Json::parse(line)));
    } catch (const std::exception& e) {
      throw SchemaError(lineno, e.what());
    }
  }
  return items;
}

inline std::vector<BenchmarkItem> read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_dataset(in);
}

}  // namespace dataset
}  // namespace stacksolve
