#pragma once

// Scenario JSON files. Schema is strict: exactly the documented keys, with
// one optional "generator" metadata block written by the generator.

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mucfc/model.hpp"
#include "mucfc/scenario_gen.hpp"

namespace mucfc {

using json = nlohmann::ordered_json;

namespace detail {

inline void require_keys(const json& obj, std::initializer_list<const char*> required,
                         std::initializer_list<const char*> optional, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* k : required) known |= key == k;
    for (const char* k : optional) known |= key == k;
    if (!known)
      throw std::invalid_argument("unknown key \"" + key + "\" in " + where);
  }
  for (const char* k : required)
    if (!obj.contains(k))
      throw std::invalid_argument("missing key \"" + std::string(k) + "\" in " + where);
}

}  // namespace detail

inline json to_json(const Scenario& s) {
  json doc;
  doc["seed"] = s.seed;
  doc["tasks"] = json::array();
  for (const TaskSpec& t : s.tasks) {
    json jt;
    jt["id"] = t.id;
    jt["value"] = t.value;
    jt["workload"] = t.workload;
    jt["max_capacity"] = t.max_capacity;
    jt["threshold"] = t.threshold;
    jt["alpha"] = t.alpha;
    doc["tasks"].push_back(std::move(jt));
  }
  doc["uavs"] = json::array();
  for (const UavSpec& u : s.uavs) {
    json ju;
    ju["id"] = u.id;
    ju["efficiency"] = u.efficiency;
    doc["uavs"].push_back(std::move(ju));
  }
  return doc;
}

inline json generator_metadata(const GenConfig& cfg) {
  json meta;
  meta["n_uavs"] = cfg.n_uavs;
  meta["n_tasks"] = cfg.n_tasks;
  meta["r"] = cfg.r;
  meta["xi_range"] = cfg.xi_range;
  meta["value_range"] = cfg.value_range;
  meta["p_range"] = cfg.p_range;
  meta["efficiency_spread"] = cfg.efficiency_spread;
  meta["threshold_floor_fraction"] = kThresholdFloorFraction;
  meta["seed"] = cfg.seed;
  return meta;
}

inline Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("scenario document must be an object");
  detail::require_keys(doc, {"seed", "tasks", "uavs"}, {"generator"}, "scenario");

  Scenario s;
  s.seed = doc.at("seed").get<std::uint64_t>();
  if (!doc.at("tasks").is_array() || !doc.at("uavs").is_array())
    throw std::invalid_argument("\"tasks\" and \"uavs\" must be arrays");

  for (const json& jt : doc.at("tasks")) {
    detail::require_keys(jt, {"id", "value", "workload", "max_capacity", "threshold", "alpha"},
                         {}, "task entry");
    TaskSpec t;
    t.id = jt.at("id").get<int>();
    t.value = jt.at("value").get<double>();
    t.workload = jt.at("workload").get<double>();
    t.max_capacity = jt.at("max_capacity").get<double>();
    t.threshold = jt.at("threshold").get<double>();
    t.alpha = jt.at("alpha").get<double>();
    s.tasks.push_back(t);
  }
  for (const json& ju : doc.at("uavs")) {
    detail::require_keys(ju, {"id", "efficiency"}, {}, "uav entry");
    UavSpec u;
    u.id = ju.at("id").get<int>();
    u.efficiency = ju.at("efficiency").get<std::vector<double>>();
    s.uavs.push_back(std::move(u));
  }

  validate(s);
  return s;
}

inline void save_scenario(const std::filesystem::path& path, const Scenario& s,
                          const json* generator_meta = nullptr) {
  json doc = to_json(s);
  if (generator_meta != nullptr) doc["generator"] = *generator_meta;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("failed parsing " + path.string() + ": " + e.what());
  }
  return scenario_from_json(doc);
}

}  // namespace mucfc
