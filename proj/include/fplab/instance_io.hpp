#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fplab/common.hpp"
#include "fplab/metric_space.hpp"

namespace fplab::io {

using ordered_json = nlohmann::ordered_json;

/// Instance JSON before metric validation: structure checked, axioms not.
struct RawInstance {
  std::vector<std::string> points;
  std::vector<std::vector<double>> distance;
  std::vector<int> map;  // image indices aligned with points
};

/// Parses {"points": [...], "distance": [[...]], "map": {...}}.
/// Structural problems (bad JSON, duplicate points, map not covering every
/// point exactly once) throw ParseError; metric-axiom violations are left
/// to validate_metric.
inline RawInstance parse_instance_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }

  RawInstance raw;
  if (!j.is_object() || !j.contains("points") || !j.contains("distance") ||
      !j.contains("map"))
    throw ParseError("instance must be an object with points, distance, map");

  const auto& points = j["points"];
  if (!points.is_array() || points.size() < 1)
    throw ParseError("points must be a non-empty array of strings");
  for (const auto& p : points) {
    if (!p.is_string()) throw ParseError("points must be strings");
    raw.points.push_back(p.get<std::string>());
  }
  for (size_t i = 0; i < raw.points.size(); ++i)
    for (size_t k = i + 1; k < raw.points.size(); ++k)
      if (raw.points[i] == raw.points[k])
        throw ParseError("duplicate point name: " + raw.points[i]);

  const auto& dist = j["distance"];
  if (!dist.is_array()) throw ParseError("distance must be a matrix");
  for (const auto& row : dist) {
    if (!row.is_array()) throw ParseError("distance must be a matrix");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) throw ParseError("distances must be numbers");
      r.push_back(v.get<double>());
    }
    raw.distance.push_back(std::move(r));
  }

  const auto& map = j["map"];
  if (!map.is_object()) throw ParseError("map must be an object");
  raw.map.assign(raw.points.size(), -1);
  auto index_of = [&](const std::string& name) {
    for (size_t i = 0; i < raw.points.size(); ++i)
      if (raw.points[i] == name) return static_cast<int>(i);
    return -1;
  };
  for (const auto& [key, value] : map.items()) {
    const int from = index_of(key);
    if (from < 0) throw ParseError("map key is not a point: " + key);
    if (!value.is_string()) throw ParseError("map values must be point names");
    const int to = index_of(value.get<std::string>());
    if (to < 0)
      throw ParseError("map value is not a point: " + value.get<std::string>());
    if (raw.map[from] != -1) throw ParseError("map lists " + key + " twice");
    raw.map[from] = to;
  }
  for (size_t i = 0; i < raw.map.size(); ++i)
    if (raw.map[i] < 0)
      throw ParseError("map does not cover point: " + raw.points[i]);

  return raw;
}

/// Serializes an instance in the canonical field order with distances
/// rounded to the 12-significant-digit output precision.
inline std::string dump_instance(const FiniteMetricSpace& space,
                                 const SelfMap& map) {
  ordered_json j;
  j["points"] = space.labels();
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < space.size(); ++i) {
    ordered_json row = ordered_json::array();
    for (int k = 0; k < space.size(); ++k) row.push_back(round12(space.dist(i, k)));
    rows.push_back(std::move(row));
  }
  j["distance"] = std::move(rows);
  ordered_json m = ordered_json::object();
  for (int i = 0; i < space.size(); ++i)
    m[space.label(i)] = space.label(map(i));
  j["map"] = std::move(m);
  return j.dump(2) + "\n";
}

}  // namespace fplab::io
