// Copyright 2026 The lanectx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lanectx/pipeline.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace lanectx::pipeline
{
namespace
{
using nlohmann::json;

[[noreturn]] void fail(const std::string & where, const std::string & what)
{
  throw ScenarioError("scenario " + where + ": " + what);
}

void check_keys(
  const json & j, const std::string & where, const std::set<std::string> & allowed,
  const std::set<std::string> & required)
{
  if (!j.is_object()) {
    fail(where, "expected an object");
  }
  for (const auto & item : j.items()) {
    if (allowed.count(item.key()) == 0) {
      fail(where, "unknown key '" + item.key() + "'");
    }
  }
  for (const auto & key : required) {
    if (!j.contains(key)) {
      fail(where, "missing key '" + key + "'");
    }
  }
}

double number(const json & j, const std::string & where)
{
  if (!j.is_number()) {
    fail(where, "expected a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    fail(where, "expected a finite number");
  }
  return v;
}

double number_or(const json & parent, const char * key, double fallback, const std::string & where)
{
  const auto it = parent.find(key);
  return it == parent.end() ? fallback : number(*it, where + "." + key);
}

std::string text(const json & j, const std::string & where)
{
  if (!j.is_string()) {
    fail(where, "expected a string");
  }
  return j.get<std::string>();
}

geom::Point2 point(const json & j, const std::string & where)
{
  if (!j.is_array() || j.size() != 2) {
    fail(where, "expected [x, y]");
  }
  return {number(j[0], where), number(j[1], where)};
}

map::LanePosition position(const json & j, const std::string & where, const map::RoadMap & m)
{
  map::LanePosition p{map::LaneId(text(j["lane"], where + ".lane")),
                      number(j["station"], where + ".station")};
  if (!m.contains(p.lane)) {
    fail(where + ".lane", "lane '" + p.lane.str() + "' is not defined in the map");
  }
  if (p.station < 0.0 || p.station > m.lane(p.lane).length()) {
    fail(where + ".station", "station lies outside lane '" + p.lane.str() + "'");
  }
  return p;
}

perception::ObjectState parse_object(const json & j, std::size_t i)
{
  const std::string where = "objects[" + std::to_string(i) + "]";
  const std::set<std::string> keys{"id", "center", "heading_rad", "length", "width", "speed"};
  check_keys(j, where, keys, keys);
  perception::ObjectState o;
  o.id = text(j["id"], where + ".id");
  o.center = point(j["center"], where + ".center");
  o.heading = number(j["heading_rad"], where + ".heading_rad");
  o.length = number(j["length"], where + ".length");
  o.width = number(j["width"], where + ".width");
  o.speed = number(j["speed"], where + ".speed");
  try {
    perception::validate(o);
  } catch (const std::invalid_argument & e) {
    fail(where, e.what());
  }
  return o;
}

}  // namespace

StageError::StageError(std::string stage, const std::string & message)
: std::runtime_error(stage + ": " + message), stage_(std::move(stage))
{
}

Scenario load_scenario(std::string_view document, const std::filesystem::path & base_dir)
{
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error & e) {
    throw ScenarioError(std::string("scenario document is not valid JSON: ") + e.what());
  }
  check_keys(doc, "document", {"map", "ego", "objects", "sensor", "params"}, {"map", "ego"});

  std::filesystem::path map_path = text(doc["map"], "map");
  if (map_path.is_relative()) {
    map_path = base_dir / map_path;
  }
  map::RoadMap road_map = map::load_map_file(map_path);

  const json & ego = doc["ego"];
  check_keys(ego, "ego", {"lane", "station", "speed", "goal"}, {"lane", "station", "goal"});
  check_keys(ego["goal"], "ego.goal", {"lane", "station"}, {"lane", "station"});
  const map::LanePosition start = position(ego, "ego", road_map);
  const map::LanePosition goal = position(ego["goal"], "ego.goal", road_map);
  const double ego_speed = number_or(ego, "speed", 0.0, "ego");
  if (ego_speed < 0.0) {
    fail("ego.speed", "must be >= 0");
  }

  std::vector<perception::ObjectState> objects;
  if (const auto it = doc.find("objects"); it != doc.end()) {
    if (!it->is_array()) {
      fail("objects", "expected an array");
    }
    std::set<std::string> ids;
    for (std::size_t i = 0; i < it->size(); ++i) {
      objects.push_back(parse_object((*it)[i], i));
      if (!ids.insert(objects.back().id).second) {
        fail("objects[" + std::to_string(i) + "]", "duplicate id '" + objects.back().id + "'");
      }
    }
  }

  perception::SensorSpec sensor;
  if (const auto it = doc.find("sensor"); it != doc.end()) {
    check_keys(*it, "sensor", {"range", "arc_segments"}, {});
    sensor.range = number_or(*it, "range", sensor.range, "sensor");
    if (const auto a = it->find("arc_segments"); a != it->end()) {
      if (!a->is_number_integer()) {
        fail("sensor.arc_segments", "expected an integer");
      }
      sensor.arc_segments = a->get<int>();
    }
  }
  try {
    perception::validate(sensor);
  } catch (const std::invalid_argument & e) {
    fail("sensor", e.what());
  }

  Params params;
  if (const auto it = doc.find("params"); it != doc.end()) {
    check_keys(
      *it, "params",
      {"d_interest", "cell_step", "a_brake", "min_block_gap", "eps_occ", "tau_free", "tau_overlay"},
      {});
    params.grid.d_interest = number_or(*it, "d_interest", params.grid.d_interest, "params");
    params.grid.cell_step = number_or(*it, "cell_step", params.grid.cell_step, "params");
    params.safety.a_brake = number_or(*it, "a_brake", params.safety.a_brake, "params");
    params.safety.min_block_gap =
      number_or(*it, "min_block_gap", params.safety.min_block_gap, "params");
    params.thresholds.eps_occ = number_or(*it, "eps_occ", params.thresholds.eps_occ, "params");
    params.thresholds.tau_free = number_or(*it, "tau_free", params.thresholds.tau_free, "params");
    params.thresholds.tau_overlay =
      number_or(*it, "tau_overlay", params.thresholds.tau_overlay, "params");
  }
  if (!(params.grid.d_interest > 0.0)) {
    fail("params.d_interest", "must be positive");
  }
  if (!(params.grid.cell_step > 0.0)) {
    fail("params.cell_step", "must be positive");
  }
  try {
    characterize::validate(params.safety);
    characterize::validate(params.thresholds);
  } catch (const std::invalid_argument & e) {
    fail("params", e.what());
  }

  return Scenario{
    std::move(map_path), std::move(road_map), start,  ego_speed,
    goal,                std::move(objects),  sensor, params};
}

Scenario load_scenario_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ScenarioError("cannot open scenario file '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_scenario(ss.str(), path.parent_path());
}

}  // namespace lanectx::pipeline
