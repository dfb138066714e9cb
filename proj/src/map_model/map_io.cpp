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

#include "lanectx/map_model.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace lanectx::map
{
namespace
{
using nlohmann::json;

const std::set<std::string> kLaneKeys = {"id",         "width",         "centerline",
                                         "successors", "left_neighbor", "right_neighbor"};

[[noreturn]] void fail(const std::string & where, const std::string & what)
{
  throw MapParseError(where + ": " + what);
}

double number(const json & j, const std::string & where)
{
  if (!j.is_number()) {
    fail(where, "expected a number");
  }
  return j.get<double>();
}

std::string text(const json & j, const std::string & where)
{
  if (!j.is_string()) {
    fail(where, "expected a string");
  }
  return j.get<std::string>();
}

std::optional<LaneId> optional_id(const json & lane, const char * key, const std::string & where)
{
  const auto it = lane.find(key);
  if (it == lane.end() || it->is_null()) {
    return std::nullopt;
  }
  return LaneId(text(*it, where + "." + key));
}

Lane parse_lane(const json & j, std::size_t index)
{
  std::string where = "lanes[" + std::to_string(index) + "]";
  if (!j.is_object()) {
    fail(where, "expected an object");
  }
  for (const auto & item : j.items()) {
    if (kLaneKeys.count(item.key()) == 0) {
      fail(where, "unknown key '" + item.key() + "'");
    }
  }
  for (const char * key : {"id", "width", "centerline"}) {
    if (!j.contains(key)) {
      fail(where, std::string("missing key '") + key + "'");
    }
  }
  LaneId id(text(j["id"], where + ".id"));
  where += " ('" + id.str() + "')";
  const double width = number(j["width"], where + ".width");

  const json & cl = j["centerline"];
  if (!cl.is_array()) {
    fail(where + ".centerline", "expected an array of [x, y] pairs");
  }
  std::vector<geom::Point2> pts;
  for (std::size_t i = 0; i < cl.size(); ++i) {
    const json & p = cl[i];
    const std::string pw = where + ".centerline[" + std::to_string(i) + "]";
    if (!p.is_array() || p.size() != 2) {
      fail(pw, "expected [x, y]");
    }
    pts.push_back({number(p[0], pw), number(p[1], pw)});
  }

  std::vector<LaneId> successors;
  if (const auto it = j.find("successors"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) {
      fail(where + ".successors", "expected an array of lane ids");
    }
    for (const auto & s : *it) {
      successors.emplace_back(text(s, where + ".successors"));
    }
  }

  try {
    return Lane{
      id,
      geom::Polyline(std::move(pts)),
      width,
      std::move(successors),
      optional_id(j, "left_neighbor", where),
      optional_id(j, "right_neighbor", where)};
  } catch (const geom::GeometryError & e) {
    throw MapValidationError(id, std::string("invalid centerline: ") + e.what());
  }
}

}  // namespace

RoadMap load_map(std::string_view document)
{
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error & e) {
    throw MapParseError(std::string("map document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    fail("map", "expected a top-level object");
  }
  for (const auto & item : doc.items()) {
    if (item.key() != "lanes") {
      fail("map", "unknown key '" + item.key() + "'");
    }
  }
  if (!doc.contains("lanes") || !doc["lanes"].is_array()) {
    fail("map", "expected a 'lanes' array");
  }
  std::vector<Lane> lanes;
  const json & arr = doc["lanes"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    lanes.push_back(parse_lane(arr[i], i));
  }
  return RoadMap(std::move(lanes));
}

RoadMap load_map_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw MapParseError("cannot open map file '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_map(ss.str());
}

std::string serialize_map(const RoadMap & map)
{
  json lanes = json::array();
  for (const Lane & l : map.lanes()) {
    json cl = json::array();
    for (const auto & p : l.centerline.vertices()) {
      cl.push_back({p.x, p.y});
    }
    json succ = json::array();
    for (const auto & s : l.successors) {
      succ.push_back(s.str());
    }
    json lane;
    lane["id"] = l.id.str();
    lane["width"] = l.width;
    lane["centerline"] = std::move(cl);
    lane["successors"] = std::move(succ);
    lane["left_neighbor"] = l.left_neighbor ? json(l.left_neighbor->str()) : json(nullptr);
    lane["right_neighbor"] = l.right_neighbor ? json(l.right_neighbor->str()) : json(nullptr);
    lanes.push_back(std::move(lane));
  }
  json doc;
  doc["lanes"] = std::move(lanes);
  return doc.dump(2) + "\n";
}

}  // namespace lanectx::map
