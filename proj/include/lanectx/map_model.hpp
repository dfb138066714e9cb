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

#ifndef LANECTX__MAP_MODEL_HPP_
#define LANECTX__MAP_MODEL_HPP_

#include "lanectx/geom.hpp"

#include <compare>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lanectx::map
{

class LaneId
{
public:
  LaneId() = default;
  explicit LaneId(std::string value) : value_(std::move(value)) {}

  const std::string & str() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend auto operator<=>(const LaneId &, const LaneId &) = default;
  friend bool operator==(const LaneId &, const LaneId &) = default;

private:
  std::string value_;
};

class MapError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed map document (not JSON, wrong types, unknown keys).
class MapParseError : public MapError
{
public:
  using MapError::MapError;
};

/// A rule of the lane model is violated; carries the offending lane.
class MapValidationError : public MapError
{
public:
  MapValidationError(LaneId lane, const std::string & rule);
  const LaneId & lane() const { return lane_; }

private:
  LaneId lane_;
};

class UnknownLaneError : public MapError
{
public:
  explicit UnknownLaneError(const LaneId & id);
};

class NoRouteError : public MapError
{
public:
  using MapError::MapError;
};

class ProjectionError : public MapError
{
public:
  using MapError::MapError;
};

struct Lane
{
  LaneId id;
  geom::Polyline centerline;
  double width{0.0};
  std::vector<LaneId> successors;
  std::optional<LaneId> left_neighbor;
  std::optional<LaneId> right_neighbor;

  double length() const { return centerline.length(); }
};

/// Successor endpoints must meet the lane end within this distance (m).
inline constexpr double kSuccessorGapTolerance = 0.1;

/// Validated, immutable lane map with cached lane polygons.
class RoadMap
{
public:
  /// Throws MapValidationError naming the first offending lane.
  explicit RoadMap(std::vector<Lane> lanes);

  /// Lanes sorted by id.
  const std::vector<Lane> & lanes() const { return lanes_; }
  bool contains(const LaneId & id) const;
  const Lane & lane(const LaneId & id) const;
  const geom::Polygon & polygon(const LaneId & id) const;
  const std::vector<LaneId> & predecessors(const LaneId & id) const;

private:
  std::size_t index_of(const LaneId & id) const;

  std::vector<Lane> lanes_;
  std::map<LaneId, std::size_t> index_;
  std::vector<geom::Polygon> polygons_;
  std::vector<std::vector<LaneId>> predecessors_;
};

RoadMap load_map(std::string_view document);
RoadMap load_map_file(const std::filesystem::path & path);
std::string serialize_map(const RoadMap & map);

geom::Polygon lane_polygon(const Lane & lane);

struct LanePosition
{
  LaneId lane;
  double station{0.0};
};

struct Route
{
  std::vector<LaneId> lane_sequence;
  double start_station{0.0};
  double end_station{0.0};
};

/// Shortest path over successor edges; ties broken by lexicographic lane sequence.
Route route(const RoadMap & map, const LanePosition & from, const LanePosition & to);

/// Route station of station `s` on the k-th route lane.
double route_station(const Route & route, const RoadMap & map, std::size_t k, double s);
/// Station span [begin, end] of the k-th route lane covered by the route.
std::pair<double, double> route_lane_span(const Route & route, const RoadMap & map, std::size_t k);
double route_length(const Route & route, const RoadMap & map);

/// Route station of the projection of pt onto the nearest route lane.
double station_on_route(const Route & route, const RoadMap & map, geom::Point2 pt);

}  // namespace lanectx::map

template <>
struct std::hash<lanectx::map::LaneId>
{
  std::size_t operator()(const lanectx::map::LaneId & id) const noexcept
  {
    return std::hash<std::string>{}(id.str());
  }
};

#endif  // LANECTX__MAP_MODEL_HPP_
