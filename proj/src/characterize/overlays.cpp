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

#include "lanectx/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace lanectx::characterize
{
namespace
{
constexpr double kMinSlice = 1e-6;

bool near_centerline(const perception::ObjectState & obj, const map::Lane & lane)
{
  const auto so = geom::station_offset(lane.centerline, obj.center);
  const double d = geom::distance(lane.centerline.point_at(so.station), obj.center);
  return d <= 0.5 * lane.width + kAssignMargin;
}

}  // namespace

void validate(const SafetyParams & params)
{
  if (!(params.a_brake < 0.0) || !std::isfinite(params.a_brake)) {
    throw std::invalid_argument("a_brake must be negative");
  }
  if (!(params.min_block_gap >= 0.0) || !std::isfinite(params.min_block_gap)) {
    throw std::invalid_argument("min_block_gap must be >= 0");
  }
}

StarredSets restrict_to_aoi(const perception::WorldDecomposition & world, const geom::RegionSet & aoi)
{
  StarredSets s;
  s.free = geom::intersect(world.free, aoi);
  s.occupied = geom::intersect(world.occupied, aoi);
  s.hidden = geom::intersect(world.hidden, aoi);
  s.unknown = geom::subtract(aoi, world.fov);
  return s;
}

double safety_distance(double speed, const SafetyParams & params)
{
  validate(params);
  if (!(speed >= 0.0) || !std::isfinite(speed)) {
    throw std::invalid_argument("speed must be finite and >= 0");
  }
  return -(speed * speed) / (2.0 * params.a_brake);
}

std::vector<LaneId> assigned_lanes(
  const perception::ObjectState & obj, const context::LaneGrid & grid, const map::RoadMap & map)
{
  std::vector<LaneId> out;
  for (const auto & w : grid.windows) {
    if (near_centerline(obj, map.lane(w.lane_id))) {
      out.push_back(w.lane_id);
    }
  }
  return out;
}

geom::RegionSet safety_region(
  const perception::ObjectState & obj, const context::LaneGrid & grid, const map::RoadMap & map,
  const SafetyParams & params)
{
  const double d_safe = safety_distance(obj.speed, params);
  if (!(d_safe > 0.0)) {
    return {};
  }
  const geom::Polygon fp = perception::footprint(obj);
  std::vector<geom::Polygon> slices;
  for (const LaneId & id : assigned_lanes(obj, grid, map)) {
    const map::Lane & lane = map.lane(id);
    double front = -std::numeric_limits<double>::infinity();
    for (const auto & v : fp.ring()) {
      front = std::max(front, geom::station_offset(lane.centerline, v).station);
    }
    const double s0 = std::clamp(front, 0.0, lane.length());
    const double s1 = std::clamp(front + d_safe, 0.0, lane.length());
    if (s1 - s0 > kMinSlice) {
      slices.push_back(geom::buffer_station_range(lane.centerline, s0, s1, lane.width));
    }
  }
  return geom::unite_all(slices);
}

std::vector<Blockage> blockages(
  std::span<const perception::ObjectState> objects,
  std::span<const context::InteractingLane> interacting, const context::LaneGrid & grid,
  const map::RoadMap & map, const SafetyParams & params)
{
  validate(params);
  std::vector<Blockage> out;
  for (const auto & obj : objects) {
    const geom::Polygon fp = perception::footprint(obj);
    for (const auto & w : grid.windows) {
      if (w.order != 1) {
        continue;
      }
      const map::Lane & lane = map.lane(w.lane_id);
      if (!geom::interiors_intersect(fp, map.polygon(w.lane_id))) {
        continue;
      }
      const bool second_order_conflict =
        std::any_of(interacting.begin(), interacting.end(), [&](const context::InteractingLane & k) {
          if (k.order != 2) {
            return false;
          }
          const auto t = context::classify_pair(map, w.lane_id, k.lane_id);
          if (t != context::InteractionType::Merging && t != context::InteractionType::Crossing) {
            return false;
          }
          return near_centerline(obj, map.lane(k.lane_id)) ||
                 geom::interiors_intersect(fp, map.polygon(k.lane_id));
        });
      if (!second_order_conflict) {
        continue;
      }
      const geom::RegionSet on_lane =
        geom::intersect(geom::RegionSet(fp), geom::RegionSet(map.polygon(w.lane_id)));
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      double min_station = std::numeric_limits<double>::infinity();
      for (const auto & piece : on_lane.polygons()) {
        for (const auto & v : piece.ring()) {
          const auto so = geom::station_offset(lane.centerline, v);
          lo = std::min(lo, so.offset);
          hi = std::max(hi, so.offset);
          min_station = std::min(min_station, so.station);
        }
      }
      if (on_lane.empty() || hi - lo < lane.width - params.min_block_gap) {
        continue;
      }
      out.push_back({obj.id, w.lane_id, min_station, hi - lo});
    }
  }
  return out;
}

geom::RegionSet protected_region(
  std::span<const perception::ObjectState> objects,
  std::span<const context::InteractingLane> interacting, const context::LaneGrid & grid,
  const map::RoadMap & map, const SafetyParams & params)
{
  std::vector<geom::Polygon> slices;
  for (const Blockage & b : blockages(objects, interacting, grid, map, params)) {
    const context::LaneWindow * w = grid.window(b.lane);
    const double s1 = std::min(b.min_station, w->s1);
    if (s1 - w->s0 > kMinSlice) {
      const map::Lane & lane = map.lane(b.lane);
      slices.push_back(geom::buffer_station_range(lane.centerline, w->s0, s1, lane.width));
    }
  }
  return geom::unite_all(slices);
}

}  // namespace lanectx::characterize
