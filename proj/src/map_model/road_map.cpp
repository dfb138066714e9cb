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

#include <algorithm>
#include <utility>

namespace lanectx::map
{

MapValidationError::MapValidationError(LaneId lane, const std::string & rule)
: MapError("lane '" + lane.str() + "': " + rule), lane_(std::move(lane))
{
}

UnknownLaneError::UnknownLaneError(const LaneId & id) : MapError("unknown lane '" + id.str() + "'")
{
}

geom::Polygon lane_polygon(const Lane & lane)
{
  return geom::buffer_centerline(lane.centerline, lane.width);
}

namespace
{

void check_neighbor(
  const RoadMap & map, const Lane & lane, const std::optional<LaneId> & neighbor, bool left)
{
  if (!neighbor) {
    return;
  }
  const char * side = left ? "left" : "right";
  if (*neighbor == lane.id) {
    throw MapValidationError(lane.id, std::string(side) + " neighbor refers to itself");
  }
  if (!map.contains(*neighbor)) {
    throw MapValidationError(
      lane.id, std::string(side) + " neighbor '" + neighbor->str() + "' is not defined");
  }
  const Lane & other = map.lane(*neighbor);
  const auto & back = left ? other.right_neighbor : other.left_neighbor;
  if (!back || *back != lane.id) {
    throw MapValidationError(
      lane.id, std::string("asymmetric neighbor: ") + side + " neighbor '" + neighbor->str() +
                 "' does not list it as its " + (left ? "right" : "left") + " neighbor");
  }
}

}  // namespace

RoadMap::RoadMap(std::vector<Lane> lanes) : lanes_(std::move(lanes))
{
  std::sort(lanes_.begin(), lanes_.end(), [](const Lane & a, const Lane & b) {
    return a.id < b.id;
  });
  for (std::size_t i = 0; i < lanes_.size(); ++i) {
    const Lane & l = lanes_[i];
    if (l.id.empty()) {
      throw MapValidationError(l.id, "empty lane id");
    }
    if (!index_.emplace(l.id, i).second) {
      throw MapValidationError(l.id, "duplicate lane id");
    }
  }

  predecessors_.resize(lanes_.size());
  for (const Lane & l : lanes_) {
    if (!(l.width > 0.0) || !std::isfinite(l.width)) {
      throw MapValidationError(l.id, "width must be positive, got " + std::to_string(l.width));
    }
    if (l.length() < 1.0) {
      throw MapValidationError(l.id, "centerline shorter than 1 m");
    }
    for (const LaneId & s : l.successors) {
      if (!contains(s)) {
        throw MapValidationError(l.id, "successor '" + s.str() + "' is not defined");
      }
      const Lane & succ = lane(s);
      const double gap = geom::distance(l.centerline.vertices().back(), succ.centerline.vertices().front());
      if (gap > kSuccessorGapTolerance) {
        throw MapValidationError(
          l.id, "disconnected successor geometry: '" + s.str() + "' starts " + std::to_string(gap) +
                  " m from the lane end");
      }
      auto & preds = predecessors_[index_of(s)];
      if (std::find(preds.begin(), preds.end(), l.id) == preds.end()) {
        preds.push_back(l.id);
      }
    }
    check_neighbor(*this, l, l.left_neighbor, true);
    check_neighbor(*this, l, l.right_neighbor, false);
  }
  for (auto & preds : predecessors_) {
    std::sort(preds.begin(), preds.end());
  }

  polygons_.reserve(lanes_.size());
  for (const Lane & l : lanes_) {
    try {
      polygons_.push_back(lane_polygon(l));
    } catch (const geom::GeometryError & e) {
      throw MapValidationError(l.id, std::string("cannot build lane polygon: ") + e.what());
    }
    if (!geom::is_simple(polygons_.back())) {
      throw MapValidationError(l.id, "lane polygon self-intersects");
    }
  }
}

std::size_t RoadMap::index_of(const LaneId & id) const
{
  const auto it = index_.find(id);
  if (it == index_.end()) {
    throw UnknownLaneError(id);
  }
  return it->second;
}

bool RoadMap::contains(const LaneId & id) const { return index_.count(id) != 0; }

const Lane & RoadMap::lane(const LaneId & id) const { return lanes_[index_of(id)]; }

const geom::Polygon & RoadMap::polygon(const LaneId & id) const { return polygons_[index_of(id)]; }

const std::vector<LaneId> & RoadMap::predecessors(const LaneId & id) const
{
  return predecessors_[index_of(id)];
}

}  // namespace lanectx::map
