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

#ifndef LANECTX__CONTEXT_HPP_
#define LANECTX__CONTEXT_HPP_

#include "lanectx/geom.hpp"
#include "lanectx/map_model.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lanectx::context
{

using map::LaneId;

enum class InteractionType { Keeping, Changing, Merging, Crossing };

std::string_view to_string(InteractionType t);
std::optional<InteractionType> interaction_from_string(std::string_view s);

/// Lane overlaps below this area (m^2) are treated as map noise.
inline constexpr double kMinOverlapArea = 0.5;

struct InteractingLane
{
  LaneId lane_id;
  int order{1};
  InteractionType interaction{InteractionType::Keeping};
  std::optional<LaneId> via;  // set for order 2
  double conflict_station_on_route{0.0};
  double conflict_station_on_lane{0.0};
  double overlap_length{0.0};  // station extent of the conflict zone on this lane
};

struct Cell
{
  LaneId lane_id;
  int index{0};
  double s0{0.0};
  double s1{0.0};
  geom::Polygon polygon;
  double distance_to_ego{0.0};
  int order{1};
  InteractionType interaction{InteractionType::Keeping};
};

/// Station interval of a lane kept in the area of interest.
struct LaneWindow
{
  LaneId lane_id;
  double s0{0.0};
  double s1{0.0};
  int order{1};
  InteractionType interaction{InteractionType::Keeping};
};

struct LaneGrid
{
  std::vector<Cell> cells;  // ordered by (lane_id, index)
  std::vector<LaneWindow> windows;  // ordered by lane_id
  geom::RegionSet aoi1_region;
  geom::RegionSet aoi2_region;

  geom::RegionSet aoi() const { return geom::unite(aoi1_region, aoi2_region); }
  const LaneWindow * window(const LaneId & id) const;
};

struct GridParams
{
  double d_interest{100.0};
  double cell_step{1.0};
};

/// Pairwise interaction of `other` with `route_lane`; nullopt when unrelated.
/// Priority Keeping > Changing > Merging > Crossing.
std::optional<InteractionType> classify_pair(
  const map::RoadMap & map, const LaneId & route_lane, const LaneId & other);

/// Significant overlap pieces of two lane polygons.
geom::RegionSet lane_overlap(const map::RoadMap & map, const LaneId & a, const LaneId & b);

/// First-order entries (route lanes in route order, then merging/crossing lanes by
/// id) followed by second-order entries by id. One entry per lane.
std::vector<InteractingLane> interacting_lanes(const map::RoadMap & map, const map::Route & route);

LaneGrid build_lane_grid(
  const map::RoadMap & map, const map::Route & route, double ego_station,
  std::span<const InteractingLane> interacting, const GridParams & params);

/// Splits [s0, s1] into consecutive cells of `step`; the last keeps the remainder.
std::vector<std::pair<double, double>> split_window(double s0, double s1, double step);

}  // namespace lanectx::context

#endif  // LANECTX__CONTEXT_HPP_
