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

#include "lanectx/context.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <utility>

namespace lanectx::context
{

std::string_view to_string(InteractionType t)
{
  switch (t) {
    case InteractionType::Keeping:
      return "Keeping";
    case InteractionType::Changing:
      return "Changing";
    case InteractionType::Merging:
      return "Merging";
    case InteractionType::Crossing:
      return "Crossing";
  }
  return "?";
}

std::optional<InteractionType> interaction_from_string(std::string_view s)
{
  for (auto t : {InteractionType::Keeping, InteractionType::Changing, InteractionType::Merging,
                 InteractionType::Crossing}) {
    if (to_string(t) == s) {
      return t;
    }
  }
  return std::nullopt;
}

namespace
{

bool reachable(const map::RoadMap & map, const LaneId & from, const LaneId & target)
{
  std::set<LaneId> seen{from};
  std::deque<LaneId> queue{from};
  while (!queue.empty()) {
    const LaneId cur = queue.front();
    queue.pop_front();
    for (const LaneId & s : map.lane(cur).successors) {
      if (s == target) {
        return true;
      }
      if (seen.insert(s).second) {
        queue.push_back(s);
      }
    }
  }
  return false;
}

bool shares_any(const std::vector<LaneId> & a, const std::vector<LaneId> & b)
{
  return std::any_of(a.begin(), a.end(), [&](const LaneId & x) {
    return std::find(b.begin(), b.end(), x) != b.end();
  });
}

bool are_neighbors(const map::Lane & a, const map::Lane & b)
{
  return a.left_neighbor == b.id || a.right_neighbor == b.id;
}

struct Conflict
{
  double station_on_a{0.0};
  double min_on_b{0.0};
  double max_on_b{0.0};
};

// Entry of the conflict zone of `b` with `a`, in each lane's stations.
Conflict conflict_between(const map::RoadMap & map, const LaneId & a, const LaneId & b)
{
  const geom::RegionSet overlap = lane_overlap(map, a, b);
  const map::Lane & la = map.lane(a);
  const map::Lane & lb = map.lane(b);
  if (overlap.empty()) {
    // merging by shared successor only: the lanes meet at their ends
    return {la.length(), lb.length(), lb.length()};
  }
  Conflict c{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};
  for (const auto & piece : overlap.polygons()) {
    for (const auto & v : piece.ring()) {
      c.station_on_a = std::min(c.station_on_a, geom::station_offset(la.centerline, v).station);
      const double sb = geom::station_offset(lb.centerline, v).station;
      c.min_on_b = std::min(c.min_on_b, sb);
      c.max_on_b = std::max(c.max_on_b, sb);
    }
  }
  return c;
}

// Prefer conflicts ahead of the route start (nearest first), then the latest behind it.
bool nearer_ahead(double a, double b)
{
  if ((a >= 0.0) != (b >= 0.0)) {
    return a >= 0.0;
  }
  return a >= 0.0 ? a < b : a > b;
}

bool is_conflict_type(std::optional<InteractionType> t)
{
  return t == InteractionType::Merging || t == InteractionType::Crossing;
}

}  // namespace

geom::RegionSet lane_overlap(const map::RoadMap & map, const LaneId & a, const LaneId & b)
{
  const geom::RegionSet raw =
    geom::intersect(geom::RegionSet(map.polygon(a)), geom::RegionSet(map.polygon(b)));
  std::vector<geom::Polygon> kept;
  for (const auto & p : raw.polygons()) {
    if (p.area() >= kMinOverlapArea) {
      kept.push_back(p);
    }
  }
  return geom::RegionSet(std::move(kept));
}

std::optional<InteractionType> classify_pair(
  const map::RoadMap & map, const LaneId & route_lane, const LaneId & other)
{
  const map::Lane & r = map.lane(route_lane);
  const map::Lane & o = map.lane(other);
  if (route_lane == other || reachable(map, route_lane, other)) {
    return InteractionType::Keeping;
  }
  if (are_neighbors(r, o)) {
    return InteractionType::Changing;
  }
  if (shares_any(r.successors, o.successors)) {
    return InteractionType::Merging;
  }
  const geom::RegionSet overlap = lane_overlap(map, route_lane, other);
  if (overlap.empty()) {
    return std::nullopt;
  }
  if (
    geom::contains_point(overlap, r.centerline.vertices().back()) &&
    geom::contains_point(overlap, o.centerline.vertices().back())) {
    return InteractionType::Merging;
  }
  const bool related = reachable(map, other, route_lane) ||
                       shares_any(map.predecessors(route_lane), map.predecessors(other)) ||
                       are_neighbors(o, r);
  if (related) {
    return std::nullopt;
  }
  return InteractionType::Crossing;
}

std::vector<InteractingLane> interacting_lanes(const map::RoadMap & map, const map::Route & route)
{
  std::vector<InteractingLane> out;
  std::set<LaneId> first_order;
  std::vector<std::size_t> route_index;  // route position of each Keeping entry

  for (std::size_t k = 0; k < route.lane_sequence.size(); ++k) {
    const LaneId & id = route.lane_sequence[k];
    if (!first_order.insert(id).second) {
      continue;
    }
    out.push_back({id, 1, InteractionType::Keeping, std::nullopt, 0.0, 0.0, 0.0});
    route_index.push_back(k);
  }
  const std::size_t n_route = out.size();

  for (const map::Lane & lane : map.lanes()) {
    if (first_order.count(lane.id) != 0) {
      continue;
    }
    std::optional<InteractingLane> best;
    for (std::size_t e = 0; e < n_route; ++e) {
      const LaneId & rl = out[e].lane_id;
      const auto type = classify_pair(map, rl, lane.id);
      if (!is_conflict_type(type)) {
        continue;
      }
      const Conflict c = conflict_between(map, rl, lane.id);
      const double csr = map::route_station(route, map, route_index[e], c.station_on_a);
      InteractingLane cand{lane.id, 1, *type, std::nullopt, csr, c.min_on_b, c.max_on_b - c.min_on_b};
      if (!best || nearer_ahead(csr, best->conflict_station_on_route)) {
        best = std::move(cand);
      }
    }
    if (best) {
      out.push_back(std::move(*best));
    }
  }
  for (const auto & e : out) {
    first_order.insert(e.lane_id);
  }
  const std::size_t n_first = out.size();

  for (const map::Lane & lane : map.lanes()) {
    if (first_order.count(lane.id) != 0) {
      continue;
    }
    std::optional<InteractingLane> best;
    for (std::size_t e = 0; e < n_first; ++e) {
      const InteractingLane & via = out[e];
      const auto type = classify_pair(map, via.lane_id, lane.id);
      if (!type || *type == InteractionType::Keeping) {
        continue;
      }
      InteractingLane cand{lane.id, 2, *type, via.lane_id, 0.0, 0.0, 0.0};
      if (is_conflict_type(type)) {
        const Conflict c = conflict_between(map, via.lane_id, lane.id);
        // graph distance: along the route to the via lane's conflict, then along the via lane
        cand.conflict_station_on_route =
          e < n_route ? map::route_station(route, map, route_index[e], c.station_on_a)
                      : via.conflict_station_on_route +
                          std::abs(via.conflict_station_on_lane - c.station_on_a);
        cand.conflict_station_on_lane = c.min_on_b;
        cand.overlap_length = c.max_on_b - c.min_on_b;
      }
      const bool better =
        !best || cand.interaction < best->interaction ||
        (cand.interaction == best->interaction &&
         nearer_ahead(cand.conflict_station_on_route, best->conflict_station_on_route));
      if (better) {
        best = std::move(cand);
      }
    }
    if (best) {
      out.push_back(std::move(*best));
    }
  }
  return out;
}

}  // namespace lanectx::context
