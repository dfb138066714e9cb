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

#include <limits>
#include <queue>
#include <set>
#include <utility>

namespace lanectx::map
{
namespace
{

void check_position(const RoadMap & map, const LanePosition & p, const char * which)
{
  const Lane & l = map.lane(p.lane);
  if (!(p.station >= 0.0) || !(p.station <= l.length())) {
    throw MapError(
      std::string(which) + " station " + std::to_string(p.station) + " outside lane '" +
      p.lane.str() + "' of length " + std::to_string(l.length()));
  }
}

struct Label
{
  double cost;
  std::vector<LaneId> path;

  bool operator>(const Label & o) const
  {
    if (cost != o.cost) {
      return cost > o.cost;
    }
    return path > o.path;
  }
};

}  // namespace

Route route(const RoadMap & map, const LanePosition & from, const LanePosition & to)
{
  check_position(map, from, "start");
  check_position(map, to, "goal");

  std::optional<Label> best;
  if (from.lane == to.lane && from.station <= to.station) {
    best = Label{to.station - from.station, {from.lane}};
  }

  // Dijkstra over lane entries; cost = arc length travelled up to the start of the lane.
  std::priority_queue<Label, std::vector<Label>, std::greater<>> open;
  const double first_leg = map.lane(from.lane).length() - from.station;
  for (const LaneId & s : map.lane(from.lane).successors) {
    open.push(Label{first_leg, {from.lane, s}});
  }
  std::set<LaneId> settled;
  while (!open.empty()) {
    Label cur = open.top();
    open.pop();
    const LaneId & here = cur.path.back();
    if (!settled.insert(here).second) {
      continue;
    }
    if (here == to.lane) {
      Label done{cur.cost + to.station, cur.path};
      if (!best || *best > done) {
        best = std::move(done);
      }
      break;
    }
    if (best && cur.cost > best->cost) {
      break;
    }
    const double through = cur.cost + map.lane(here).length();
    for (const LaneId & s : map.lane(here).successors) {
      if (settled.count(s) != 0) {
        continue;
      }
      Label next{through, cur.path};
      next.path.push_back(s);
      open.push(std::move(next));
    }
  }
  if (!best) {
    throw NoRouteError(
      "no route from lane '" + from.lane.str() + "' to lane '" + to.lane.str() + "'");
  }
  return Route{std::move(best->path), from.station, to.station};
}

std::pair<double, double> route_lane_span(const Route & route, const RoadMap & map, std::size_t k)
{
  const std::size_t n = route.lane_sequence.size();
  const double len = map.lane(route.lane_sequence.at(k)).length();
  const double begin = k == 0 ? route.start_station : 0.0;
  const double end = k + 1 == n ? route.end_station : len;
  return {begin, end};
}

double route_station(const Route & route, const RoadMap & map, std::size_t k, double s)
{
  double offset = -route.start_station;
  for (std::size_t i = 0; i < k; ++i) {
    offset += map.lane(route.lane_sequence[i]).length();
  }
  return offset + s;
}

double route_length(const Route & route, const RoadMap & map)
{
  const std::size_t last = route.lane_sequence.size() - 1;
  return route_station(route, map, last, route.end_station);
}

double station_on_route(const Route & route, const RoadMap & map, geom::Point2 pt)
{
  double best_dist = std::numeric_limits<double>::infinity();
  std::size_t best_k = 0;
  double best_s = 0.0;
  for (std::size_t k = 0; k < route.lane_sequence.size(); ++k) {
    const Lane & l = map.lane(route.lane_sequence[k]);
    const auto so = geom::station_offset(l.centerline, pt);
    const double d = geom::distance(l.centerline.point_at(so.station), pt);
    if (d < best_dist) {
      best_dist = d;
      best_k = k;
      best_s = so.station;
    }
  }
  const Lane & l = map.lane(route.lane_sequence.at(best_k));
  if (best_dist > 2.0 * l.width) {
    throw ProjectionError(
      "point (" + std::to_string(pt.x) + ", " + std::to_string(pt.y) + ") is " +
      std::to_string(best_dist) + " m from the route");
  }
  return route_station(route, map, best_k, best_s);
}

}  // namespace lanectx::map
