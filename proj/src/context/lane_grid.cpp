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
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>

namespace lanectx::context
{
namespace
{
constexpr double kMinCell = 1e-6;
constexpr double kMinWindow = 1e-6;

struct KeptLane
{
  LaneWindow window;
  std::function<double(double)> distance;  // lane station -> distance to ego
};

// Cell boundaries this close to a centerline vertex move onto the vertex.
double snap_to_vertex(const geom::Polyline & line, double s)
{
  for (double v : line.stations()) {
    if (std::abs(v - s) <= kMinCell) {
      return v;
    }
  }
  return s;
}

}  // namespace

const LaneWindow * LaneGrid::window(const LaneId & id) const
{
  const auto it = std::find_if(windows.begin(), windows.end(), [&](const LaneWindow & w) {
    return w.lane_id == id;
  });
  return it == windows.end() ? nullptr : &*it;
}

std::vector<std::pair<double, double>> split_window(double s0, double s1, double step)
{
  if (!(step > 0.0)) {
    throw std::invalid_argument("cell step must be positive");
  }
  std::vector<std::pair<double, double>> out;
  if (!(s1 > s0)) {
    return out;
  }
  double a = s0;
  for (std::size_t k = 1;; ++k) {
    const double b = s0 + static_cast<double>(k) * step;
    if (b >= s1 - 1e-9) {
      out.emplace_back(a, s1);
      break;
    }
    out.emplace_back(a, b);
    a = b;
  }
  if (out.size() > 1 && out.back().second - out.back().first < kMinCell) {
    const double end = out.back().second;
    out.pop_back();
    out.back().second = end;
  }
  return out;
}

LaneGrid build_lane_grid(
  const map::RoadMap & map, const map::Route & route, double ego_station,
  std::span<const InteractingLane> interacting, const GridParams & params)
{
  if (!(params.d_interest > 0.0)) {
    throw std::invalid_argument("d_interest must be positive");
  }
  if (!(params.cell_step > 0.0)) {
    throw std::invalid_argument("cell_step must be positive");
  }
  const double d = params.d_interest;
  std::map<LaneId, KeptLane> kept;

  for (const InteractingLane & il : interacting) {
    if (kept.count(il.lane_id) != 0) {
      continue;
    }
    const map::Lane & lane = map.lane(il.lane_id);
    const double len = lane.length();
    LaneWindow w{il.lane_id, 0.0, 0.0, il.order, il.interaction};
    std::function<double(double)> dist;

    if (il.interaction == InteractionType::Keeping) {
      const auto k_it =
        std::find(route.lane_sequence.begin(), route.lane_sequence.end(), il.lane_id);
      if (k_it == route.lane_sequence.end()) {
        continue;
      }
      const auto k = static_cast<std::size_t>(std::distance(route.lane_sequence.begin(), k_it));
      const auto [b, e] = map::route_lane_span(route, map, k);
      const double offset = map::route_station(route, map, k, 0.0);
      const double lo = std::max(ego_station, offset + b);
      const double hi = std::min(ego_station + d, offset + e);
      w.s0 = lo - offset;
      w.s1 = hi - offset;
      dist = [offset, ego_station](double s) { return std::max(0.0, offset + s - ego_station); };
    } else if (il.interaction == InteractionType::Changing) {
      if (!il.via) {
        continue;
      }
      const auto via_it = kept.find(*il.via);
      if (via_it == kept.end()) {
        continue;
      }
      const map::Lane & via = map.lane(*il.via);
      const LaneWindow & vw = via_it->second.window;
      const double a = geom::station_offset(lane.centerline, via.centerline.point_at(vw.s0)).station;
      const double b = geom::station_offset(lane.centerline, via.centerline.point_at(vw.s1)).station;
      w.s0 = std::clamp(std::min(a, b), 0.0, len);
      w.s1 = std::clamp(std::max(a, b), 0.0, len);
      auto via_dist = via_it->second.distance;
      const geom::Polyline * via_line = &via.centerline;
      const geom::Polyline * own_line = &lane.centerline;
      dist = [via_dist, via_line, own_line](double s) {
        return via_dist(geom::station_offset(*via_line, own_line->point_at(s)).station);
      };
    } else {
      const double dc = il.conflict_station_on_route - ego_station;
      if (dc < 0.0 || dc > d) {
        continue;
      }
      const double cs = il.conflict_station_on_lane;
      w.s0 = std::clamp(cs - (d - dc), 0.0, len);
      w.s1 = std::clamp(cs + il.overlap_length, 0.0, len);
      dist = [dc, cs](double s) { return std::max(0.0, dc + (cs - s)); };
    }
    if (w.s1 - w.s0 < kMinWindow) {
      continue;
    }
    w.s0 = snap_to_vertex(lane.centerline, w.s0);
    w.s1 = snap_to_vertex(lane.centerline, w.s1);
    kept.emplace(il.lane_id, KeptLane{w, std::move(dist)});
  }

  LaneGrid grid;
  std::vector<geom::Polygon> strips1;
  std::vector<geom::Polygon> strips2;
  for (const auto & [id, k] : kept) {
    const map::Lane & lane = map.lane(id);
    const LaneWindow & w = k.window;
    grid.windows.push_back(w);
    auto pieces = split_window(w.s0, w.s1, params.cell_step);
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
      const double b = snap_to_vertex(lane.centerline, pieces[i].second);
      pieces[i].second = b;
      pieces[i + 1].first = b;
    }
    int index = 0;
    for (const auto & [s0, s1] : pieces) {
      grid.cells.push_back(Cell{
        id, index++, s0, s1, geom::buffer_station_range(lane.centerline, s0, s1, lane.width),
        k.distance(0.5 * (s0 + s1)), w.order, w.interaction});
    }
    auto & strips = w.order == 1 ? strips1 : strips2;
    strips.push_back(geom::buffer_station_range(lane.centerline, w.s0, w.s1, lane.width));
  }
  grid.aoi1_region = geom::unite_all(strips1);
  grid.aoi2_region = geom::unite_all(strips2);
  return grid;
}

}  // namespace lanectx::context
