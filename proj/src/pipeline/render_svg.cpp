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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace lanectx::pipeline
{
namespace
{
using characterize::SpaceClass;

constexpr double kFrameMargin = 5.0;
constexpr double kStationRestore = 1e-6;

const char * fill_color(SpaceClass c)
{
  switch (c) {
    case SpaceClass::Free:
      return "#3cb043";
    case SpaceClass::Occupied:
      return "#8b5a2b";
    case SpaceClass::Hidden:
      return "#d62728";
    case SpaceClass::Unknown:
      return "#000000";
    case SpaceClass::Safety:
      return "#ff8c00";
    case SpaceClass::Protected:
      return "#800080";
  }
  return "#808080";
}

std::string num(double v)
{
  char buf[32];
  // avoid "-0.000" so that mirrored coordinates print identically
  const double r = std::round(v * 1000.0) / 1000.0;
  std::snprintf(buf, sizeof(buf), "%.3f", r == 0.0 ? 0.0 : r);
  return buf;
}

// SVG y grows downwards; the world frame is flipped on output.
std::string points(const std::vector<geom::Point2> & ring)
{
  std::string s;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (i != 0) {
      s += ' ';
    }
    s += num(ring[i].x) + "," + num(-ring[i].y);
  }
  return s;
}

struct Frame
{
  double min_x{std::numeric_limits<double>::infinity()};
  double min_y{std::numeric_limits<double>::infinity()};
  double max_x{-std::numeric_limits<double>::infinity()};
  double max_y{-std::numeric_limits<double>::infinity()};

  void add(const geom::Box & b)
  {
    min_x = std::min(min_x, b.min_x);
    min_y = std::min(min_y, b.min_y);
    max_x = std::max(max_x, b.max_x);
    max_y = std::max(max_y, b.max_y);
  }
};

// Printed stations carry 6 decimals; pull them back onto nearby vertices and into the lane.
double restore_station(const geom::Polyline & line, double s)
{
  for (double v : line.stations()) {
    if (std::abs(v - s) <= kStationRestore) {
      return v;
    }
  }
  return std::clamp(s, 0.0, line.length());
}

}  // namespace

std::string render_svg(const std::vector<ReportRow> & rows, const Scenario & scenario)
{
  const map::RoadMap & m = scenario.map;
  const map::Lane & ego_lane = m.lane(scenario.ego_start.lane);
  const geom::Point2 ego = ego_lane.centerline.point_at(scenario.ego_start.station);
  const geom::Polygon fov = perception::field_of_view(ego, scenario.sensor);

  std::vector<std::pair<const ReportRow *, geom::Polygon>> cells;
  cells.reserve(rows.size());
  Frame frame;
  frame.add(fov.bbox());
  for (const auto & r : rows) {
    const map::Lane & lane = m.lane(r.lane_id);
    const double s0 = restore_station(lane.centerline, r.s0);
    const double s1 = restore_station(lane.centerline, r.s1);
    cells.emplace_back(&r, geom::buffer_station_range(lane.centerline, s0, s1, lane.width));
    frame.add(cells.back().second.bbox());
  }

  const double x0 = std::floor(frame.min_x - kFrameMargin);
  const double y0 = std::floor(-frame.max_y - kFrameMargin);
  const double w = std::ceil(frame.max_x + kFrameMargin) - x0;
  const double h = std::ceil(-frame.min_y + kFrameMargin) - y0;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(x0) + " " + num(y0) + " " +
         num(w) + " " + num(h) + "\" width=\"" + num(4.0 * w) + "\" height=\"" + num(4.0 * h) +
         "\">\n";
  svg += "<rect class=\"background\" x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" +
         num(w) + "\" height=\"" + num(h) + "\" fill=\"#ffffff\"/>\n";

  svg += "<g class=\"cells\" stroke=\"#ffffff\" stroke-width=\"0.05\">\n";
  for (const auto & [row, poly] : cells) {
    svg += "<polygon class=\"cell " + std::string(characterize::to_string(row->label)) +
           "\" data-lane=\"" + row->lane_id.str() + "\" data-index=\"" +
           std::to_string(row->index) + "\" fill=\"" + fill_color(row->label) + "\" points=\"" +
           points(poly.ring()) + "\"/>\n";
  }
  svg += "</g>\n";

  svg += "<g class=\"objects\" fill=\"none\" stroke=\"#404040\" stroke-width=\"0.2\">\n";
  for (const auto & o : scenario.objects) {
    svg += "<polygon class=\"object\" data-id=\"" + o.id + "\" points=\"" +
           points(perception::footprint(o).ring()) + "\"/>\n";
  }
  svg += "</g>\n";

  svg += "<polygon class=\"fov\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"0.3\" "
         "stroke-dasharray=\"2,1\" points=\"" +
         points(fov.ring()) + "\"/>\n";
  svg += "<circle class=\"ego\" cx=\"" + num(ego.x) + "\" cy=\"" + num(-ego.y) +
         "\" r=\"1.5\" fill=\"#1f3fff\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace lanectx::pipeline
