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

#include <chrono>
#include <cmath>
#include <exception>
#include <utility>

namespace lanectx::pipeline
{
namespace
{

class StageClock
{
public:
  explicit StageClock(std::vector<StageTiming> & out) : out_(out) {}

  template <typename F>
  auto operator()(std::string_view stage, F && f)
  {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(f())>) {
        f();
        record(stage, t0);
      } else {
        auto r = f();
        record(stage, t0);
        return r;
      }
    } catch (const StageError &) {
      throw;
    } catch (const std::exception & e) {
      throw StageError(std::string(stage), e.what());
    }
  }

private:
  void record(std::string_view stage, std::chrono::steady_clock::time_point t0)
  {
    const std::chrono::duration<double, std::micro> dt = std::chrono::steady_clock::now() - t0;
    out_.push_back({stage, dt.count()});
  }

  std::vector<StageTiming> & out_;
};

}  // namespace

std::array<std::size_t, 6> count_labels(const std::vector<characterize::CellReport> & cells)
{
  std::array<std::size_t, 6> counts{};
  for (const auto & c : cells) {
    ++counts[static_cast<std::size_t>(c.label)];
  }
  return counts;
}

RunResult run(const Scenario & scenario, const RunOptions & options)
{
  const map::RoadMap & m = scenario.map;
  std::vector<StageTiming> timings;
  StageClock stage(timings);

  perception::EgoState ego;
  ego.route = stage("route", [&] { return map::route(m, scenario.ego_start, scenario.goal); });
  {
    const map::Lane & lane = m.lane(scenario.ego_start.lane);
    const double s = scenario.ego_start.station;
    ego.position = lane.centerline.point_at(s);
    const geom::Point2 dir = lane.centerline.direction_at(s);
    ego.heading = std::atan2(dir.y, dir.x);
    ego.speed = scenario.ego_speed;
    ego.route_station = map::route_station(ego.route, m, 0, s);
  }

  auto interacting =
    stage("interacting_lanes", [&] { return context::interacting_lanes(m, ego.route); });
  auto grid = stage("build_lane_grid", [&] {
    return context::build_lane_grid(m, ego.route, ego.route_station, interacting, scenario.params.grid);
  });
  auto world = stage("decompose", [&] {
    return perception::decompose(ego, scenario.sensor, scenario.objects);
  });
  auto starred = stage("restrict_to_aoi", [&] {
    return characterize::restrict_to_aoi(world, grid.aoi());
  });
  const auto detected = perception::detected_objects(scenario.objects, world.fov);

  const geom::RegionSet aoi = grid.aoi();
  auto safety = stage("safety_region", [&] {
    std::vector<geom::Polygon> parts;
    if (!options.disable_overlays) {
      for (const auto & o : detected) {
        const geom::RegionSet s = characterize::safety_region(o, grid, m, scenario.params.safety);
        parts.insert(parts.end(), s.polygons().begin(), s.polygons().end());
      }
    }
    return geom::intersect(geom::unite_all(parts), aoi);
  });
  std::vector<characterize::Blockage> blocks;
  auto protection = stage("protected_region", [&] {
    if (options.disable_overlays) {
      return geom::RegionSet{};
    }
    blocks = characterize::blockages(detected, interacting, grid, m, scenario.params.safety);
    return geom::intersect(
      characterize::protected_region(detected, interacting, grid, m, scenario.params.safety), aoi);
  });
  auto cells = stage("classify_cells", [&] {
    return characterize::classify_cells(
      grid, starred, safety, protection, detected, {scenario.params.thresholds, options.threads});
  });

  RunResult r{
    Report{std::move(cells), {}, std::move(timings)},
    std::move(ego),
    std::move(interacting),
    std::move(grid),
    std::move(world),
    std::move(starred),
    detected,
    std::move(blocks),
    std::move(safety),
    std::move(protection)};
  r.report.counts = count_labels(r.report.cells);
  return r;
}

}  // namespace lanectx::pipeline
