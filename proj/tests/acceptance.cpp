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
#include "test_support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

using namespace lanectx;
using characterize::SpaceClass;

namespace
{

const char * kFixtures[] = {"t_intersection", "overtaking_moving", "overtaking_stopped", "straight_empty"};

pipeline::Scenario fixture(const std::string & name)
{
  return pipeline::load_scenario_file(test_support::data_dir() / "scenarios" / (name + ".json"));
}

struct Outcome
{
  bool pass{false};
  std::string detail;
};

std::string fmt(const char * f, double a, double b = 0.0, double c = 0.0)
{
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

Outcome partition_identity()
{
  const auto start = std::chrono::steady_clock::now();
  const auto base = fixture("t_intersection");
  const auto grid_run = pipeline::run(base);
  const auto aoi = grid_run.grid.aoi();
  const geom::Point2 ego = grid_run.ego.position;
  double worst_fov = 0.0;
  double worst_aoi = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto scene = test_support::random_scene(seed);
    std::vector<perception::ObjectState> objects;
    for (auto o : scene.objects) {
      o.center = o.center + ego;
      if (!geom::contains_point(perception::footprint(o), ego)) {
        objects.push_back(o);
      }
    }
    perception::EgoState e;
    e.position = ego;
    const auto w = perception::decompose(e, base.sensor, objects);
    const double sum = w.free.area() + w.occupied.area() + w.hidden.area();
    worst_fov = std::max(worst_fov, std::abs(sum - w.fov.area()) / w.fov.area());
    const auto s = characterize::restrict_to_aoi(w, aoi);
    const double ssum = s.free.area() + s.occupied.area() + s.hidden.area() + s.unknown.area();
    worst_aoi = std::max(worst_aoi, std::abs(ssum - aoi.area()) / aoi.area());
  }
  const double seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst_fov <= 1e-6 && worst_aoi <= 1e-6 && seconds < 30.0,
          fmt("max rel error FOV %.2e, AOI %.2e, %.2f s", worst_fov, worst_aoi, seconds)};
}

Outcome safety_formula()
{
  const characterize::SafetyParams p{-6.0, 1.0};
  const double d10 = characterize::safety_distance(10.0, p);
  const double d0 = characterize::safety_distance(0.0, p);
  const double d20 = characterize::safety_distance(20.0, p);
  const bool ok = std::abs(d10 - 8.3333333333333333) <= 1e-9 && d0 == 0.0 && std::abs(d20 - 4.0 * d10) <= 1e-9;
  return {ok, fmt("d(10) = %.10f, d(0) = %.1f, d(20)/d(10) = %.12f", d10, d0, d20 / d10)};
}

Outcome overtaking()
{
  const auto moving_sc = fixture("overtaking_moving");
  const auto moving = pipeline::run(moving_sc);
  const auto stopped_sc = fixture("overtaking_stopped");
  const auto stopped = pipeline::run(stopped_sc);
  const auto right_car = std::find_if(stopped_sc.objects.begin(), stopped_sc.objects.end(), [](const auto & o) {
    return o.id == "right_car";
  });
  const auto & right_lane = stopped_sc.map.lane(map::LaneId("right"));
  double front = -1e300;
  for (const auto & v : perception::footprint(*right_car).ring()) {
    front = std::max(front, geom::station_offset(right_lane.centerline, v).station);
  }
  long stopped_safety = 0;
  long hidden_ahead = 0;
  for (const auto & c : stopped.report.cells) {
    stopped_safety += c.label == SpaceClass::Safety;
    hidden_ahead += c.cell.lane_id.str() == "right" && c.cell.s0 >= front && c.label == SpaceClass::Hidden;
  }
  long moving_safety = 0;
  for (const auto & c : moving.report.cells) {
    moving_safety += c.cell.lane_id.str() == "right" && c.label == SpaceClass::Safety;
  }
  const double d = characterize::safety_distance(10.0, moving_sc.params.safety);
  const long expect = static_cast<long>(std::floor(d / moving_sc.params.grid.cell_step));
  const bool ok = stopped_safety == 0 && hidden_ahead >= 1 && std::abs(moving_safety - expect) <= 1;
  return {ok, fmt("stopped: %.0f Safety, %.0f Hidden ahead; moving: %.0f Safety on its lane", stopped_safety,
                  hidden_ahead, moving_safety) +
                " (expected " + std::to_string(expect) + " +/- 1)"};
}

Outcome t_intersection()
{
  const auto sc = fixture("t_intersection");
  const auto r = pipeline::run(sc);
  const bool golden = pipeline::format_report(r.report) ==
                      test_support::read_text(test_support::golden_dir() / "t_intersection.report");
  bool all_classes = true;
  for (auto c : {SpaceClass::Free, SpaceClass::Occupied, SpaceClass::Hidden, SpaceClass::Protected,
                 SpaceClass::Unknown}) {
    all_classes = all_classes && r.report.count(c) >= 1;
  }
  bool upstream = !r.blockages.empty();
  int outside_fov = 0;
  for (const auto & c : r.report.cells) {
    if (c.label != SpaceClass::Protected) {
      continue;
    }
    for (const auto & b : r.blockages) {
      if (b.lane == c.cell.lane_id) {
        upstream = upstream && c.cell.s1 <= b.min_station + 1e-9;
      }
    }
    outside_fov += geom::intersection_area(c.cell.polygon, r.world.fov) <= 1e-9;
  }
  const bool ok = golden && all_classes && upstream && outside_fov >= 1;
  return {ok, std::string("golden ") + (golden ? "match" : "MISMATCH") + ", all five classes " +
                (all_classes ? "present" : "MISSING") + ", protected upstream " + (upstream ? "yes" : "NO") +
                ", protected outside FOV " + std::to_string(outside_fov)};
}

Outcome masking()
{
  std::size_t changed = 0;
  std::size_t violations = 0;
  for (const char * name : kFixtures) {
    const auto sc = fixture(name);
    const auto with = pipeline::run(sc);
    const auto without = pipeline::run(sc, {1, true});
    for (std::size_t i = 0; i < with.report.cells.size(); ++i) {
      const SpaceClass a = with.report.cells[i].label;
      const SpaceClass b = without.report.cells[i].label;
      if (a == b) {
        continue;
      }
      ++changed;
      const bool overlay = a == SpaceClass::Safety || a == SpaceClass::Protected;
      const bool reverts = b == SpaceClass::Hidden || b == SpaceClass::Unknown;
      violations += !(overlay && reverts);
    }
  }
  return {violations == 0, std::to_string(changed) + " cells change, " + std::to_string(violations) +
                             " of them not Safety/Protected -> Hidden/Unknown"};
}

Outcome oracle()
{
  bool ok = true;
  std::string detail;
  for (const char * name : kFixtures) {
    const auto o = pipeline::oracle_check(fixture(name), 2000, 2026, 4);
    ok = ok && o.passed();
    detail += std::string(detail.empty() ? "" : ", ") + name +
              fmt(" dev %.4f agree %.4f", o.max_deviation, o.agreement());
  }
  return {ok, detail};
}

Outcome determinism()
{
  bool ok = true;
  for (const char * name : kFixtures) {
    const auto sc = fixture(name);
    std::vector<std::string> reports;
    std::vector<std::string> svgs;
    for (int threads : {1, 1, 8, 8}) {
      const auto r = pipeline::run(sc, {threads, false});
      reports.push_back(pipeline::format_report(r.report));
      svgs.push_back(pipeline::render_svg(pipeline::parse_report(reports.back()), sc));
    }
    for (std::size_t i = 1; i < reports.size(); ++i) {
      ok = ok && reports[i] == reports[0] && svgs[i] == svgs[0];
    }
  }
  return {ok, ok ? "reports and SVGs byte-identical over reruns and 1/8 threads" : "outputs differ"};
}

double stage_median(const pipeline::BenchReport & b, const std::string & stage)
{
  for (const auto & s : b.stages) {
    if (s.stage == stage) {
      return s.median_us;
    }
  }
  return 0.0;
}

double median(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

Outcome performance()
{
  auto sc = fixture("t_intersection");
  const double total_ms = stage_median(pipeline::bench(sc, 100), "total") / 1000.0;

  // Classify scaling: both grids are timed in alternating rounds so that load drift on a
  // shared machine hits them equally.
  auto fine = sc;
  fine.params.grid.cell_step = 0.5 * sc.params.grid.cell_step;
  const auto coarse_r = pipeline::run(sc);
  const auto fine_r = pipeline::run(fine);
  const auto time_classify = [](const pipeline::RunResult & r, const pipeline::Scenario & s) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto out = characterize::classify_cells(
      r.grid, r.starred, r.safety, r.protection, r.detected, {s.params.thresholds, 1});
    const auto t1 = std::chrono::steady_clock::now();
    return out.empty() ? 0.0 : std::chrono::duration<double, std::micro>(t1 - t0).count();
  };
  std::vector<double> coarse_us;
  std::vector<double> fine_us;
  for (int i = 0; i < 41; ++i) {
    coarse_us.push_back(time_classify(coarse_r, sc));
    fine_us.push_back(time_classify(fine_r, fine));
  }
  const double ratio = median(fine_us) / median(coarse_us);
  const double cell_ratio =
    static_cast<double>(fine_r.grid.cells.size()) / static_cast<double>(coarse_r.grid.cells.size());
  return {total_ms < 50.0 && ratio <= 2.5,
          fmt("end-to-end median %.2f ms; classify x%.2f for x%.2f cells", total_ms, ratio, cell_ratio)};
}

}  // namespace

int main()
{
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
    {"1 partition identity over 100 random scenes", partition_identity},
    {"2 safety distance formula", safety_formula},
    {"3 overtaking case study", overtaking},
    {"4 T-intersection case study", t_intersection},
    {"5 informativeness masking", masking},
    {"6 oracle equivalence", oracle},
    {"7 determinism", determinism},
    {"8 performance", performance},
  };
  int failed = 0;
  for (const auto & [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception & e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
