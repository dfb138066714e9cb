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
#include "lanectx/pipeline.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

using namespace lanectx;
using namespace lanectx::characterize;
using geom::Point2;
using nlohmann::json;
using test_support::rect;
using test_support::region;

namespace
{

json lane_json(const std::string & id, std::vector<std::array<double, 2>> pts)
{
  json cl = json::array();
  for (auto [x, y] : pts) {
    cl.push_back({x, y});
  }
  return {{"id", id}, {"width", 3.5}, {"centerline", cl}, {"successors", json::array()}};
}

// Route lane r along y = 0, lane c50 crossing it at x = 50 (travel +y), and lane h along
// y = -5 that crosses c50 but not r.
struct CrossingWorld
{
  map::RoadMap map;
  map::Route route;
  std::vector<context::InteractingLane> interacting;
  context::LaneGrid grid;
};

CrossingWorld crossing_world(bool with_h = true)
{
  json lanes = {lane_json("r", {{0, 0}, {200, 0}}), lane_json("c50", {{50, -20}, {50, 20}})};
  if (with_h) {
    lanes.push_back(lane_json("h", {{0, -5}, {100, -5}}));
  }
  CrossingWorld w{map::load_map(json{{"lanes", lanes}}.dump()), {}, {}, {}};
  w.route = map::route(w.map, {map::LaneId("r"), 0.0}, {map::LaneId("r"), 200.0});
  w.interacting = context::interacting_lanes(w.map, w.route);
  w.grid = context::build_lane_grid(w.map, w.route, 0.0, w.interacting, {100.0, 1.0});
  return w;
}

// A single straight lane r with 100 one-meter cells over [0, 100].
context::LaneGrid straight_grid(const map::RoadMap & m)
{
  const auto r = map::route(m, {map::LaneId("r"), 0.0}, {map::LaneId("r"), 150.0});
  const auto il = context::interacting_lanes(m, r);
  return context::build_lane_grid(m, r, 0.0, il, {100.0, 1.0});
}

map::RoadMap straight_map()
{
  return map::load_map(json{{"lanes", {lane_json("r", {{0, 0}, {150, 0}})}}}.dump());
}

perception::ObjectState car(const char * id, Point2 c, double heading, double speed, double l = 4.5,
                            double w = 1.8)
{
  return {id, c, heading, l, w, speed};
}

pipeline::Scenario fixture(const char * name)
{
  return pipeline::load_scenario_file(test_support::data_dir() / "scenarios" / name);
}

const char * kFixtures[] = {"t_intersection.json", "overtaking_moving.json", "overtaking_stopped.json",
                            "straight_empty.json"};

}  // namespace

TEST(SpaceClass, StringRoundTrip)
{
  for (auto c : {SpaceClass::Free, SpaceClass::Occupied, SpaceClass::Hidden, SpaceClass::Unknown,
                 SpaceClass::Safety, SpaceClass::Protected}) {
    EXPECT_EQ(space_class_from_string(to_string(c)), c);
  }
  EXPECT_FALSE(space_class_from_string("free"));
}

TEST(SafetyDistance, BrakingFormula)
{
  const SafetyParams p;
  EXPECT_EQ(safety_distance(0.0, p), 0.0);
  EXPECT_NEAR(safety_distance(10.0, p), 25.0 / 3.0, 1e-12);
  EXPECT_NEAR(safety_distance(20.0, p), 100.0 / 3.0, 1e-12);
  EXPECT_NEAR(safety_distance(20.0, p), 4.0 * safety_distance(10.0, p), 1e-12);
  double prev = 0.0;
  for (double v = 0.5; v < 40.0; v += 0.5) {
    const double d = safety_distance(v, p);
    EXPECT_GT(d, prev);
    prev = d;
  }
  EXPECT_NEAR(safety_distance(10.0, {-2.0, 1.0}), 25.0, 1e-12);
}

TEST(SafetyDistance, RejectsBadInput)
{
  EXPECT_THROW(safety_distance(-1.0, {}), std::invalid_argument);
  EXPECT_THROW(safety_distance(NAN, {}), std::invalid_argument);
  EXPECT_THROW(safety_distance(1.0, {0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(safety_distance(1.0, {3.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(validate(SafetyParams{-6.0, -0.1}), std::invalid_argument);
  EXPECT_NO_THROW(validate(SafetyParams{-6.0, 0.0}));
}

TEST(Thresholds, Validation)
{
  EXPECT_NO_THROW(validate(Thresholds{}));
  EXPECT_THROW(validate(Thresholds{-0.1, 0.99, 0.5}), std::invalid_argument);
  EXPECT_THROW(validate(Thresholds{1e-3, 1.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(validate(Thresholds{1e-3, 0.99, NAN}), std::invalid_argument);
}

TEST(DecideLabel, RuleOrder)
{
  const Thresholds th;
  auto f = [](double fr, double oc, double hi, double sa, double pr) {
    return Fractions{fr, oc, hi, sa, pr};
  };
  EXPECT_EQ(decide_label(f(1, 0, 0, 0, 0), false, th), SpaceClass::Free);
  EXPECT_EQ(decide_label(f(0.99, 0, 0.01, 0, 0), false, th), SpaceClass::Free);
  EXPECT_EQ(decide_label(f(0.98, 0, 0.02, 0, 0), false, th), SpaceClass::Hidden);
  EXPECT_EQ(decide_label(f(0.9, 0.002, 0, 0, 0), false, th), SpaceClass::Occupied);
  EXPECT_EQ(decide_label(f(0.999, 0.001, 0, 0, 0), false, th), SpaceClass::Free);
  // a footprint touching the cell wins over everything
  EXPECT_EQ(decide_label(f(1, 0, 0, 1, 1), true, th), SpaceClass::Occupied);
  // free masks both overlays
  EXPECT_EQ(decide_label(f(1, 0, 0, 1, 1), false, th), SpaceClass::Free);
  EXPECT_EQ(decide_label(f(0, 0, 1, 0.6, 0.6), false, th), SpaceClass::Protected);
  EXPECT_EQ(decide_label(f(0, 0, 1, 0.5, 0.49), false, th), SpaceClass::Safety);
  EXPECT_EQ(decide_label(f(0, 0, 1, 0.49, 0), false, th), SpaceClass::Hidden);
  EXPECT_EQ(decide_label(f(0, 0, 0, 0, 0.5), false, th), SpaceClass::Protected);
  EXPECT_EQ(decide_label(f(0, 0, 0.001, 0, 0), false, th), SpaceClass::Unknown);
  EXPECT_EQ(decide_label(f(0, 0, 0.0011, 0, 0), false, th), SpaceClass::Hidden);
  EXPECT_EQ(decide_label(f(0, 0, 0, 0, 0), false, th), SpaceClass::Unknown);
}

TEST(RestrictToAoi, InsideAndOutsideFov)
{
  const auto aoi = region(rect(0, -1.75, 20, 1.75));
  perception::EgoState ego;
  ego.position = {10, 0};
  const auto inside = restrict_to_aoi(perception::decompose(ego, {50.0, 64}, {}), aoi);
  EXPECT_NEAR(inside.free.area(), aoi.area(), 1e-9);
  EXPECT_TRUE(inside.occupied.empty());
  EXPECT_TRUE(inside.hidden.empty());
  EXPECT_LT(inside.unknown.area(), 1e-9);

  ego.position = {500, 0};
  const auto outside = restrict_to_aoi(perception::decompose(ego, {50.0, 64}, {}), aoi);
  EXPECT_TRUE(outside.free.empty());
  EXPECT_TRUE(outside.occupied.empty());
  EXPECT_TRUE(outside.hidden.empty());
  EXPECT_NEAR(outside.unknown.area(), aoi.area(), 1e-9);
}

TEST(RestrictToAoi, StarredSetsPartitionTheAoi)
{
  for (const char * name : kFixtures) {
    const auto r = pipeline::run(fixture(name));
    const auto aoi = r.grid.aoi();
    const auto & s = r.starred;
    const double sum = s.free.area() + s.occupied.area() + s.hidden.area() + s.unknown.area();
    EXPECT_NEAR(sum / aoi.area(), 1.0, 1e-6) << name;
    // U* is what the three observed sets leave of the AOI
    const auto observed = geom::unite(geom::unite(s.free, s.occupied), s.hidden);
    EXPECT_NEAR(s.unknown.area(), geom::subtract(aoi, observed).area(), 1e-6 * aoi.area()) << name;
  }
  const auto m = straight_map();
  const auto grid = straight_grid(m);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto scene = test_support::random_scene(seed);
    perception::EgoState ego;
    ego.position = {std::fmod(7.0 * seed, 100.0), 0.0};
    for (auto & o : scene.objects) {
      o.center = o.center + Point2{50.0, 0.0};
    }
    std::erase_if(scene.objects, [&](const perception::ObjectState & o) {
      return geom::contains_point(perception::footprint(o), ego.position);
    });
    const auto w = perception::decompose(ego, {40.0, 64}, scene.objects);
    const auto s = restrict_to_aoi(w, grid.aoi());
    const double sum = s.free.area() + s.occupied.area() + s.hidden.area() + s.unknown.area();
    EXPECT_NEAR(sum / grid.aoi().area(), 1.0, 1e-6) << seed;
  }
}

TEST(AssignedLanes, LateralWindow)
{
  const auto w = crossing_world(false);
  const auto on = [&](Point2 c) {
    std::vector<std::string> ids;
    for (const auto & id : assigned_lanes(car("x", c, 0, 0), w.grid, w.map)) {
      ids.push_back(id.str());
    }
    return ids;
  };
  EXPECT_EQ(on({20, 0}), std::vector<std::string>{"r"});
  EXPECT_EQ(on({20, 2.25}), std::vector<std::string>{"r"});
  EXPECT_TRUE(on({20, 2.3}).empty());
  EXPECT_EQ(on({50, 0}), (std::vector<std::string>{"c50", "r"}));
  EXPECT_TRUE(on({150, 40}).empty());
}

TEST(SafetyRegion, SliceAheadOfFrontBumper)
{
  const auto w = crossing_world(false);
  const SafetyParams p;
  const auto s = safety_region(car("lead", {30, 0}, 0, 10.0), w.grid, w.map, p);
  ASSERT_FALSE(s.empty());
  // 4.5 m car: front bumper at station 32.25, slice of 25/3 m over the 3.5 m lane
  EXPECT_NEAR(s.area(), 3.5 * 25.0 / 3.0, 1e-6);
  EXPECT_NEAR(s.bbox().min_x, 32.25, 1e-9);
  EXPECT_NEAR(s.bbox().max_x, 32.25 + 25.0 / 3.0, 1e-9);
  EXPECT_NEAR(s.bbox().min_y, -1.75, 1e-9);
  EXPECT_NEAR(s.bbox().max_y, 1.75, 1e-9);

  EXPECT_TRUE(safety_region(car("stopped", {30, 0}, 0, 0.0), w.grid, w.map, p).empty());
  EXPECT_TRUE(safety_region(car("far", {30, 40}, 0, 10.0), w.grid, w.map, p).empty());
  // the slice ends at the lane end
  const auto end = safety_region(car("end", {195, 0}, 0, 10.0), w.grid, w.map, p);
  EXPECT_NEAR(end.area(), (200.0 - 197.25) * 3.5, 1e-6);
}

TEST(SafetyRegion, ObjectOnTwoLanesGetsBothSlices)
{
  const auto w = crossing_world(false);
  // heading along r but centered on the crossing. The r slice starts at x = 52.25; c50 runs
  // along +y and the footprint's maximal station on it is y = 0.9. The two slices are disjoint.
  const auto obj = car("x", {50, 0}, 0, 10.0);
  const auto s = safety_region(obj, w.grid, w.map, {});
  const double d = 25.0 / 3.0;
  EXPECT_NEAR(s.area(), 2.0 * 3.5 * d, 1e-6);
  EXPECT_TRUE(geom::contains_point(s, {52.25 + d / 2, 0}));
  EXPECT_TRUE(geom::contains_point(s, {50, 0.9 + d / 2}));
}

TEST(ProtectedRegion, BlockerAcrossCrossingLane)
{
  const auto w = crossing_world();
  const auto * c50 = w.grid.window(map::LaneId("c50"));
  ASSERT_NE(c50, nullptr);
  ASSERT_EQ(c50->order, 1);
  const auto * h = w.grid.window(map::LaneId("h"));
  ASSERT_NE(h, nullptr);
  ASSERT_EQ(h->order, 2);
  const std::vector<perception::ObjectState> objs{car("blocker", {50, -5}, 0, 0.0)};
  const auto b = blockages(objs, w.interacting, w.grid, w.map, {});
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].lane.str(), "c50");
  EXPECT_NEAR(b[0].min_station, 15.0 - 0.9, 1e-9);
  EXPECT_NEAR(b[0].lateral_span, 3.5, 1e-9);
  const auto p = protected_region(objs, w.interacting, w.grid, w.map, {});
  EXPECT_NEAR(p.area(), 3.5 * (14.1 - c50->s0), 1e-6);
  EXPECT_NEAR(p.bbox().max_y, -20.0 + 14.1, 1e-9);
}

TEST(ProtectedRegion, PassableGapAndMissingConflict)
{
  const auto w = crossing_world();
  // 2 m of the 3.5 m lane covered leaves a passable gap under min_block_gap = 1
  const std::vector<perception::ObjectState> narrow{car("narrow", {50, -5}, 0, 0.0, 2.0, 1.8)};
  EXPECT_TRUE(protected_region(narrow, w.interacting, w.grid, w.map, {}).empty());
  EXPECT_FALSE(protected_region(narrow, w.interacting, w.grid, w.map, {-6.0, 1.6}).empty());
  // on the crossing lane but away from the second-order lane
  const std::vector<perception::ObjectState> alone{car("alone", {50, -14}, std::numbers::pi / 2, 0.0)};
  EXPECT_TRUE(protected_region(alone, w.interacting, w.grid, w.map, {}).empty());
  EXPECT_TRUE(protected_region({}, w.interacting, w.grid, w.map, {}).empty());
  // without the second-order lane nothing can block
  const auto w2 = crossing_world(false);
  const std::vector<perception::ObjectState> blocker{car("blocker", {50, -5}, 0, 0.0)};
  EXPECT_TRUE(protected_region(blocker, w2.interacting, w2.grid, w2.map, {}).empty());
}

TEST(ProtectedRegion, TIntersectionBlocker)
{
  const auto sc = fixture("t_intersection.json");
  const auto r = pipeline::run(sc);
  const auto it = std::find_if(sc.objects.begin(), sc.objects.end(), [](const auto & o) {
    return o.id == "blocker";
  });
  ASSERT_NE(it, sc.objects.end());
  // merge_left runs along y = -1.75 from x = -120; the blocker's leftmost corner is inside it
  const double x_min = it->center.x - 0.5 * it->length * std::abs(std::cos(it->heading)) -
                       0.5 * it->width * std::abs(std::sin(it->heading));
  const double min_station = x_min + 120.0;
  ASSERT_EQ(r.blockages.size(), 1u);
  EXPECT_EQ(r.blockages[0].lane.str(), "merge_left");
  EXPECT_NEAR(r.blockages[0].min_station, min_station, 1e-9);
  const auto * win = r.grid.window(map::LaneId("merge_left"));
  ASSERT_NE(win, nullptr);
  EXPECT_NEAR(r.protection.area(), 3.5 * (min_station - win->s0), 1e-6);
  // Protected cells stay upstream of the blocker
  int protected_cells = 0;
  for (const auto & c : r.report.cells) {
    if (c.label == SpaceClass::Protected) {
      ++protected_cells;
      EXPECT_EQ(c.cell.lane_id.str(), "merge_left");
      EXPECT_LE(c.cell.s1, min_station + 1e-9);
    }
  }
  EXPECT_GT(protected_cells, 0);
}

TEST(ClassifyCells, SyntheticRegions)
{
  const auto m = straight_map();
  const auto grid = straight_grid(m);
  ASSERT_EQ(grid.cells.size(), 100u);
  StarredSets s;
  s.free = region(rect(0, -1.75, 10, 1.75));
  s.hidden = region(rect(10, -1.75, 60, 1.75));
  const auto safety = region(rect(5, -1.75, 30, 1.75));
  const auto protection = geom::unite(region(rect(25, -1.75, 40, 1.75)), region(rect(70, -1.75, 80, 1.75)));
  // footprint reaching 0.1 m into cell 45
  const std::vector<perception::ObjectState> objs{car("o", {44.55, 0}, 0, 0.0, 1.1, 1.0)};
  const auto reports = classify_cells(grid, s, safety, protection, objs);
  ASSERT_EQ(reports.size(), 100u);
  const auto label = [&](int i) { return reports[i].label; };
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(reports[i].cell.index, i);
  }
  EXPECT_EQ(label(0), SpaceClass::Free);
  EXPECT_EQ(label(7), SpaceClass::Free);
  EXPECT_EQ(label(12), SpaceClass::Safety);
  EXPECT_EQ(label(24), SpaceClass::Safety);
  EXPECT_EQ(label(25), SpaceClass::Protected);
  EXPECT_EQ(label(29), SpaceClass::Protected);
  EXPECT_EQ(label(39), SpaceClass::Protected);
  EXPECT_EQ(label(40), SpaceClass::Hidden);
  EXPECT_EQ(label(44), SpaceClass::Occupied);
  EXPECT_EQ(label(45), SpaceClass::Occupied);
  EXPECT_EQ(label(46), SpaceClass::Hidden);
  EXPECT_EQ(label(60), SpaceClass::Unknown);
  EXPECT_EQ(label(75), SpaceClass::Protected);
  EXPECT_EQ(label(99), SpaceClass::Unknown);
  EXPECT_NEAR(reports[45].fractions.occupied, 0.0, 1e-12);
  EXPECT_NEAR(reports[45].fractions.hidden, 1.0, 1e-9);
  EXPECT_NEAR(reports[12].fractions.safety, 1.0, 1e-9);
}

TEST(ClassifyCells, ThreadCountDoesNotChangeOutput)
{
  const auto sc = fixture("t_intersection.json");
  const auto r = pipeline::run(sc);
  const auto one = classify_cells(r.grid, r.starred, r.safety, r.protection, r.detected, {{}, 1});
  for (int threads : {2, 3, 8, 64}) {
    const auto many = classify_cells(r.grid, r.starred, r.safety, r.protection, r.detected, {{}, threads});
    ASSERT_EQ(one.size(), many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
      EXPECT_EQ(one[i].cell.lane_id, many[i].cell.lane_id);
      EXPECT_EQ(one[i].cell.index, many[i].cell.index);
      EXPECT_EQ(one[i].label, many[i].label);
      EXPECT_EQ(one[i].fractions.free, many[i].fractions.free);
      EXPECT_EQ(one[i].fractions.hidden, many[i].fractions.hidden);
      EXPECT_EQ(one[i].fractions.protection, many[i].fractions.protection);
    }
  }
}

TEST(ClassifyProperties, LabelsFollowTheRules)
{
  for (const char * name : kFixtures) {
    const auto sc = fixture(name);
    const auto r = pipeline::run(sc);
    for (const auto & c : r.report.cells) {
      for (double f : {c.fractions.free, c.fractions.occupied, c.fractions.hidden, c.fractions.safety,
                       c.fractions.protection}) {
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
      }
      const bool hit = std::any_of(r.detected.begin(), r.detected.end(), [&](const auto & o) {
        return geom::interiors_intersect(perception::footprint(o), c.cell.polygon);
      });
      EXPECT_EQ(c.label, decide_label(c.fractions, hit, sc.params.thresholds)) << name;
    }
  }
}

TEST(ClassifyProperties, OverlaysOnlyRefineHiddenOrUnknown)
{
  for (const char * name : kFixtures) {
    const auto sc = fixture(name);
    const auto with = pipeline::run(sc);
    const auto without = pipeline::run(sc, {1, true});
    ASSERT_EQ(with.report.cells.size(), without.report.cells.size());
    for (std::size_t i = 0; i < with.report.cells.size(); ++i) {
      const SpaceClass a = with.report.cells[i].label;
      const SpaceClass b = without.report.cells[i].label;
      if (a == SpaceClass::Safety || a == SpaceClass::Protected) {
        EXPECT_TRUE(b == SpaceClass::Hidden || b == SpaceClass::Unknown) << name << " " << i;
      } else {
        EXPECT_EQ(a, b) << name << " " << i;
      }
      if (b == SpaceClass::Free || b == SpaceClass::Occupied) {
        EXPECT_EQ(a, b);
      }
    }
  }
}

TEST(ClassifyProperties, LargerRangeNeverAddsUnknown)
{
  for (const char * name : kFixtures) {
    auto sc = fixture(name);
    std::size_t prev = std::numeric_limits<std::size_t>::max();
    for (double range : {10.0, 25.0, 40.0, 60.0, 80.0, 100.0, 150.0}) {
      sc.sensor.range = range;
      const std::size_t unknown = pipeline::run(sc).report.count(SpaceClass::Unknown);
      EXPECT_LE(unknown, prev) << name << " range " << range;
      prev = unknown;
    }
  }
}

TEST(ClassifyProperties, SafetyCellsTrackBrakingDistance)
{
  const auto stopped = pipeline::run(fixture("overtaking_stopped.json"));
  const auto moving_sc = fixture("overtaking_moving.json");
  const auto moving = pipeline::run(moving_sc);
  const auto on_right = [](const pipeline::RunResult & r) {
    return std::count_if(r.report.cells.begin(), r.report.cells.end(), [](const CellReport & c) {
      return c.cell.lane_id.str() == "right" && c.label == SpaceClass::Safety;
    });
  };
  EXPECT_EQ(on_right(stopped), 0);
  const double d = safety_distance(10.0, moving_sc.params.safety);
  const auto expect = static_cast<long>(std::floor(d / moving_sc.params.grid.cell_step));
  EXPECT_LE(std::abs(on_right(moving) - expect), 1);
  // right_car front at x = 22.75 (station 72.75): a full braking slice; left_car front at
  // station 44.25, clipped by the window start at 50
  EXPECT_NEAR(moving.safety.area(), 3.5 * d + 3.5 * (44.25 + d - 50.0), 1e-6);
  EXPECT_NEAR(stopped.safety.area(), 3.5 * (44.25 + d - 50.0), 1e-6);
}
