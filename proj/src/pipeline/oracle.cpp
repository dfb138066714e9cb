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

// Point-sampling cross-check of the cell fractions. Free, occupied and hidden
// membership is decided per point from the raw scene (sensor polygon, object
// boxes, line of sight) without any polygon boolean operation.

#include "lanectx/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <thread>

namespace lanectx::pipeline
{
namespace
{
using characterize::Fractions;
using characterize::SpaceClass;
using geom::Point2;

struct Box2
{
  Point2 center;
  double c{1.0};
  double s{0.0};
  double hl{0.0};
  double hw{0.0};

  explicit Box2(const perception::ObjectState & o)
  : center(o.center),
    c(std::cos(o.heading)),
    s(std::sin(o.heading)),
    hl(0.5 * o.length),
    hw(0.5 * o.width)
  {
  }

  Point2 local(Point2 p) const
  {
    const Point2 d = p - center;
    return {c * d.x + s * d.y, -s * d.x + c * d.y};
  }

  bool contains(Point2 p) const
  {
    const Point2 q = local(p);
    return std::abs(q.x) <= hl && std::abs(q.y) <= hw;
  }

  // Slab clipping of the segment a-b against the box; true when a piece of
  // positive length passes through the box.
  bool blocks(Point2 a, Point2 b) const
  {
    const Point2 p = local(a);
    const Point2 d = local(b) - p;
    double t0 = 0.0;
    double t1 = 1.0;
    const std::array<std::array<double, 3>, 2> slabs{{{p.x, d.x, hl}, {p.y, d.y, hw}}};
    for (const auto & [o, dir, half] : slabs) {
      if (std::abs(dir) < 1e-15) {
        if (std::abs(o) > half) {
          return false;
        }
        continue;
      }
      double ta = (-half - o) / dir;
      double tb = (half - o) / dir;
      if (ta > tb) {
        std::swap(ta, tb);
      }
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
      if (t0 >= t1) {
        return false;
      }
    }
    return t1 - t0 > 1e-12;
  }
};

// Inscribed regular polygon with a vertex at angle 0, by angular sector.
struct SensorDisk
{
  Point2 origin;
  double range{0.0};
  int n{0};

  bool contains(Point2 p) const
  {
    const Point2 d = p - origin;
    const double r = geom::norm(d);
    if (r > range) {
      return false;
    }
    const double step = 2.0 * std::numbers::pi / n;
    double theta = std::atan2(d.y, d.x);
    if (theta < 0.0) {
      theta += 2.0 * std::numbers::pi;
    }
    const int k = std::min(n - 1, static_cast<int>(theta / step));
    const Point2 a{range * std::cos(k * step), range * std::sin(k * step)};
    const Point2 b{range * std::cos((k + 1) * step), range * std::sin((k + 1) * step)};
    return geom::cross(b - a, d - a) >= 0.0;
  }
};

// Even-odd crossing test, independent of the boolean backend.
bool in_ring(const std::vector<Point2> & ring, Point2 p)
{
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Point2 & a = ring[i];
    const Point2 & b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) {
        inside = !inside;
      }
    }
  }
  return inside;
}

std::uint64_t cell_seed(std::uint64_t seed, const map::LaneId & lane, int index)
{
  // FNV-1a over the lane id, mixed with the index and the user seed
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : lane.str()) {
    h = (h ^ ch) * 1099511628211ULL;
  }
  h ^= static_cast<std::uint64_t>(index) * 0x9E3779B97F4A7C15ULL;
  return h ^ (seed + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
}

struct Sampled
{
  Fractions fractions;
  double footprint{0.0};
};

struct SceneProbe
{
  SensorDisk disk;
  std::vector<Box2> all;
  std::vector<Box2> detected;
  const geom::RegionSet * safety{nullptr};
  const geom::RegionSet * protection{nullptr};
};

Sampled sample_cell(const geom::Polygon & cell, const SceneProbe & scene, std::size_t n, std::mt19937_64 & rng)
{
  const geom::Box & bb = cell.bbox();
  const double bw = bb.max_x - bb.min_x;
  const double bh = bb.max_y - bb.min_y;
  // strata over the bounding box, sized so about n of them land in the cell
  const auto m = static_cast<std::size_t>(
    std::ceil(std::sqrt(static_cast<double>(n) * (bw * bh) / cell.area())));
  std::uniform_real_distribution<double> u(0.0, 1.0);

  std::size_t accepted = 0;
  std::array<std::size_t, 6> hits{};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Point2 p{
        bb.min_x + bw * (static_cast<double>(i) + u(rng)) / static_cast<double>(m),
        bb.min_y + bh * (static_cast<double>(j) + u(rng)) / static_cast<double>(m)};
      if (!in_ring(cell.ring(), p)) {
        continue;
      }
      ++accepted;
      const bool in_fov = scene.disk.contains(p);
      const bool in_object =
        std::any_of(scene.all.begin(), scene.all.end(), [&](const Box2 & b) { return b.contains(p); });
      const bool occupied = in_fov && in_object;
      const bool seen = in_fov && !in_object &&
                        std::none_of(scene.all.begin(), scene.all.end(), [&](const Box2 & b) {
                          return b.blocks(scene.disk.origin, p);
                        });
      hits[0] += seen ? 1 : 0;
      hits[1] += occupied ? 1 : 0;
      hits[2] += (in_fov && !seen && !occupied) ? 1 : 0;
      hits[3] += geom::contains_point(*scene.safety, p) ? 1 : 0;
      hits[4] += geom::contains_point(*scene.protection, p) ? 1 : 0;
      hits[5] += std::any_of(scene.detected.begin(), scene.detected.end(), [&](const Box2 & b) {
        return b.contains(p);
      }) ? 1 : 0;
    }
  }
  Sampled s;
  if (accepted == 0) {
    return s;
  }
  const double k = 1.0 / static_cast<double>(accepted);
  s.fractions = {hits[0] * k, hits[1] * k, hits[2] * k, hits[3] * k, hits[4] * k};
  s.footprint = hits[5] * k;
  return s;
}

std::size_t deciding_rule(SpaceClass label)
{
  switch (label) {
    case SpaceClass::Occupied:
      return 0;
    case SpaceClass::Free:
      return 1;
    case SpaceClass::Protected:
      return 2;
    case SpaceClass::Safety:
      return 3;
    case SpaceClass::Hidden:
    case SpaceClass::Unknown:
      return 4;
  }
  return 4;
}

std::array<double, 5> rule_fractions(const Fractions & f, double rule1)
{
  return {rule1, f.free, f.protection, f.safety, f.hidden};
}

// A cell is marginal when some rule evaluated on either side, up to and including
// the deciding one, has a partial engine fraction within the margin of its
// threshold. Engine fractions of exactly 0 or 1 come from exact overlay results
// and carry no sampling ambiguity.
bool near_threshold(
  const Fractions & engine, SpaceClass engine_label, const Fractions & oracle, double oracle_rule1,
  SpaceClass oracle_label, const characterize::Thresholds & th)
{
  const std::array<double, 5> thresholds{
    th.eps_occ, th.tau_free, th.tau_overlay, th.tau_overlay, th.eps_occ};
  const auto qe = rule_fractions(engine, engine.occupied);
  const auto qo = rule_fractions(oracle, oracle_rule1);
  const std::size_t last = std::max(deciding_rule(engine_label), deciding_rule(oracle_label));
  for (std::size_t r = 0; r <= last; ++r) {
    const bool partial = qe[r] > 1e-9 && qe[r] < 1.0 - 1e-9;
    const bool close = std::abs(qe[r] - thresholds[r]) <= kOracleMargin ||
                       std::abs(qo[r] - thresholds[r]) <= kOracleMargin;
    if (partial && close) {
      return true;
    }
  }
  return false;
}

double max_gap(const Fractions & a, const Fractions & b)
{
  return std::max(
    {std::abs(a.free - b.free), std::abs(a.occupied - b.occupied), std::abs(a.hidden - b.hidden),
     std::abs(a.safety - b.safety), std::abs(a.protection - b.protection)});
}

}  // namespace

double OracleReport::agreement() const
{
  const std::size_t judged = cells - margin_cells;
  return judged == 0 ? 1.0 : static_cast<double>(agreeing) / static_cast<double>(judged);
}

bool OracleReport::passed() const
{
  return max_deviation <= kOracleDeviationTolerance && agreement() >= kOracleAgreement;
}

OracleReport oracle_check(
  const Scenario & scenario, std::size_t samples_per_cell, std::uint64_t seed, int threads)
{
  if (samples_per_cell < 100) {
    throw std::invalid_argument("oracle needs at least 100 samples per cell");
  }
  const RunResult r = run(scenario, {threads, false});
  const auto & th = scenario.params.thresholds;

  SceneProbe scene;
  scene.disk = {r.ego.position, scenario.sensor.range, scenario.sensor.arc_segments};
  for (const auto & o : scenario.objects) {
    scene.all.emplace_back(o);
  }
  for (const auto & o : r.detected) {
    scene.detected.emplace_back(o);
  }
  scene.safety = &r.safety;
  scene.protection = &r.protection;

  const auto & cells = r.report.cells;
  std::vector<Sampled> sampled(cells.size());
  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::mt19937_64 rng(cell_seed(seed, cells[i].cell.lane_id, cells[i].cell.index));
      sampled[i] = sample_cell(cells[i].cell.polygon, scene, samples_per_cell, rng);
    }
  };
  const std::size_t n = cells.size();
  const std::size_t t_count =
    std::min(static_cast<std::size_t>(std::max(threads, 1)), std::max<std::size_t>(n, 1));
  if (t_count == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t_count);
    const std::size_t chunk = (n + t_count - 1) / t_count;
    for (std::size_t t = 0; t < t_count; ++t) {
      const std::size_t b = std::min(n, t * chunk);
      const std::size_t e = std::min(n, b + chunk);
      pool.emplace_back([&, t, b, e] {
        try {
          work(b, e);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto & t : pool) {
      t.join();
    }
    for (const auto & err : errors) {
      if (err) {
        std::rethrow_exception(err);
      }
    }
  }

  OracleReport out;
  out.cells = n;
  for (std::size_t i = 0; i < n; ++i) {
    const auto & engine = cells[i];
    const Sampled & s = sampled[i];
    const SpaceClass oracle_label = characterize::decide_label(s.fractions, s.footprint > 0.0, th);
    const double gap = max_gap(engine.fractions, s.fractions);
    if (gap > out.max_deviation) {
      out.max_deviation = gap;
      out.worst_lane = engine.cell.lane_id;
      out.worst_index = engine.cell.index;
    }
    const bool margin = near_threshold(
      engine.fractions, engine.label, s.fractions, std::max(s.fractions.occupied, s.footprint),
      oracle_label, th);
    if (margin) {
      ++out.margin_cells;
    } else if (oracle_label == engine.label) {
      ++out.agreeing;
    }
    if (oracle_label != engine.label) {
      out.mismatches.push_back(
        {engine.cell.lane_id, engine.cell.index, engine.label, oracle_label, margin});
    }
  }
  return out;
}

}  // namespace lanectx::pipeline
