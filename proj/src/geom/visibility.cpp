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

#include "lanectx/geom.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>

// Angular sweep visibility. Critical angles are every vertex direction plus
// every pairwise edge crossing; between two consecutive critical angles the
// depth order of edges along a ray cannot change, so a single ray cast at the
// mid angle selects the visible edge for the whole wedge.

namespace lanectx::geom
{
namespace
{
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleMerge = 1e-13;

struct Edge
{
  Point2 a;
  Point2 b;
};

double angle_of(Point2 origin, Point2 p)
{
  double a = std::atan2(p.y - origin.y, p.x - origin.x);
  if (a < 0.0) {
    a += kTwoPi;
  }
  if (a >= kTwoPi) {
    a -= kTwoPi;
  }
  return a;
}

// Parameter t along origin + t*dir where the ray meets the supporting line of e;
// nullopt when the ray misses the segment (with a small tolerance on the
// segment parameter).
std::optional<double> ray_hit(Point2 origin, Point2 dir, const Edge & e, bool clamp_segment)
{
  const Point2 ab = e.b - e.a;
  const double den = cross(dir, ab);
  if (std::abs(den) < 1e-300) {
    return std::nullopt;
  }
  const Point2 ao = e.a - origin;
  const double t = cross(ao, ab) / den;
  const double u = cross(ao, dir) / den;
  if (clamp_segment && (u < -1e-12 || u > 1.0 + 1e-12)) {
    return std::nullopt;
  }
  if (t < 0.0) {
    return std::nullopt;
  }
  return t;
}

std::optional<Point2> segment_crossing(const Edge & p, const Edge & q)
{
  const Point2 r = p.b - p.a;
  const Point2 s = q.b - q.a;
  const double den = cross(r, s);
  if (den == 0.0) {
    return std::nullopt;
  }
  const Point2 qp = q.a - p.a;
  const double t = cross(qp, s) / den;
  const double u = cross(qp, r) / den;
  if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) {
    return std::nullopt;
  }
  return p.a + t * r;
}

double point_segment_distance(Point2 p, const Edge & e)
{
  const Point2 d = e.b - e.a;
  const double t = std::clamp(dot(p - e.a, d) / dot(d, d), 0.0, 1.0);
  return distance(p, e.a + t * d);
}

bool is_collinear(Point2 a, Point2 b, Point2 c)
{
  const double scale = std::max({distance(a, b), distance(b, c), 1e-12});
  return std::abs(cross(b - a, c - b)) <= 1e-12 * scale * scale;
}

}  // namespace

RegionSet visibility_region(
  Point2 origin, double range, int arc_segments, std::span<const Polygon> occluders)
{
  if (!is_finite(origin)) {
    throw GeometryError("visibility origin is not finite");
  }
  if (!(range > 0.0)) {
    throw GeometryError("visibility range must be positive");
  }
  if (arc_segments < 8) {
    throw GeometryError("visibility needs at least 8 arc segments");
  }
  for (const auto & occ : occluders) {
    if (contains_point(occ, origin)) {
      throw GeometryError("visibility origin lies inside an occluder");
    }
  }

  const Polygon disk = regular_polygon(origin, range, arc_segments);
  std::vector<Edge> disk_edges;
  const auto & dr = disk.ring();
  for (std::size_t i = 0; i < dr.size(); ++i) {
    disk_edges.push_back({dr[i], dr[(i + 1) % dr.size()]});
  }

  std::vector<Edge> occ_edges;
  for (const auto & occ : occluders) {
    const auto & r = occ.ring();
    for (std::size_t i = 0; i < r.size(); ++i) {
      const Edge e{r[i], r[(i + 1) % r.size()]};
      if (point_segment_distance(origin, e) >= range) {
        continue;
      }
      // edges seen edge-on contribute nothing
      if (std::abs(cross(e.a - origin, e.b - origin)) == 0.0) {
        continue;
      }
      occ_edges.push_back(e);
    }
  }
  if (occ_edges.empty()) {
    return RegionSet(disk);
  }

  std::vector<double> angles;
  for (const auto & p : dr) {
    angles.push_back(angle_of(origin, p));
  }
  for (const auto & e : occ_edges) {
    angles.push_back(angle_of(origin, e.a));
    angles.push_back(angle_of(origin, e.b));
  }
  for (std::size_t i = 0; i < occ_edges.size(); ++i) {
    for (std::size_t j = i + 1; j < occ_edges.size(); ++j) {
      if (auto x = segment_crossing(occ_edges[i], occ_edges[j])) {
        angles.push_back(angle_of(origin, *x));
      }
    }
    for (const auto & de : disk_edges) {
      if (auto x = segment_crossing(occ_edges[i], de)) {
        angles.push_back(angle_of(origin, *x));
      }
    }
  }
  std::sort(angles.begin(), angles.end());
  std::vector<double> crit;
  for (double a : angles) {
    if (crit.empty() || a - crit.back() > kAngleMerge) {
      crit.push_back(a);
    }
  }
  if (crit.size() > 1 && crit.front() + kTwoPi - crit.back() <= kAngleMerge) {
    crit.pop_back();
  }

  std::vector<Point2> ring;
  ring.reserve(2 * crit.size());
  for (std::size_t k = 0; k < crit.size(); ++k) {
    const double a0 = crit[k];
    const double a1 = k + 1 < crit.size() ? crit[k + 1] : crit.front() + kTwoPi;
    const double mid = 0.5 * (a0 + a1);
    const Point2 dir{std::cos(mid), std::sin(mid)};

    const Edge * best = nullptr;
    double best_t = std::numeric_limits<double>::infinity();
    for (const auto & e : disk_edges) {
      if (auto t = ray_hit(origin, dir, e, true); t && *t < best_t) {
        best_t = *t;
        best = &e;
      }
    }
    for (const auto & e : occ_edges) {
      if (auto t = ray_hit(origin, dir, e, true); t && *t < best_t) {
        best_t = *t;
        best = &e;
      }
    }
    if (best == nullptr) {
      throw GeometryError("visibility sweep lost the range boundary");
    }
    for (double a : {a0, a1}) {
      const Point2 d{std::cos(a), std::sin(a)};
      const auto t = ray_hit(origin, d, *best, false);
      const Point2 p = t ? origin + *t * d : best->a;
      if (ring.empty() || ring.back() != p) {
        ring.push_back(p);
      }
    }
  }
  while (ring.size() > 1 && ring.front() == ring.back()) {
    ring.pop_back();
  }

  std::vector<Point2> clean = std::move(ring);
  for (auto & p : clean) {
    constexpr double inv = 1.0 / kSnapGrid;
    p = {std::round(p.x * inv) / inv, std::round(p.y * inv) / inv};
  }
  clean.erase(std::unique(clean.begin(), clean.end()), clean.end());
  while (clean.size() > 1 && clean.front() == clean.back()) {
    clean.pop_back();
  }
  // drop collinear vertices against the current neighbours, so that one removal
  // is seen by the next test
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; clean.size() >= 3 && i < clean.size();) {
      const std::size_t n = clean.size();
      if (is_collinear(clean[(i + n - 1) % n], clean[i], clean[(i + 1) % n])) {
        clean.erase(clean.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
      } else {
        ++i;
      }
    }
  }
  if (clean.size() < 3) {
    return {};
  }
  return RegionSet(Polygon(std::move(clean)));
}

}  // namespace lanectx::geom
