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

#include <clipper2/clipper.engine.h>

#include <algorithm>
#include <cmath>
#include <utility>

namespace lanectx::geom
{
namespace
{
namespace c2 = Clipper2Lib;

// Overlay runs on integer coordinates in units of kSnapGrid.
constexpr double kScale = 1.0 / kSnapGrid;
constexpr double kScale2 = kScale * kScale;
// Coordinates must stay far below the engine's int64 limit.
constexpr double kMaxCoordinate = 1e8;

std::int64_t to_grid(double v)
{
  if (!(std::abs(v) <= kMaxCoordinate)) {
    throw GeometryError("coordinate out of range for boolean operations");
  }
  return std::llround(v * kScale);
}

double from_grid(std::int64_t v) { return static_cast<double>(v) / kScale; }

c2::Path64 to_path(const Polygon & p)
{
  c2::Path64 path;
  path.reserve(p.ring().size());
  for (const auto & v : p.ring()) {
    const c2::Point64 q(to_grid(v.x), to_grid(v.y));
    if (path.empty() || path.back() != q) {
      path.push_back(q);
    }
  }
  while (path.size() > 1 && path.front() == path.back()) {
    path.pop_back();
  }
  if (path.size() < 3) {
    return {};
  }
  if (c2::Area(path) < 0.0) {
    std::reverse(path.begin(), path.end());
  }
  return path;
}

void append_paths(const RegionSet & r, c2::Paths64 & out)
{
  for (const auto & p : r.polygons()) {
    c2::Path64 path = to_path(p);
    if (!path.empty()) {
      out.push_back(std::move(path));
    }
  }
}

void execute(c2::ClipType op, const c2::Paths64 & subject, const c2::Paths64 & clip, c2::PolyTree64 & tree)
{
  c2::Clipper64 engine;
  engine.AddSubject(subject);
  if (!clip.empty()) {
    engine.AddClip(clip);
  }
  if (!engine.Execute(op, c2::FillRule::NonZero, tree)) {
    throw GeometryError("polygon overlay failed");
  }
}

void collect(const c2::PolyPath64 & node, std::vector<Polygon> & out, int depth);

// An outer ring with holes, split by axis-parallel cuts until no hole is left.
// Cuts lie on the integer grid, so both halves see identical intersection
// points and the split conserves area exactly.
void decompose(const c2::Path64 & outer, const c2::Paths64 & holes, std::vector<Polygon> & out, int depth)
{
  if (holes.empty()) {
    if (c2::Area(outer) / kScale2 <= kSliverArea) {
      return;
    }
    std::vector<Point2> ring;
    ring.reserve(outer.size());
    for (const auto & q : outer) {
      ring.push_back({from_grid(q.x), from_grid(q.y)});
    }
    out.emplace_back(std::move(ring));
    return;
  }
  if (depth > 256) {
    throw GeometryError("hole decomposition did not converge");
  }
  const c2::Rect64 hb = c2::GetBounds(holes.front());
  const c2::Rect64 ob = c2::GetBounds(outer);
  const bool vertical = hb.right - hb.left >= hb.bottom - hb.top;
  const std::int64_t lo = vertical ? hb.left : hb.top;
  const std::int64_t hi = vertical ? hb.right : hb.bottom;
  if (hi - lo < 2) {
    // a hole narrower than two grid steps in both directions has no area to speak of
    c2::Paths64 rest(holes.begin() + 1, holes.end());
    decompose(outer, rest, out, depth + 1);
    return;
  }
  const std::int64_t cut = lo + (hi - lo) / 2;
  c2::Paths64 subject{outer};
  subject.insert(subject.end(), holes.begin(), holes.end());
  for (bool low : {true, false}) {
    c2::Rect64 r(ob.left - 1, ob.top - 1, ob.right + 1, ob.bottom + 1);
    if (vertical) {
      (low ? r.right : r.left) = cut;
    } else {
      (low ? r.bottom : r.top) = cut;
    }
    c2::PolyTree64 half;
    execute(c2::ClipType::Intersection, subject, {r.AsPath()}, half);
    for (const auto & child : half) {
      collect(*child, out, depth + 1);
    }
  }
}

void collect(const c2::PolyPath64 & node, std::vector<Polygon> & out, int depth)
{
  c2::Path64 outer = node.Polygon();
  if (c2::Area(outer) < 0.0) {
    std::reverse(outer.begin(), outer.end());
  }
  c2::Paths64 holes;
  for (const auto & hole : node) {
    c2::Path64 h = hole->Polygon();
    if (c2::Area(h) > 0.0) {
      std::reverse(h.begin(), h.end());
    }
    holes.push_back(std::move(h));
    for (const auto & island : *hole) {
      collect(*island, out, depth);
    }
  }
  decompose(outer, holes, out, depth);
}

RegionSet to_region(const c2::PolyTree64 & tree)
{
  std::vector<Polygon> out;
  for (const auto & child : tree) {
    collect(*child, out, 0);
  }
  return RegionSet(std::move(out));
}

// Necessary area bounds on a boolean result; a violation means the overlay failed.
void check_bounds(const char * what, double got, double lo, double hi, double scale)
{
  const double tol = 1e-9 * scale + 1e-9;
  if (got < lo - tol || got > hi + tol) {
    throw GeometryError(
      std::string(what) + ": inconsistent result area " + std::to_string(got) + " outside [" +
      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

__extension__ using Wide = __int128;

struct Int2
{
  std::int64_t x;
  std::int64_t y;
};

Wide orient(Int2 a, Int2 b, Int2 c)
{
  return static_cast<Wide>(b.x - a.x) * (c.y - a.y) -
         static_cast<Wide>(b.y - a.y) * (c.x - a.x);
}

int sign(Wide v) { return (v > 0) - (v < 0); }

bool on_segment(Int2 a, Int2 b, Int2 p)
{
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_touch(Int2 a, Int2 b, Int2 c, Int2 d)
{
  const int o1 = sign(orient(a, b, c));
  const int o2 = sign(orient(a, b, d));
  const int o3 = sign(orient(c, d, a));
  const int o4 = sign(orient(c, d, b));
  if (o1 != o2 && o3 != o4) {
    return true;
  }
  return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
         (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

}  // namespace

RegionSet intersect(const RegionSet & a, const RegionSet & b)
{
  if (a.empty() || b.empty() || !a.bbox().intersects(b.bbox())) {
    return RegionSet{};
  }
  c2::Paths64 pa;
  c2::Paths64 pb;
  append_paths(a, pa);
  append_paths(b, pb);
  c2::PolyTree64 tree;
  execute(c2::ClipType::Intersection, pa, pb, tree);
  RegionSet out = to_region(tree);
  check_bounds("intersect", out.area(), 0.0, std::min(a.area(), b.area()), a.area() + b.area());
  return out;
}

RegionSet subtract(const RegionSet & a, const RegionSet & b)
{
  if (a.empty()) {
    return RegionSet{};
  }
  c2::Paths64 pa;
  c2::Paths64 pb;
  append_paths(a, pa);
  if (!b.empty() && a.bbox().intersects(b.bbox())) {
    append_paths(b, pb);
  }
  c2::PolyTree64 tree;
  execute(c2::ClipType::Difference, pa, pb, tree);
  RegionSet out = to_region(tree);
  check_bounds("subtract", out.area(), a.area() - b.area(), a.area(), a.area() + b.area());
  return out;
}

RegionSet unite(const RegionSet & a, const RegionSet & b)
{
  c2::Paths64 paths;
  append_paths(a, paths);
  append_paths(b, paths);
  if (paths.empty()) {
    return RegionSet{};
  }
  c2::PolyTree64 tree;
  execute(c2::ClipType::Union, paths, {}, tree);
  RegionSet out = to_region(tree);
  check_bounds(
    "unite", out.area(), std::max(a.area(), b.area()), a.area() + b.area(), a.area() + b.area());
  return out;
}

RegionSet unite_all(std::span<const Polygon> polygons)
{
  c2::Paths64 paths;
  double largest = 0.0;
  double total = 0.0;
  for (const auto & p : polygons) {
    c2::Path64 path = to_path(p);
    if (!path.empty()) {
      paths.push_back(std::move(path));
    }
    largest = std::max(largest, p.area());
    total += p.area();
  }
  if (paths.empty()) {
    return RegionSet{};
  }
  c2::PolyTree64 tree;
  execute(c2::ClipType::Union, paths, {}, tree);
  RegionSet out = to_region(tree);
  check_bounds("unite_all", out.area(), largest, total, total);
  return out;
}

double intersection_area(const Polygon & p, const RegionSet & r)
{
  if (r.empty() || !p.bbox().intersects(r.bbox())) {
    return 0.0;
  }
  c2::Paths64 pb;
  for (const auto & q : r.polygons()) {
    if (p.bbox().intersects(q.bbox())) {
      c2::Path64 path = to_path(q);
      if (!path.empty()) {
        pb.push_back(std::move(path));
      }
    }
  }
  const c2::Path64 pa = to_path(p);
  if (pb.empty() || pa.empty()) {
    return 0.0;
  }
  c2::PolyTree64 tree;
  execute(c2::ClipType::Intersection, {pa}, pb, tree);
  double total = 0.0;
  for (const auto & child : tree) {
    total += child->Area();
  }
  return total / kScale2;
}

bool interiors_intersect(const Polygon & a, const Polygon & b)
{
  if (!a.bbox().intersects(b.bbox())) {
    return false;
  }
  return intersection_area(a, RegionSet(b)) > kSliverArea;
}

bool contains_point(const Polygon & p, Point2 pt)
{
  const Box & b = p.bbox();
  if (pt.x < b.min_x || pt.x > b.max_x || pt.y < b.min_y || pt.y > b.max_y) {
    return false;
  }
  const auto & ring = p.ring();
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Point2 u = ring[j];
    const Point2 v = ring[i];
    const double c = cross(v - u, pt - u);
    if (c == 0.0 && std::min(u.x, v.x) <= pt.x && pt.x <= std::max(u.x, v.x) &&
        std::min(u.y, v.y) <= pt.y && pt.y <= std::max(u.y, v.y)) {
      return true;
    }
    if ((u.y > pt.y) != (v.y > pt.y)) {
      // the edge crosses the horizontal through pt; count crossings to the right
      const bool upward = v.y > u.y;
      if ((c > 0.0) == upward) {
        inside = !inside;
      }
    }
  }
  return inside;
}

bool contains_point(const RegionSet & r, Point2 pt)
{
  return std::any_of(r.polygons().begin(), r.polygons().end(), [&](const Polygon & p) {
    return contains_point(p, pt);
  });
}

bool is_simple(const Polygon & p)
{
  std::vector<Int2> v;
  v.reserve(p.ring().size());
  for (const auto & q : p.ring()) {
    const Int2 g{to_grid(q.x), to_grid(q.y)};
    if (v.empty() || g.x != v.back().x || g.y != v.back().y) {
      v.push_back(g);
    }
  }
  while (v.size() > 1 && v.front().x == v.back().x && v.front().y == v.back().y) {
    v.pop_back();
  }
  const std::size_t n = v.size();
  if (n < 3) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Int2 a = v[i];
    const Int2 b = v[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Int2 c = v[j];
      const Int2 d = v[(j + 1) % n];
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // neighbours share one vertex; they may not fold back onto each other
        const Int2 shared = j == i + 1 ? b : a;
        const Int2 far1 = j == i + 1 ? a : b;
        const Int2 far2 = j == i + 1 ? d : c;
        if (sign(orient(far1, shared, far2)) == 0 &&
            (static_cast<Wide>(far1.x - shared.x) * (far2.x - shared.x) +
             static_cast<Wide>(far1.y - shared.y) * (far2.y - shared.y)) > 0) {
          return false;
        }
        continue;
      }
      if (segments_touch(a, b, c, d)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace lanectx::geom
