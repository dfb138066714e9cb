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
#include <utility>

namespace lanectx::geom
{
namespace
{
constexpr double kMinSegment = 1e-6;
constexpr double kMiterLimit = 4.0;  // in units of half-width
constexpr double kVertexSnap = 1e-9;

Point2 left_normal(Point2 a, Point2 b)
{
  const Point2 d = b - a;
  const double len = norm(d);
  return {-d.y / len, d.x / len};
}

struct Joint
{
  bool mitered{true};
  // up to two points per side, in travel order
  std::vector<Point2> left;
  std::vector<Point2> right;
};

Joint joint_at(
  const std::vector<Point2> & v, const std::vector<Point2> & normals, std::size_t i, double h)
{
  const Point2 n0 = normals[i - 1];
  const Point2 n1 = normals[i];
  const double turn = cross(v[i] - v[i - 1], v[i + 1] - v[i]);
  const double denom = 1.0 + dot(n0, n1);
  Joint j;
  for (double side : {1.0, -1.0}) {
    auto & pts = side > 0.0 ? j.left : j.right;
    const bool outer = (turn > 0.0 && side < 0.0) || (turn < 0.0 && side > 0.0);
    if (denom <= 1e-12) {
      // reversal: bevel outside, collapse inside
      if (outer) {
        pts = {v[i] + side * h * n0, v[i] + side * h * n1};
        j.mitered = false;
      } else {
        pts = {v[i]};
      }
      continue;
    }
    const Point2 miter = (side * h / denom) * (n0 + n1);
    if (outer && norm(miter) > kMiterLimit * h) {
      pts = {v[i] + side * h * n0, v[i] + side * h * n1};
      j.mitered = false;
    } else {
      pts = {v[i] + miter};
    }
  }
  return j;
}

void check_segments(const std::vector<Point2> & v)
{
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (distance(v[i], v[i + 1]) < kMinSegment) {
      throw GeometryError("polyline segment " + std::to_string(i) + " shorter than 1e-6 m");
    }
  }
}

struct Sides
{
  std::vector<Point2> left;
  std::vector<Point2> right;
};

std::vector<Point2> segment_normals(const std::vector<Point2> & v)
{
  std::vector<Point2> normals;
  normals.reserve(v.size() - 1);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    normals.push_back(left_normal(v[i], v[i + 1]));
  }
  return normals;
}

Sides offset_sides(const std::vector<Point2> & v, const std::vector<Point2> & normals, double h)
{
  Sides s;
  const Point2 n_first = normals.front();
  s.left.push_back(v[0] + h * n_first);
  s.right.push_back(v[0] - h * n_first);
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const Joint j = joint_at(v, normals, i, h);
    s.left.insert(s.left.end(), j.left.begin(), j.left.end());
    s.right.insert(s.right.end(), j.right.begin(), j.right.end());
  }
  const std::size_t n = v.size();
  const Point2 n_last = normals.back();
  s.left.push_back(v[n - 1] + h * n_last);
  s.right.push_back(v[n - 1] - h * n_last);
  return s;
}

Polygon ring_from_sides(Sides s)
{
  std::vector<Point2> ring = std::move(s.right);
  ring.insert(ring.end(), s.left.rbegin(), s.left.rend());
  return Polygon(std::move(ring));
}

void check_width(double width)
{
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw GeometryError("buffer width must be positive, got " + std::to_string(width));
  }
}

}  // namespace

Polygon buffer_centerline(const Polyline & line, double width)
{
  check_width(width);
  check_segments(line.vertices());
  const auto & v = line.vertices();
  return ring_from_sides(offset_sides(v, segment_normals(v), 0.5 * width));
}

Polygon buffer_station_range(const Polyline & line, double s0, double s1, double width)
{
  check_width(width);
  const Polyline sub = slice_by_station(line, s0, s1);
  check_segments(sub.vertices());
  const double h = 0.5 * width;
  const auto & v = line.vertices();
  const auto & st = line.stations();
  const std::vector<Point2> parent_normals = segment_normals(v);

  // each piece of the slice lies on one parent segment; reuse its normal so that
  // neighbouring slices share their cap points exactly
  const auto & sv = sub.vertices();
  const auto & sst = sub.stations();
  std::vector<Point2> normals;
  normals.reserve(sv.size() - 1);
  for (std::size_t k = 0; k + 1 < sv.size(); ++k) {
    const double mid = s0 + 0.5 * (sst[k] + sst[k + 1]);
    normals.push_back(parent_normals[line.segment_at(mid)]);
  }
  Sides sides = offset_sides(sv, normals, h);
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const bool at_start = std::abs(st[i] - s0) <= kVertexSnap;
    const bool at_end = std::abs(st[i] - s1) <= kVertexSnap;
    if (!at_start && !at_end) {
      continue;
    }
    const Joint j = joint_at(v, parent_normals, i, h);
    if (!j.mitered || j.left.size() != 1 || j.right.size() != 1) {
      continue;
    }
    if (at_start) {
      sides.left.front() = j.left.front();
      sides.right.front() = j.right.front();
    }
    if (at_end) {
      sides.left.back() = j.left.front();
      sides.right.back() = j.right.front();
    }
  }
  return ring_from_sides(std::move(sides));
}

}  // namespace lanectx::geom
