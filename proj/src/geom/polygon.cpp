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
#include <numbers>
#include <utility>

namespace lanectx::geom
{

double signed_area(std::span<const Point2> ring)
{
  if (ring.size() < 3) {
    return 0.0;
  }
  // shoelace relative to the first vertex keeps cancellation small
  const Point2 o = ring[0];
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
    twice += cross(ring[i] - o, ring[i + 1] - o);
  }
  return 0.5 * twice;
}

Polygon::Polygon(std::vector<Point2> ring) : ring_(std::move(ring))
{
  if (ring_.size() >= 2 && ring_.front() == ring_.back()) {
    ring_.pop_back();
  }
  if (ring_.size() < 3) {
    throw GeometryError("polygon needs at least three vertices");
  }
  for (const auto & p : ring_) {
    if (!is_finite(p)) {
      throw GeometryError("polygon vertex is not finite");
    }
  }
  double a = signed_area(ring_);
  if (a == 0.0) {
    throw GeometryError("polygon has zero area");
  }
  if (a < 0.0) {
    std::reverse(ring_.begin(), ring_.end());
    a = -a;
  }
  area_ = a;
  bbox_ = {ring_[0].x, ring_[0].y, ring_[0].x, ring_[0].y};
  for (const auto & p : ring_) {
    bbox_.min_x = std::min(bbox_.min_x, p.x);
    bbox_.min_y = std::min(bbox_.min_y, p.y);
    bbox_.max_x = std::max(bbox_.max_x, p.x);
    bbox_.max_y = std::max(bbox_.max_y, p.y);
  }
}

RegionSet::RegionSet(Polygon p) { polygons_.push_back(std::move(p)); }

RegionSet::RegionSet(std::vector<Polygon> polygons) : polygons_(std::move(polygons)) {}

double RegionSet::area() const
{
  double a = 0.0;
  for (const auto & p : polygons_) {
    a += p.area();
  }
  return a;
}

Box RegionSet::bbox() const
{
  if (polygons_.empty()) {
    return {};
  }
  Box b = polygons_.front().bbox();
  for (const auto & p : polygons_) {
    b.min_x = std::min(b.min_x, p.bbox().min_x);
    b.min_y = std::min(b.min_y, p.bbox().min_y);
    b.max_x = std::max(b.max_x, p.bbox().max_x);
    b.max_y = std::max(b.max_y, p.bbox().max_y);
  }
  return b;
}

double area(const Polygon & p) { return p.area(); }

double area(const RegionSet & r) { return r.area(); }

Polygon regular_polygon(Point2 center, double radius, int segments)
{
  if (!(radius > 0.0)) {
    throw GeometryError("regular polygon radius must be positive");
  }
  if (segments < 3) {
    throw GeometryError("regular polygon needs at least three segments");
  }
  std::vector<Point2> ring;
  ring.reserve(static_cast<std::size_t>(segments));
  for (int k = 0; k < segments; ++k) {
    const double a = 2.0 * std::numbers::pi * k / segments;
    ring.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return Polygon(std::move(ring));
}

}  // namespace lanectx::geom
