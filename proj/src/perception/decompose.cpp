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

#include "lanectx/perception.hpp"

#include <cmath>
#include <utility>

namespace lanectx::perception
{

void validate(const SensorSpec & spec)
{
  if (!(spec.range > 0.0) || !std::isfinite(spec.range)) {
    throw std::invalid_argument("sensor range must be positive");
  }
  if (spec.arc_segments < 8) {
    throw std::invalid_argument("sensor arc_segments must be at least 8");
  }
}

void validate(const ObjectState & obj)
{
  if (!(obj.length > 0.0) || !(obj.width > 0.0)) {
    throw std::invalid_argument("object '" + obj.id + "' must have positive length and width");
  }
  if (!geom::is_finite(obj.center) || !std::isfinite(obj.heading)) {
    throw std::invalid_argument("object '" + obj.id + "' has a non-finite pose");
  }
  if (!(obj.speed >= 0.0) || !std::isfinite(obj.speed)) {
    throw std::invalid_argument("object '" + obj.id + "' must have a finite speed >= 0");
  }
}

geom::Polygon footprint(const ObjectState & obj)
{
  validate(obj);
  const double c = std::cos(obj.heading);
  const double s = std::sin(obj.heading);
  const double hl = 0.5 * obj.length;
  const double hw = 0.5 * obj.width;
  std::vector<geom::Point2> ring;
  for (const auto & [u, v] : {std::pair{-hl, -hw}, {hl, -hw}, {hl, hw}, {-hl, hw}}) {
    ring.push_back({obj.center.x + c * u - s * v, obj.center.y + s * u + c * v});
  }
  return geom::Polygon(std::move(ring));
}

geom::Polygon field_of_view(geom::Point2 origin, const SensorSpec & spec)
{
  validate(spec);
  return geom::regular_polygon(origin, spec.range, spec.arc_segments);
}

std::vector<ObjectState> detected_objects(
  std::span<const ObjectState> objects, const geom::RegionSet & fov)
{
  std::vector<ObjectState> out;
  for (const auto & o : objects) {
    if (geom::intersection_area(footprint(o), fov) > geom::kSliverArea) {
      out.push_back(o);
    }
  }
  return out;
}

WorldDecomposition decompose(
  const EgoState & ego, const SensorSpec & spec, std::span<const ObjectState> objects)
{
  WorldDecomposition w;
  w.fov = geom::RegionSet(field_of_view(ego.position, spec));

  std::vector<geom::Polygon> prints;
  prints.reserve(objects.size());
  for (const auto & o : objects) {
    prints.push_back(footprint(o));
    if (geom::contains_point(prints.back(), ego.position)) {
      throw InvalidSceneError("ego position lies inside object '" + o.id + "'");
    }
  }
  w.occupied = geom::intersect(geom::unite_all(prints), w.fov);
  const geom::RegionSet visible =
    geom::visibility_region(ego.position, spec.range, spec.arc_segments, prints);
  w.free = geom::subtract(visible, w.occupied);
  w.hidden = geom::subtract(w.fov, geom::unite(w.free, w.occupied));
  return w;
}

}  // namespace lanectx::perception
