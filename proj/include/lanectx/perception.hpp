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

#ifndef LANECTX__PERCEPTION_HPP_
#define LANECTX__PERCEPTION_HPP_

#include "lanectx/geom.hpp"
#include "lanectx/map_model.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lanectx::perception
{

class InvalidSceneError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct SensorSpec
{
  double range{100.0};
  int arc_segments{64};
};

struct ObjectState
{
  std::string id;
  geom::Point2 center;
  double heading{0.0};  // radians, counter-clockwise from +x
  double length{0.0};
  double width{0.0};
  double speed{0.0};  // m/s along heading
};

struct EgoState
{
  geom::Point2 position;
  double heading{0.0};
  double speed{0.0};
  map::Route route;
  double route_station{0.0};
};

/// Operational-level partition of the field of view. The unknown set is the
/// implicit complement of free ∪ occupied ∪ hidden and is never materialized.
struct WorldDecomposition
{
  static constexpr bool unknown_is_complement = true;

  geom::RegionSet fov;
  geom::RegionSet free;
  geom::RegionSet occupied;
  geom::RegionSet hidden;
};

void validate(const SensorSpec & spec);
void validate(const ObjectState & obj);

/// Oriented length x width rectangle, long axis along the heading.
geom::Polygon footprint(const ObjectState & obj);

geom::Polygon field_of_view(geom::Point2 origin, const SensorSpec & spec);

/// Objects whose footprint overlaps the field of view.
std::vector<ObjectState> detected_objects(
  std::span<const ObjectState> objects, const geom::RegionSet & fov);

WorldDecomposition decompose(
  const EgoState & ego, const SensorSpec & spec, std::span<const ObjectState> objects);

}  // namespace lanectx::perception

#endif  // LANECTX__PERCEPTION_HPP_
