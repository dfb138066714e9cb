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

#ifndef LANECTX__CHARACTERIZE_HPP_
#define LANECTX__CHARACTERIZE_HPP_

#include "lanectx/context.hpp"
#include "lanectx/geom.hpp"
#include "lanectx/map_model.hpp"
#include "lanectx/perception.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lanectx::characterize
{

using context::LaneId;

enum class SpaceClass { Free, Occupied, Hidden, Unknown, Safety, Protected };

std::string_view to_string(SpaceClass c);
std::optional<SpaceClass> space_class_from_string(std::string_view s);

struct SafetyParams
{
  double a_brake{-6.0};  // m/s^2, negative
  double min_block_gap{1.0};  // m
};

void validate(const SafetyParams & params);

struct Thresholds
{
  double eps_occ{1e-3};
  double tau_free{0.99};
  double tau_overlay{0.5};
};

void validate(const Thresholds & th);

struct Fractions
{
  double free{0.0};
  double occupied{0.0};
  double hidden{0.0};
  double safety{0.0};
  double protection{0.0};
};

struct CellReport
{
  context::Cell cell;
  SpaceClass label{SpaceClass::Unknown};
  Fractions fractions;
};

/// World regions restricted to the area of interest.
struct StarredSets
{
  geom::RegionSet free;
  geom::RegionSet occupied;
  geom::RegionSet hidden;
  geom::RegionSet unknown;
};

/// Lateral slack beyond a lane's half-width for assigning an object to it.
inline constexpr double kAssignMargin = 0.5;

StarredSets restrict_to_aoi(const perception::WorldDecomposition & world, const geom::RegionSet & aoi);

double safety_distance(double speed, const SafetyParams & params);

/// Grid lanes whose centerline passes within half-width + kAssignMargin of the object center.
std::vector<LaneId> assigned_lanes(
  const perception::ObjectState & obj, const context::LaneGrid & grid, const map::RoadMap & map);

geom::RegionSet safety_region(
  const perception::ObjectState & obj, const context::LaneGrid & grid, const map::RoadMap & map,
  const SafetyParams & params);

/// An object that closes an order-1 lane to traffic from behind it.
struct Blockage
{
  std::string object_id;
  LaneId lane;
  double min_station{0.0};  // on `lane`
  double lateral_span{0.0};
};

std::vector<Blockage> blockages(
  std::span<const perception::ObjectState> objects,
  std::span<const context::InteractingLane> interacting, const context::LaneGrid & grid,
  const map::RoadMap & map, const SafetyParams & params);

geom::RegionSet protected_region(
  std::span<const perception::ObjectState> objects,
  std::span<const context::InteractingLane> interacting, const context::LaneGrid & grid,
  const map::RoadMap & map, const SafetyParams & params);

/// First matching rule: Occupied, Free, Protected, Safety, Hidden, Unknown.
SpaceClass decide_label(const Fractions & f, bool footprint_hit, const Thresholds & th);

struct ClassifyOptions
{
  Thresholds thresholds;
  int threads{1};
};

/// `objects` are the detected objects; their footprints force Occupied on touched cells.
std::vector<CellReport> classify_cells(
  const context::LaneGrid & grid, const StarredSets & starred, const geom::RegionSet & safety,
  const geom::RegionSet & protection, std::span<const perception::ObjectState> objects,
  const ClassifyOptions & options = {});

}  // namespace lanectx::characterize

#endif  // LANECTX__CHARACTERIZE_HPP_
