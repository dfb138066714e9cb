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

#ifndef LANECTX__PIPELINE_HPP_
#define LANECTX__PIPELINE_HPP_

#include "lanectx/characterize.hpp"
#include "lanectx/context.hpp"
#include "lanectx/map_model.hpp"
#include "lanectx/perception.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lanectx::pipeline
{

/// Malformed or out-of-range scenario input.
class ScenarioError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Failure inside one processing stage; what() is prefixed with the stage name.
class StageError : public std::runtime_error
{
public:
  StageError(std::string stage, const std::string & message);
  const std::string & stage() const { return stage_; }

private:
  std::string stage_;
};

struct Params
{
  context::GridParams grid;
  characterize::SafetyParams safety;
  characterize::Thresholds thresholds;
};

struct Scenario
{
  std::filesystem::path map_path;
  map::RoadMap map;
  map::LanePosition ego_start;
  double ego_speed{0.0};
  map::LanePosition goal;
  std::vector<perception::ObjectState> objects;
  perception::SensorSpec sensor;
  Params params;
};

/// `base_dir` resolves a relative "map" path.
Scenario load_scenario(std::string_view document, const std::filesystem::path & base_dir);
Scenario load_scenario_file(const std::filesystem::path & path);

inline constexpr std::array<std::string_view, 8> kStages{
  "route",          "interacting_lanes", "build_lane_grid", "decompose",
  "restrict_to_aoi", "safety_region",    "protected_region", "classify_cells"};

struct StageTiming
{
  std::string_view stage;
  double microseconds{0.0};
};

struct Report
{
  std::vector<characterize::CellReport> cells;  // ordered by (lane_id, index)
  std::array<std::size_t, 6> counts{};  // indexed by SpaceClass
  std::vector<StageTiming> timings;

  std::size_t count(characterize::SpaceClass c) const { return counts[static_cast<std::size_t>(c)]; }
};

std::array<std::size_t, 6> count_labels(const std::vector<characterize::CellReport> & cells);

struct RunOptions
{
  int threads{1};
  bool disable_overlays{false};  // force S = P = empty
};

/// Everything computed by one run, for inspection and rendering.
struct RunResult
{
  Report report;
  perception::EgoState ego;
  std::vector<context::InteractingLane> interacting;
  context::LaneGrid grid;
  perception::WorldDecomposition world;
  characterize::StarredSets starred;
  std::vector<perception::ObjectState> detected;
  std::vector<characterize::Blockage> blockages;
  geom::RegionSet safety;
  geom::RegionSet protection;
};

RunResult run(const Scenario & scenario, const RunOptions & options = {});

/// One parsed line of a report file.
struct ReportRow
{
  map::LaneId lane_id;
  int order{1};
  context::InteractionType interaction{context::InteractionType::Keeping};
  int index{0};
  double s0{0.0};
  double s1{0.0};
  characterize::SpaceClass label{characterize::SpaceClass::Unknown};
  double distance_to_ego{0.0};
  characterize::Fractions fractions;
};

std::string format_report(const Report & report);
std::vector<ReportRow> parse_report(std::string_view text);
std::vector<ReportRow> report_rows(const Report & report);

/// Cell shapes are rebuilt from the rows' printed stations, so a report file and the run
/// that wrote it render identically.
std::string render_svg(const std::vector<ReportRow> & rows, const Scenario & scenario);

struct OracleMismatch
{
  map::LaneId lane_id;
  int index{0};
  characterize::SpaceClass engine_label{characterize::SpaceClass::Unknown};
  characterize::SpaceClass oracle_label{characterize::SpaceClass::Unknown};
  bool within_margin{false};
};

struct OracleReport
{
  std::size_t cells{0};
  std::size_t margin_cells{0};
  std::size_t agreeing{0};  // among cells outside the margin
  double max_deviation{0.0};
  map::LaneId worst_lane;
  int worst_index{0};
  std::vector<OracleMismatch> mismatches;

  double agreement() const;
  bool passed() const;
};

inline constexpr double kOracleDeviationTolerance = 0.03;
inline constexpr double kOracleAgreement = 0.99;
inline constexpr double kOracleMargin = 0.05;

OracleReport oracle_check(
  const Scenario & scenario, std::size_t samples_per_cell, std::uint64_t seed, int threads = 1);

struct StageStats
{
  std::string stage;
  double median_us{0.0};
  double p95_us{0.0};
};

struct BenchReport
{
  std::size_t iterations{0};
  std::size_t cells{0};
  std::vector<StageStats> stages;  // kStages order, then "total"
};

BenchReport bench(const Scenario & scenario, std::size_t iterations, int threads = 1);

}  // namespace lanectx::pipeline

#endif  // LANECTX__PIPELINE_HPP_
