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

#include "lanectx/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace lanectx::pipeline
{
namespace
{

std::string format_row(const ReportRow & r)
{
  char buf[512];
  std::snprintf(
    buf, sizeof(buf), "%s %d %s %d %.6f %.6f %s %.6f %.6f %.6f %.6f %.6f %.6f\n",
    r.lane_id.str().c_str(), r.order, std::string(context::to_string(r.interaction)).c_str(),
    r.index, r.s0, r.s1, std::string(characterize::to_string(r.label)).c_str(), r.distance_to_ego,
    r.fractions.free, r.fractions.occupied, r.fractions.hidden, r.fractions.safety,
    r.fractions.protection);
  return buf;
}

[[noreturn]] void bad_line(std::size_t line, const std::string & what)
{
  throw ScenarioError("report line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<ReportRow> report_rows(const Report & report)
{
  std::vector<ReportRow> rows;
  rows.reserve(report.cells.size());
  for (const auto & c : report.cells) {
    rows.push_back(ReportRow{
      c.cell.lane_id, c.cell.order, c.cell.interaction, c.cell.index, c.cell.s0, c.cell.s1, c.label,
      c.cell.distance_to_ego, c.fractions});
  }
  return rows;
}

std::string format_report(const Report & report)
{
  std::string out;
  for (const auto & r : report_rows(report)) {
    out += format_row(r);
  }
  return out;
}

std::vector<ReportRow> parse_report(std::string_view text)
{
  std::vector<ReportRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) {
      continue;
    }
    std::istringstream ls(line);
    std::string lane, interaction, label, extra;
    ReportRow r;
    auto & f = r.fractions;
    if (!(ls >> lane >> r.order >> interaction >> r.index >> r.s0 >> r.s1 >> label >>
          r.distance_to_ego >> f.free >> f.occupied >> f.hidden >> f.safety >> f.protection)) {
      bad_line(n, "expected 13 fields");
    }
    if (ls >> extra) {
      bad_line(n, "unexpected trailing field '" + extra + "'");
    }
    const auto it = context::interaction_from_string(interaction);
    if (!it) {
      bad_line(n, "unknown interaction '" + interaction + "'");
    }
    const auto lb = characterize::space_class_from_string(label);
    if (!lb) {
      bad_line(n, "unknown label '" + label + "'");
    }
    for (double v : {f.free, f.occupied, f.hidden, f.safety, f.protection}) {
      if (!(v >= 0.0 && v <= 1.0)) {
        bad_line(n, "fraction outside [0, 1]");
      }
    }
    if (!std::isfinite(r.s0) || !std::isfinite(r.s1) || !(r.s1 > r.s0) || r.order < 1) {
      bad_line(n, "invalid cell extent or order");
    }
    r.lane_id = map::LaneId(lane);
    r.interaction = *it;
    r.label = *lb;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace lanectx::pipeline
