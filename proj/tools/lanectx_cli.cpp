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

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace
{
using namespace lanectx;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitDivergence = 3;

void write_file(const std::string & path, const std::string & content)
{
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
}

std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw pipeline::ScenarioError("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_summary(const pipeline::Report & report)
{
  std::cerr << "cells " << report.cells.size();
  for (auto c : {characterize::SpaceClass::Free, characterize::SpaceClass::Occupied,
                 characterize::SpaceClass::Hidden, characterize::SpaceClass::Unknown,
                 characterize::SpaceClass::Safety, characterize::SpaceClass::Protected}) {
    std::cerr << ' ' << characterize::to_string(c) << '=' << report.count(c);
  }
  std::cerr << '\n';
}

int cmd_run(const std::string & scenario_path, const std::string & out, const std::string & svg, int threads)
{
  const pipeline::Scenario sc = pipeline::load_scenario_file(scenario_path);
  const pipeline::RunResult r = pipeline::run(sc, {threads, false});
  const std::string text = pipeline::format_report(r.report);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
  if (!svg.empty()) {
    write_file(svg, pipeline::render_svg(pipeline::parse_report(text), sc));
  }
  print_summary(r.report);
  return kExitOk;
}

int cmd_oracle(const std::string & scenario_path, std::size_t samples, std::uint64_t seed, int threads)
{
  const pipeline::Scenario sc = pipeline::load_scenario_file(scenario_path);
  const pipeline::OracleReport o = pipeline::oracle_check(sc, samples, seed, threads);
  std::printf(
    "cells %zu margin %zu agreement %.4f max_deviation %.4f (%s #%d)\n", o.cells, o.margin_cells,
    o.agreement(), o.max_deviation, o.worst_lane.str().c_str(), o.worst_index);
  for (const auto & m : o.mismatches) {
    std::printf(
      "mismatch %s %d engine=%s oracle=%s%s\n", m.lane_id.str().c_str(), m.index,
      std::string(characterize::to_string(m.engine_label)).c_str(),
      std::string(characterize::to_string(m.oracle_label)).c_str(),
      m.within_margin ? " (margin)" : "");
  }
  std::printf("%s\n", o.passed() ? "PASS" : "FAIL");
  return o.passed() ? kExitOk : kExitDivergence;
}

int cmd_render(const std::string & report_path, const std::string & scenario_path, const std::string & out)
{
  const pipeline::Scenario sc = pipeline::load_scenario_file(scenario_path);
  const auto rows = pipeline::parse_report(read_file(report_path));
  write_file(out, pipeline::render_svg(rows, sc));
  return kExitOk;
}

int cmd_validate_map(const std::string & path)
{
  const map::RoadMap m = map::load_map_file(path);
  std::printf("ok: %zu lanes\n", m.lanes().size());
  return kExitOk;
}

int cmd_bench(const std::string & scenario_path, std::size_t iters, int threads)
{
  const pipeline::Scenario sc = pipeline::load_scenario_file(scenario_path);
  const pipeline::BenchReport b = pipeline::bench(sc, iters, threads);
  std::printf("iterations %zu cells %zu\n", b.iterations, b.cells);
  std::printf("%-18s %12s %12s\n", "stage", "median_us", "p95_us");
  for (const auto & s : b.stages) {
    std::printf("%-18s %12.1f %12.1f\n", s.stage.c_str(), s.median_us, s.p95_us);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"lane-context space characterization"};
  app.require_subcommand(1);

  std::string scenario, report, out, svg, map_path;
  std::size_t samples = 2000;
  std::uint64_t seed = 1;
  std::size_t iters = 100;
  int threads = 1;

  auto * run = app.add_subcommand("run", "label the lane grid of a scenario");
  run->add_option("scenario", scenario)->required();
  run->add_option("-o,--output", out, "report file (default: stdout)");
  run->add_option("--svg", svg, "also render to this SVG file");
  run->add_option("--threads", threads)->check(CLI::PositiveNumber);

  auto * oracle = app.add_subcommand("oracle-check", "compare cell fractions with point sampling");
  oracle->add_option("scenario", scenario)->required();
  oracle->add_option("--samples", samples)->check(CLI::Range(100, 10000000));
  oracle->add_option("--seed", seed);
  oracle->add_option("--threads", threads)->check(CLI::PositiveNumber);

  auto * render = app.add_subcommand("render", "render a report file as SVG");
  render->add_option("report", report)->required();
  render->add_option("scenario", scenario)->required();
  render->add_option("-o,--output", out)->required();

  auto * validate = app.add_subcommand("validate-map", "check a lane map file");
  validate->add_option("map", map_path)->required();

  auto * bench = app.add_subcommand("bench", "time the pipeline stages");
  bench->add_option("scenario", scenario)->required();
  bench->add_option("--iters", iters)->check(CLI::Range(10, 1000000));
  bench->add_option("--threads", threads)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*run) {
      return cmd_run(scenario, out, svg, threads);
    }
    if (*oracle) {
      return cmd_oracle(scenario, samples, seed, threads);
    }
    if (*render) {
      return cmd_render(report, scenario, out);
    }
    if (*validate) {
      return cmd_validate_map(map_path);
    }
    if (*bench) {
      return cmd_bench(scenario, iters, threads);
    }
  } catch (const pipeline::ScenarioError & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const map::MapError & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
