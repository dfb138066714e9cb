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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace lanectx::pipeline
{
namespace
{
constexpr std::size_t kWarmups = 3;

// Nearest-rank percentile of an unsorted sample.
double percentile(std::vector<double> v, double q)
{
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

double median(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BenchReport bench(const Scenario & scenario, std::size_t iterations, int threads)
{
  if (iterations < 10) {
    throw std::invalid_argument("bench needs at least 10 iterations");
  }
  for (std::size_t i = 0; i < kWarmups; ++i) {
    run(scenario, {threads, false});
  }
  std::vector<std::vector<double>> samples(kStages.size() + 1);
  BenchReport out;
  out.iterations = iterations;
  for (std::size_t it = 0; it < iterations; ++it) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult r = run(scenario, {threads, false});
    const std::chrono::duration<double, std::micro> total = std::chrono::steady_clock::now() - t0;
    out.cells = r.report.cells.size();
    for (const auto & t : r.report.timings) {
      const auto k = static_cast<std::size_t>(
        std::find(kStages.begin(), kStages.end(), t.stage) - kStages.begin());
      samples[k].push_back(t.microseconds);
    }
    samples.back().push_back(total.count());
  }
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const std::string name = k < kStages.size() ? std::string(kStages[k]) : "total";
    out.stages.push_back({name, median(samples[k]), percentile(samples[k], 0.95)});
  }
  return out;
}

}  // namespace lanectx::pipeline
