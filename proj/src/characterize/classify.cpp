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

#include "lanectx/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>

namespace lanectx::characterize
{

std::string_view to_string(SpaceClass c)
{
  switch (c) {
    case SpaceClass::Free:
      return "Free";
    case SpaceClass::Occupied:
      return "Occupied";
    case SpaceClass::Hidden:
      return "Hidden";
    case SpaceClass::Unknown:
      return "Unknown";
    case SpaceClass::Safety:
      return "Safety";
    case SpaceClass::Protected:
      return "Protected";
  }
  return "?";
}

std::optional<SpaceClass> space_class_from_string(std::string_view s)
{
  for (auto c : {SpaceClass::Free, SpaceClass::Occupied, SpaceClass::Hidden, SpaceClass::Unknown,
                 SpaceClass::Safety, SpaceClass::Protected}) {
    if (to_string(c) == s) {
      return c;
    }
  }
  return std::nullopt;
}

void validate(const Thresholds & th)
{
  const auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(th.eps_occ) || !unit(th.tau_free) || !unit(th.tau_overlay)) {
    throw std::invalid_argument("thresholds must lie in [0, 1]");
  }
}

SpaceClass decide_label(const Fractions & f, bool footprint_hit, const Thresholds & th)
{
  if (f.occupied > th.eps_occ || footprint_hit) {
    return SpaceClass::Occupied;
  }
  if (f.free >= th.tau_free) {
    return SpaceClass::Free;
  }
  if (f.protection >= th.tau_overlay) {
    return SpaceClass::Protected;
  }
  if (f.safety >= th.tau_overlay) {
    return SpaceClass::Safety;
  }
  if (f.hidden > th.eps_occ) {
    return SpaceClass::Hidden;
  }
  return SpaceClass::Unknown;
}

std::vector<CellReport> classify_cells(
  const context::LaneGrid & grid, const StarredSets & starred, const geom::RegionSet & safety,
  const geom::RegionSet & protection, std::span<const perception::ObjectState> objects,
  const ClassifyOptions & options)
{
  validate(options.thresholds);
  std::vector<geom::Polygon> prints;
  prints.reserve(objects.size());
  for (const auto & o : objects) {
    prints.push_back(perception::footprint(o));
  }

  std::vector<std::optional<CellReport>> slots(grid.cells.size());
  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const context::Cell & cell = grid.cells[i];
      const double a = cell.polygon.area();
      const auto frac = [&](const geom::RegionSet & r) {
        return std::clamp(geom::intersection_area(cell.polygon, r) / a, 0.0, 1.0);
      };
      Fractions f;
      f.free = frac(starred.free);
      f.occupied = frac(starred.occupied);
      f.hidden = frac(starred.hidden);
      f.safety = frac(safety);
      f.protection = frac(protection);
      const bool hit = std::any_of(prints.begin(), prints.end(), [&](const geom::Polygon & p) {
        return geom::interiors_intersect(p, cell.polygon);
      });
      slots[i] = CellReport{cell, decide_label(f, hit, options.thresholds), f};
    }
  };

  const std::size_t n = slots.size();
  const std::size_t threads =
    std::min(static_cast<std::size_t>(std::max(options.threads, 1)), std::max<std::size_t>(n, 1));
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t b = std::min(n, t * chunk);
      const std::size_t e = std::min(n, b + chunk);
      pool.emplace_back([&, t, b, e] {
        try {
          work(b, e);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto & th : pool) {
      th.join();
    }
    for (const auto & err : errors) {
      if (err) {
        std::rethrow_exception(err);
      }
    }
  }
  std::vector<CellReport> out;
  out.reserve(n);
  for (auto & s : slots) {
    out.push_back(std::move(*s));
  }
  std::sort(out.begin(), out.end(), [](const CellReport & x, const CellReport & y) {
    return std::pair(x.cell.lane_id, x.cell.index) < std::pair(y.cell.lane_id, y.cell.index);
  });
  return out;
}

}  // namespace lanectx::characterize
