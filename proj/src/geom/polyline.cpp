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
#include <limits>
#include <utility>

namespace lanectx::geom
{
namespace
{
// Slice ends closer than this to a vertex station snap onto the vertex.
constexpr double kVertexSnap = 1e-9;
}  // namespace

Polyline::Polyline(std::vector<Point2> vertices) : vertices_(std::move(vertices))
{
  if (vertices_.size() < 2) {
    throw GeometryError("polyline needs at least two vertices");
  }
  stations_.reserve(vertices_.size());
  stations_.push_back(0.0);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i])) {
      throw GeometryError("polyline vertex " + std::to_string(i) + " is not finite");
    }
    if (i == 0) {
      continue;
    }
    const double seg = distance(vertices_[i - 1], vertices_[i]);
    if (!(seg > 0.0)) {
      throw GeometryError("polyline has repeated vertex at index " + std::to_string(i));
    }
    stations_.push_back(stations_.back() + seg);
  }
}

std::size_t Polyline::segment_at(double s) const
{
  // first segment whose end station is >= s
  const auto it = std::lower_bound(stations_.begin() + 1, stations_.end(), s);
  if (it == stations_.end()) {
    return segment_count() - 1;
  }
  return static_cast<std::size_t>(std::distance(stations_.begin(), it)) - 1;
}

Point2 Polyline::point_at(double s) const
{
  s = std::clamp(s, 0.0, length());
  const std::size_t i = segment_at(s);
  const double seg = stations_[i + 1] - stations_[i];
  const double t = (s - stations_[i]) / seg;
  if (t <= 0.0) {
    return vertices_[i];
  }
  if (t >= 1.0) {
    return vertices_[i + 1];
  }
  return vertices_[i] + t * (vertices_[i + 1] - vertices_[i]);
}

Point2 Polyline::direction_at(double s) const
{
  const std::size_t i = segment_at(std::clamp(s, 0.0, length()));
  const Point2 d = vertices_[i + 1] - vertices_[i];
  return (1.0 / norm(d)) * d;
}

StationOffset station_offset(const Polyline & line, Point2 pt)
{
  const auto & v = line.vertices();
  const auto & st = line.stations();
  double best_d2 = std::numeric_limits<double>::infinity();
  StationOffset best;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const Point2 d = v[i + 1] - v[i];
    const double len2 = dot(d, d);
    const double t = std::clamp(dot(pt - v[i], d) / len2, 0.0, 1.0);
    const Point2 foot = v[i] + t * d;
    const Point2 r = pt - foot;
    const double d2 = dot(r, r);
    // strict comparison: on ties the smaller station wins
    if (d2 < best_d2) {
      best_d2 = d2;
      const double seg_len = st[i + 1] - st[i];
      best.station = st[i] + t * seg_len;
      // lateral component; equals the signed distance unless the foot is clamped
      best.offset = cross(d, r) / std::sqrt(len2);
    }
  }
  return best;
}

Polyline slice_by_station(const Polyline & line, double s0, double s1)
{
  const double len = line.length();
  if (!(s0 >= 0.0) || !(s1 <= len) || !(s0 < s1)) {
    throw GeometryError(
      "invalid station interval [" + std::to_string(s0) + ", " + std::to_string(s1) +
      "] for polyline of length " + std::to_string(len));
  }
  const auto & v = line.vertices();
  const auto & st = line.stations();

  std::vector<Point2> out;
  out.push_back(line.point_at(s0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (st[i] > s0 + kVertexSnap && st[i] < s1 - kVertexSnap) {
      out.push_back(v[i]);
    }
  }
  const Point2 end = line.point_at(s1);
  if (end != out.back()) {
    out.push_back(end);
  }
  // snap ends that coincide with vertices onto the vertex itself
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(st[i] - s0) <= kVertexSnap) {
      out.front() = v[i];
    }
    if (std::abs(st[i] - s1) <= kVertexSnap) {
      out.back() = v[i];
    }
  }
  return Polyline(std::move(out));
}

}  // namespace lanectx::geom
