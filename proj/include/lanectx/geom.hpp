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

#ifndef LANECTX__GEOM_HPP_
#define LANECTX__GEOM_HPP_

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lanectx::geom
{

/// Grid used to snap the vertices of every boolean-operation result.
inline constexpr double kSnapGrid = 1e-9;

/// Pieces smaller than this (m^2) are dropped from boolean results.
inline constexpr double kSliverArea = 1e-12;

class GeometryError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct Point2
{
  double x{0.0};
  double y{0.0};

  friend bool operator==(const Point2 &, const Point2 &) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double k, Point2 a) { return {k * a.x, k * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Box
{
  double min_x{0.0};
  double min_y{0.0};
  double max_x{0.0};
  double max_y{0.0};

  bool intersects(const Box & o) const
  {
    return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
  }
  double area() const { return (max_x - min_x) * (max_y - min_y); }
};

/// Open polyline with cumulative arc-length stations.
class Polyline
{
public:
  /// Throws GeometryError on fewer than two vertices, non-finite coordinates or
  /// repeated consecutive vertices.
  explicit Polyline(std::vector<Point2> vertices);

  const std::vector<Point2> & vertices() const { return vertices_; }
  const std::vector<double> & stations() const { return stations_; }
  double length() const { return stations_.back(); }
  std::size_t segment_count() const { return vertices_.size() - 1; }

  /// Point at arc length s (clamped to [0, length]).
  Point2 point_at(double s) const;
  /// Unit travel direction of the segment containing s (the earlier one at a vertex).
  Point2 direction_at(double s) const;
  /// Index of the segment containing station s.
  std::size_t segment_at(double s) const;

private:
  std::vector<Point2> vertices_;
  std::vector<double> stations_;
};

/// Simple polygon without holes. The ring is stored counter-clockwise and closed
/// implicitly; the constructor reorients clockwise input.
class Polygon
{
public:
  explicit Polygon(std::vector<Point2> ring);

  const std::vector<Point2> & ring() const { return ring_; }
  double area() const { return area_; }
  const Box & bbox() const { return bbox_; }

private:
  std::vector<Point2> ring_;
  double area_{0.0};
  Box bbox_;
};

/// A set of pairwise interior-disjoint simple polygons. May be empty.
class RegionSet
{
public:
  RegionSet() = default;
  explicit RegionSet(Polygon p);
  /// Caller guarantees the members are pairwise interior-disjoint.
  explicit RegionSet(std::vector<Polygon> polygons);

  const std::vector<Polygon> & polygons() const { return polygons_; }
  bool empty() const { return polygons_.empty(); }
  double area() const;
  Box bbox() const;

private:
  std::vector<Polygon> polygons_;
};

double signed_area(std::span<const Point2> ring);
double area(const Polygon & p);
double area(const RegionSet & r);

RegionSet intersect(const RegionSet & a, const RegionSet & b);
RegionSet subtract(const RegionSet & a, const RegionSet & b);
RegionSet unite(const RegionSet & a, const RegionSet & b);
/// Union of many polygons (balanced pairwise merge).
RegionSet unite_all(std::span<const Polygon> polygons);

/// Area of p ∩ r without materializing the intersection as a RegionSet.
double intersection_area(const Polygon & p, const RegionSet & r);
/// True when the interiors of a and b overlap by more than kSliverArea.
bool interiors_intersect(const Polygon & a, const Polygon & b);

/// Closed-set membership: boundary points count as inside.
bool contains_point(const Polygon & p, Point2 pt);
bool contains_point(const RegionSet & r, Point2 pt);

/// True when the ring has no self-intersections (and at least three vertices).
bool is_simple(const Polygon & p);

/// Lane polygon: all points within width/2 laterally of the polyline, mitered
/// joins (limit 4x half-width, bevel beyond), flat end caps.
Polygon buffer_centerline(const Polyline & line, double width);

/// buffer_centerline(slice_by_station(line, s0, s1), width), except that an end
/// landing on an interior vertex of `line` is capped along that vertex's miter so
/// that consecutive slices tile buffer_centerline(line, width).
Polygon buffer_station_range(const Polyline & line, double s0, double s1, double width);

struct StationOffset
{
  double station{0.0};
  double offset{0.0};  // lateral component, positive left of the travel direction
};

StationOffset station_offset(const Polyline & line, Point2 pt);

Polyline slice_by_station(const Polyline & line, double s0, double s1);

/// Regular polygon inscribed in the circle (center, radius), first vertex at angle 0.
Polygon regular_polygon(Point2 center, double radius, int segments);

/// Points of the inscribed `arc_segments`-gon around origin whose sight line from
/// origin does not enter any occluder interior.
RegionSet visibility_region(
  Point2 origin, double range, int arc_segments, std::span<const Polygon> occluders);

}  // namespace lanectx::geom

#endif  // LANECTX__GEOM_HPP_
