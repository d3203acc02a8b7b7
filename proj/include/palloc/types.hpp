#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace palloc {

using Coord = std::int64_t;
using Total = std::int64_t;

/// Thrown when two points or point sets disagree on dimension.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an allocator is asked for more processors than are free.
struct InsufficientProcessors : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an exhaustive search would exceed its configured budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown on malformed input (JSON instances, SWF traces).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A grid position: one signed integer coordinate per axis.
struct Point {
  std::vector<Coord> coords;

  int dim() const { return static_cast<int>(coords.size()); }
  Coord operator[](int axis) const { return coords[static_cast<std::size_t>(axis)]; }

  friend auto operator<=>(const Point&, const Point&) = default;
};

/// An ordered list of points sharing one dimension. Duplicates are allowed;
/// multiplicity is expressed by repetition.
struct PointMultiset {
  std::vector<Point> points;
  int dim = 0;

  std::int64_t size() const { return static_cast<std::int64_t>(points.size()); }
  bool empty() const { return points.empty(); }

  friend bool operator==(const PointMultiset&, const PointMultiset&) = default;
};

/// Builds a multiset from points, inferring the dimension and rejecting mixed
/// dimensions. The two-argument form allows empty sets of a known dimension.
PointMultiset make_multiset(std::vector<Point> points);
PointMultiset make_multiset(std::vector<Point> points, int dim);

/// Result of an allocator or exact solver: the chosen points plus their total
/// pairwise L1 distance and algorithm metadata.
struct Allocation {
  PointMultiset selected;
  Total total_distance = 0;
  std::string algorithm;
  std::optional<Point> center;  // winning median / shell center, if any
  std::optional<Total> sigma;   // mc1x1 shell-number sum
};

}  // namespace palloc
