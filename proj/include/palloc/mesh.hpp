#pragma once

#include <cstdint>
#include <vector>

#include "palloc/types.hpp"

namespace palloc {

/// A d-dimensional grid of processors with an occupancy mask.
class Mesh {
 public:
  Mesh() = default;
  explicit Mesh(std::vector<Coord> extents);

  /// Builds a mesh with the given occupied cells. Out-of-bounds cells are
  /// rejected; duplicates collapse.
  static Mesh from_occupied(std::vector<Coord> extents, const std::vector<Point>& occupied);

  int dim() const { return static_cast<int>(extents_.size()); }
  const std::vector<Coord>& extents() const { return extents_; }
  std::int64_t size() const { return static_cast<std::int64_t>(mask_.size()); }
  std::int64_t occupied_count() const { return occupied_count_; }
  std::int64_t free_count() const { return size() - occupied_count_; }

  bool in_bounds(const Point& p) const;
  bool occupied(const Point& p) const;
  void set_occupied(const Point& p, bool value);

  /// Occupied cells in lexicographic order.
  std::vector<Point> occupied_points() const;

  /// Free cells in lexicographic order.
  PointMultiset free_points() const;

 private:
  std::vector<Coord> extents_;
  std::vector<std::uint8_t> mask_;
  std::int64_t occupied_count_ = 0;

  std::int64_t index(const Point& p) const;
  Point point_at(std::int64_t idx) const;
};

}  // namespace palloc
