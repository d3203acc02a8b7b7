#include "palloc/mesh.hpp"

#include <stdexcept>

namespace palloc {

Mesh::Mesh(std::vector<Coord> extents) : extents_(std::move(extents)) {
  if (extents_.empty()) throw std::invalid_argument("Mesh: at least one axis required");
  std::int64_t n = 1;
  for (Coord e : extents_) {
    if (e < 1) throw std::invalid_argument("Mesh: extents must be positive");
    if (n > (std::int64_t{1} << 40) / e) throw std::invalid_argument("Mesh: too large");
    n *= e;
  }
  mask_.assign(static_cast<std::size_t>(n), 0);
}

Mesh Mesh::from_occupied(std::vector<Coord> extents, const std::vector<Point>& occupied) {
  Mesh m(std::move(extents));
  for (const Point& p : occupied) {
    if (!m.in_bounds(p)) throw std::invalid_argument("Mesh: occupied cell out of bounds");
    m.set_occupied(p, true);
  }
  return m;
}

bool Mesh::in_bounds(const Point& p) const {
  if (p.dim() != dim()) return false;
  for (int a = 0; a < dim(); ++a) {
    if (p[a] < 0 || p[a] >= extents_[static_cast<std::size_t>(a)]) return false;
  }
  return true;
}

std::int64_t Mesh::index(const Point& p) const {
  std::int64_t idx = 0;
  for (int a = 0; a < dim(); ++a) {
    idx = idx * extents_[static_cast<std::size_t>(a)] + p[a];
  }
  return idx;
}

Point Mesh::point_at(std::int64_t idx) const {
  Point p;
  p.coords.resize(extents_.size());
  for (int a = dim() - 1; a >= 0; --a) {
    const Coord e = extents_[static_cast<std::size_t>(a)];
    p.coords[static_cast<std::size_t>(a)] = idx % e;
    idx /= e;
  }
  return p;
}

bool Mesh::occupied(const Point& p) const {
  if (!in_bounds(p)) throw std::invalid_argument("Mesh: cell out of bounds");
  return mask_[static_cast<std::size_t>(index(p))] != 0;
}

void Mesh::set_occupied(const Point& p, bool value) {
  if (!in_bounds(p)) throw std::invalid_argument("Mesh: cell out of bounds");
  std::uint8_t& cell = mask_[static_cast<std::size_t>(index(p))];
  occupied_count_ += (value ? 1 : 0) - (cell ? 1 : 0);
  cell = value ? 1 : 0;
}

std::vector<Point> Mesh::occupied_points() const {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(occupied_count_));
  for (std::int64_t i = 0; i < size(); ++i) {
    if (mask_[static_cast<std::size_t>(i)]) out.push_back(point_at(i));
  }
  return out;
}

PointMultiset Mesh::free_points() const {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(free_count()));
  for (std::int64_t i = 0; i < size(); ++i) {
    if (!mask_[static_cast<std::size_t>(i)]) out.push_back(point_at(i));
  }
  return make_multiset(std::move(out), dim());
}

}  // namespace palloc
