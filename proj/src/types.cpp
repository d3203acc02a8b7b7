#include "palloc/types.hpp"

namespace palloc {

PointMultiset make_multiset(std::vector<Point> points) {
  if (points.empty()) {
    throw std::invalid_argument("make_multiset: empty set needs an explicit dimension");
  }
  const int dim = points.front().dim();
  return make_multiset(std::move(points), dim);
}

PointMultiset make_multiset(std::vector<Point> points, int dim) {
  if (dim < 0) throw std::invalid_argument("make_multiset: negative dimension");
  for (const Point& p : points) {
    if (p.dim() != dim) {
      throw DimensionMismatch("make_multiset: points of mixed dimension");
    }
  }
  PointMultiset s;
  s.points = std::move(points);
  s.dim = dim;
  return s;
}

}  // namespace palloc
