#pragma once

#include <cstdint>
#include <vector>

#include "palloc/instances.hpp"
#include "palloc/types.hpp"

namespace test_support {

inline palloc::Point pt(std::initializer_list<palloc::Coord> coords) {
  return palloc::Point{std::vector<palloc::Coord>(coords)};
}

inline palloc::PointMultiset pts(std::initializer_list<palloc::Point> points) {
  return palloc::make_multiset(std::vector<palloc::Point>(points));
}

inline palloc::PointMultiset random_multiset(std::int64_t n, int d, palloc::Coord lo,
                                             palloc::Coord hi, std::uint64_t seed) {
  return palloc::gen_random_points(n, d, lo, hi, seed);
}

}  // namespace test_support
