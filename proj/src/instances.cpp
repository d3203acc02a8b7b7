#include "palloc/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace palloc {

PointMultiset gen_lower_bound_2d(std::int64_t k, Coord scale) {
  return gen_lower_bound_crosspolytope(k, 2, scale);
}

PointMultiset gen_lower_bound_crosspolytope(std::int64_t k, int d, Coord scale) {
  if (d < 2) throw std::invalid_argument("gen_lower_bound_crosspolytope: d must be at least 2");
  if (k < 1 || k % (4 * d) != 0) {
    throw std::invalid_argument("gen_lower_bound_crosspolytope: k must be a positive multiple of 4d");
  }
  if (scale < 2) throw std::invalid_argument("gen_lower_bound_crosspolytope: scale must be >= 2");

  auto unit = [&](int axis, Coord value) {
    Point p;
    p.coords.assign(static_cast<std::size_t>(d), 0);
    p.coords[static_cast<std::size_t>(axis)] = value;
    return p;
  };
  auto shifted = [&](Point base, int axis, Coord value) {
    base.coords[static_cast<std::size_t>(axis)] += value;
    return base;
  };

  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(2 * k));
  const Point origin = unit(0, 0);
  const Point far = unit(0, scale);
  for (std::int64_t i = 0; i < k / 2; ++i) pts.push_back(origin);
  for (std::int64_t i = 0; i < k / 2; ++i) pts.push_back(far);

  std::vector<Point> satellites;
  satellites.push_back(unit(0, -(scale - 1)));
  satellites.push_back(unit(0, 2 * scale - 1));
  for (int a = 1; a < d; ++a) {
    satellites.push_back(unit(a, scale - 1));
    satellites.push_back(unit(a, -(scale - 1)));
  }
  for (int a = 1; a < d; ++a) {
    satellites.push_back(shifted(far, a, scale - 1));
    satellites.push_back(shifted(far, a, -(scale - 1)));
  }
  for (const Point& s : satellites) {
    for (std::int64_t i = 0; i < k / (4 * d); ++i) pts.push_back(s);
  }
  return make_multiset(std::move(pts), d);
}

Mesh gen_random_mesh(const std::vector<Coord>& extents, double occupancy,
                     std::uint64_t seed) {
  if (occupancy < 0.0 || occupancy > 1.0) {
    throw std::invalid_argument("gen_random_mesh: occupancy must be in [0, 1]");
  }
  Mesh mesh(extents);
  const std::int64_t size = mesh.size();
  const std::int64_t target = static_cast<std::int64_t>(std::floor(occupancy * static_cast<double>(size)));

  std::vector<std::int64_t> cells(static_cast<std::size_t>(size));
  std::iota(cells.begin(), cells.end(), std::int64_t{0});
  Lcg64 rng(seed);
  for (std::int64_t i = 0; i < target; ++i) {
    const std::int64_t j =
        i + static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(size - i)));
    std::swap(cells[static_cast<std::size_t>(i)], cells[static_cast<std::size_t>(j)]);
  }

  // Recover coordinates from lexicographic cell ranks.
  for (std::int64_t i = 0; i < target; ++i) {
    std::int64_t idx = cells[static_cast<std::size_t>(i)];
    Point p;
    p.coords.resize(extents.size());
    for (int a = mesh.dim() - 1; a >= 0; --a) {
      const Coord e = extents[static_cast<std::size_t>(a)];
      p.coords[static_cast<std::size_t>(a)] = idx % e;
      idx /= e;
    }
    mesh.set_occupied(p, true);
  }
  return mesh;
}

PointMultiset gen_random_points(std::int64_t n, int d, Coord lo, Coord hi,
                                std::uint64_t seed) {
  if (n < 0 || d < 1 || lo > hi) throw std::invalid_argument("gen_random_points: bad arguments");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  Lcg64 rng(seed);
  std::vector<Point> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    p.coords.resize(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
      p.coords[static_cast<std::size_t>(a)] = lo + static_cast<Coord>(rng.next_below(span));
    }
  }
  return make_multiset(std::move(pts), d);
}

}  // namespace palloc
