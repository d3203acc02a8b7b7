#pragma once

#include <cstdint>

#include "palloc/mesh.hpp"
#include "palloc/types.hpp"

namespace palloc {

/// 64-bit linear congruential generator, fixed across platforms and
/// languages: state' = 6364136223846793005 * state + 1442695040888963407
/// (mod 2^64), seeded directly with `seed`; next() returns the new state.
struct Lcg64 {
  std::uint64_t state;

  explicit Lcg64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state;
  }

  /// next() reduced modulo n (n > 0).
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }
};

/// The 2D adversarial family for the median scan, scaled to integers with
/// eps = 1/scale: k/2 points each at (0,0) and (scale,0), k/8 points at each
/// of the six satellite locations. Requires 8 | k and scale >= 2.
PointMultiset gen_lower_bound_2d(std::int64_t k, Coord scale);

/// The d-dimensional cross-polytope family. k/2 points at O and O+scale*e1;
/// k/(4d) points at O-(scale-1)e1, O+(2*scale-1)e1, O+-(scale-1)ei and
/// O+scale*e1+-(scale-1)ei for i = 2..d. Requires 4d | k and scale >= 2.
PointMultiset gen_lower_bound_crosspolytope(std::int64_t k, int d, Coord scale);

/// Mesh with floor(occupancy * size) occupied cells drawn by a partial
/// Fisher-Yates shuffle of the lexicographic cell list using Lcg64(seed).
Mesh gen_random_mesh(const std::vector<Coord>& extents, double occupancy,
                     std::uint64_t seed);

/// n points with coordinates uniform in [lo, hi], drawn axis by axis from
/// Lcg64(seed).
PointMultiset gen_random_points(std::int64_t n, int d, Coord lo, Coord hi,
                                std::uint64_t seed);

}  // namespace palloc
