#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "palloc/numeric.hpp"
#include "palloc/types.hpp"

namespace palloc {

/// Per-axis strip boundaries: m+1 ascending coordinates per axis. Each strip
/// is the closed slab between consecutive bounds; a point landing exactly on
/// a shared bound belongs to the lower strip (equal coordinates are split
/// deterministically by point order when they straddle a cut).
struct StripStructure {
  int m = 0;
  std::vector<std::vector<Coord>> axis_bounds;  // [axis][m + 1]
};

/// Per-cell selection counts, m^d entries in row-major order (axis 0
/// slowest). Every axis-aligned slice sums to k/m.
struct CellPlan {
  int m = 0;
  int d = 2;
  std::vector<std::int64_t> counts;

  std::int64_t at(std::int64_t i, std::int64_t j) const {
    return counts[static_cast<std::size_t>(i * m + j)];
  }
};

/// Gradient direction used to select points from a cell: component a of
/// cell (i_0, ..., i_{d-1}) is (2 * i_a + 1 - m) * (k / m). Antisymmetric
/// across the strip midline: mirroring i_a to m-1-i_a negates component a.
std::vector<std::int64_t> cell_gradient(int m, std::int64_t points_per_strip,
                                        const std::vector<int>& cell_index);

/// Approximation guarantee of the 2D strip scheme:
/// 1 / (1 - 1/(m-2) - 2/(m-1)). Requires m >= 5.
Fraction ptas_factor(int m);

/// Streams every m x m nonnegative integer matrix whose row and column sums
/// all equal k/m, in row-major lexicographic order. The visitor returns
/// false to stop early. Requires m | k.
void enumerate_cell_plans(std::int64_t k, int m,
                          const std::function<bool(const CellPlan&)>& visit);

struct PtasResult {
  Allocation alloc;
  StripStructure strips;
  CellPlan plan;
};

/// 2D strip-enumeration scheme: enumerate per-axis strip structures drawn
/// from input coordinates (every strip keeps at least k/m input points),
/// enumerate cell plans, select per cell the assigned number of points
/// extremal in the cell's gradient direction, and return the best
/// configuration. The result is within ptas_factor(m) of the optimum.
PtasResult ptas_select(const PointMultiset& p, std::int64_t k, int m,
                       std::int64_t budget = 100'000'000);

/// d-dimensional generalization (d >= 2). No factor is certified beyond the
/// 2D case; the result is always a feasible selection no better than the
/// optimum.
PtasResult ptas_select_d(const PointMultiset& p, std::int64_t k, int m, int d,
                         std::int64_t budget = 100'000'000);

}  // namespace palloc
