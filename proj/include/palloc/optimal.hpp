#pragma once

#include <cstdint>
#include <vector>

#include "palloc/numeric.hpp"
#include "palloc/types.hpp"

namespace palloc {

/// Exhaustive exact oracle: the k-subset of p with minimum total pairwise
/// distance, enumerated in lexicographic index order with a deterministic
/// first-found tie-break. Throws BudgetExceeded when C(n, k) > budget.
Allocation brute_force_opt(const PointMultiset& p, std::int64_t k,
                           std::int64_t budget = 10'000'000);

/// Exact 2D solver for k = 3. Scans candidate star centers (the per-axis
/// coordinate grid) for the three closest points, scored by the bounding-box
/// identity 2*(dx + dy). Always agrees with brute_force_opt(p, 3) on the
/// total.
Allocation exact_k3(const PointMultiset& p);

struct UnconstrainedResult {
  Allocation alloc;      // canonical representative (lex-min over the 8 grid symmetries)
  Fraction average;      // total / C(k, 2)
};

/// Minimum-total set of k distinct grid points, unconstrained by occupancy.
/// Branch-and-bound over canonical placements: the lexicographically
/// smallest point is pinned to the origin and coordinates are bounded by
/// `radius` and by an extent bound derived from the incumbent.
UnconstrainedResult unconstrained_optimal(std::int64_t k, Coord radius,
                                          std::int64_t node_budget = 200'000'000);

/// The canonical representative of a 2D point set: the lexicographically
/// smallest point list over the 8 grid symmetries, translated so its first
/// point is the origin.
std::vector<Point> canonical_shape(std::vector<Point> points);

}  // namespace palloc
