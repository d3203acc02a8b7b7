#pragma once

#include <cstdint>

#include "palloc/types.hpp"

namespace palloc::ref {

/// Direct O(k^2) pair enumeration. Reference for the sorted-coordinate
/// formula in pairwise_sum.
Total pairwise_sum_direct(const PointMultiset& s);

/// Serial single-loop mm scan. Must match mm_allocate bit for bit.
Allocation mm_allocate(const PointMultiset& free, std::int64_t k);

/// Serial single-loop shell scan. Must match mc1x1_select bit for bit.
Allocation mc1x1_select(const PointMultiset& free, std::int64_t k);

/// Serial lexicographic k-subset enumeration scored by direct pair sums.
/// Must match optimal::brute_force_opt bit for bit.
Allocation brute_force_opt(const PointMultiset& p, std::int64_t k,
                           std::int64_t budget = 10'000'000);

}  // namespace palloc::ref
