#pragma once

#include <cstdint>
#include <vector>

#include "palloc/types.hpp"

namespace palloc {

/// L1 (hop) distance between two points of equal dimension.
Total l1_distance(const Point& p, const Point& q);

/// L-infinity distance; the shell number of q around center p.
Total linf_distance(const Point& p, const Point& q);

/// Total pairwise L1 distance of s, computed per axis from sorted
/// coordinates as sum_i (2i - k + 1) * x_(i). O(k log k); singleton -> 0.
Total pairwise_sum(const PointMultiset& s);

/// Sum of distances from every point of s to every point of t.
Total pairwise_sum_between(const PointMultiset& s, const PointMultiset& t);

/// Sum of L1 distances from q to every point of s.
Total distance_sum_to(const PointMultiset& s, const Point& q);

/// Coordinate-wise median; the lower median per axis on even counts.
Point l1_median(const PointMultiset& s);

/// Indices of the k entries of p closest to q, sorted by the deterministic
/// key (distance, point, input index).
std::vector<std::int64_t> k_closest_indices(const PointMultiset& p, const Point& q,
                                            std::int64_t k);

/// The k points of p closest to q, in (distance, point, index) order.
PointMultiset k_closest(const PointMultiset& p, const Point& q, std::int64_t k);

/// All combinations of per-axis input coordinates: the candidate median
/// grid. Deduplicated and lexicographically sorted; O(n^d) points.
PointMultiset candidate_medians(const PointMultiset& p);

/// Multiset of p's entries at the given indices, in the given order.
PointMultiset subset(const PointMultiset& p, const std::vector<std::int64_t>& indices);

}  // namespace palloc
