#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "palloc/mesh.hpp"
#include "palloc/types.hpp"

namespace palloc {

/// The allocation strategies compared by the simulator, in the stable
/// reporting order.
enum class Algo { mc1x1, mm, mm_inc, hilbert_bf };

inline constexpr std::array<Algo, 4> kAllAlgos = {Algo::mc1x1, Algo::mm, Algo::mm_inc,
                                                  Algo::hilbert_bf};

std::string_view algo_name(Algo a);
std::optional<Algo> algo_from_name(std::string_view name);

/// Candidate-median family for mm_allocate: the full per-axis coordinate
/// product, or just the input points (faster, but only the generic metric
/// guarantee applies).
enum class MmCandidates { full, input_points };

/// Greedy median scan: for every candidate median, take the k closest free
/// points and score their total pairwise distance; return the best
/// candidate set. Ties go to the lexicographically smallest center.
Allocation mm_allocate(const PointMultiset& free, std::int64_t k,
                       MmCandidates candidates = MmCandidates::full);
Allocation mm_allocate(const Mesh& mesh, std::int64_t k,
                       MmCandidates candidates = MmCandidates::full);

/// mm_allocate followed by steepest single-swap local improvement: while
/// some swap of one selected point for one excluded point lowers the total,
/// apply the best such swap (ties by excluded-then-included input index).
Allocation mm_inc_allocate(const PointMultiset& free, std::int64_t k);
Allocation mm_inc_allocate(const Mesh& mesh, std::int64_t k);

/// Shell scan: for every free point v, select the k free points with the
/// smallest shell numbers (L-infinity distance to v) and score sigma = the
/// sum of those shell numbers; return the selection of the sigma-minimal
/// center. Ties: lex point order, then lex center.
Allocation mc1x1_select(const PointMultiset& free, std::int64_t k);
Allocation mc1x1_allocate(const Mesh& mesh, std::int64_t k);

/// Rank of p along the Hilbert curve filling the 2^order x 2^order square.
Total hilbert_index(const Point& p, int order);

/// Linearize the free cells of a 2D mesh along the Hilbert curve of the
/// smallest enclosing power-of-two square, split them into runs of
/// curve-consecutive cells, then gather k cells best-fit: take the first k
/// of the smallest run that fits, or, when none fits, consume the largest
/// run whole and repeat on the remainder.
Allocation hilbert_bf_allocate(const Mesh& mesh, std::int64_t k);

/// Runs the named strategy on a mesh.
Allocation allocate_with(const Mesh& mesh, std::int64_t k, Algo algo);

}  // namespace palloc
