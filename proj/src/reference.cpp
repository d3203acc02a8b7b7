#include "palloc/reference.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "palloc/geometry.hpp"

namespace palloc::ref {

Total pairwise_sum_direct(const PointMultiset& s) {
  if (s.empty()) throw std::invalid_argument("pairwise_sum_direct: empty multiset");
  Total w = 0;
  const std::size_t k = s.points.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      w += l1_distance(s.points[i], s.points[j]);
    }
  }
  return w;
}

namespace {

// Plain sort-based closest-k selection with the (distance, point, index) key.
std::vector<std::int64_t> closest_serial(const PointMultiset& p, const Point& q,
                                         std::int64_t k) {
  std::vector<std::int64_t> idx(p.points.size());
  std::iota(idx.begin(), idx.end(), std::int64_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::int64_t a, std::int64_t b) {
    const Total da = l1_distance(p.points[static_cast<std::size_t>(a)], q);
    const Total db = l1_distance(p.points[static_cast<std::size_t>(b)], q);
    if (da != db) return da < db;
    const Point& pa = p.points[static_cast<std::size_t>(a)];
    const Point& pb = p.points[static_cast<std::size_t>(b)];
    if (pa != pb) return pa < pb;
    return a < b;
  });
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

}  // namespace

Allocation mm_allocate(const PointMultiset& free, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("ref::mm_allocate: k must be positive");
  if (k > free.size()) throw InsufficientProcessors("ref::mm_allocate: not enough points");
  const PointMultiset cands = candidate_medians(free);
  Total best = std::numeric_limits<Total>::max();
  std::int64_t best_cand = -1;
  for (std::int64_t i = 0; i < cands.size(); ++i) {
    const Point& c = cands.points[static_cast<std::size_t>(i)];
    const Total w = pairwise_sum_direct(subset(free, closest_serial(free, c, k)));
    if (w < best) {
      best = w;
      best_cand = i;
    }
  }
  const Point& center = cands.points[static_cast<std::size_t>(best_cand)];
  Allocation out;
  out.selected = subset(free, closest_serial(free, center, k));
  out.total_distance = best;
  out.algorithm = "mm";
  out.center = center;
  return out;
}

Allocation mc1x1_select(const PointMultiset& free, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("ref::mc1x1_select: k must be positive");
  if (k > free.size()) throw InsufficientProcessors("ref::mc1x1_select: not enough points");
  std::vector<Point> centers = free.points;
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());

  const std::int64_t n = free.size();
  Total best_sigma = std::numeric_limits<Total>::max();
  std::vector<std::int64_t> best_sel;
  Point best_center;
  for (const Point& v : centers) {
    std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), std::int64_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::int64_t a, std::int64_t b) {
      const Total sa = linf_distance(free.points[static_cast<std::size_t>(a)], v);
      const Total sb = linf_distance(free.points[static_cast<std::size_t>(b)], v);
      if (sa != sb) return sa < sb;
      const Point& pa = free.points[static_cast<std::size_t>(a)];
      const Point& pb = free.points[static_cast<std::size_t>(b)];
      if (pa != pb) return pa < pb;
      return a < b;
    });
    idx.resize(static_cast<std::size_t>(k));
    Total sigma = 0;
    for (std::int64_t i : idx) sigma += linf_distance(free.points[static_cast<std::size_t>(i)], v);
    if (sigma < best_sigma) {
      best_sigma = sigma;
      best_sel = idx;
      best_center = v;
    }
  }
  Allocation out;
  out.selected = subset(free, best_sel);
  out.total_distance = pairwise_sum_direct(out.selected);
  out.algorithm = "mc1x1";
  out.center = best_center;
  out.sigma = best_sigma;
  return out;
}

Allocation brute_force_opt(const PointMultiset& p, std::int64_t k, std::int64_t budget) {
  if (k < 1) throw std::invalid_argument("ref::brute_force_opt: k must be positive");
  const std::int64_t n = p.size();
  if (k > n) throw std::invalid_argument("ref::brute_force_opt: k exceeds set size");

  std::vector<std::int64_t> comb(static_cast<std::size_t>(k));
  std::iota(comb.begin(), comb.end(), std::int64_t{0});
  Total best = std::numeric_limits<Total>::max();
  std::vector<std::int64_t> best_comb;
  std::int64_t evaluated = 0;
  for (;;) {
    if (++evaluated > budget) {
      throw BudgetExceeded("ref::brute_force_opt: subset budget exceeded");
    }
    const Total w = pairwise_sum_direct(subset(p, comb));
    if (w < best) {
      best = w;
      best_comb = comb;
    }
    // Next combination in lexicographic order.
    std::int64_t i = k - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < k; ++j) {
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  Allocation out;
  out.selected = subset(p, best_comb);
  out.total_distance = best;
  out.algorithm = "oracle";
  return out;
}

}  // namespace palloc::ref
