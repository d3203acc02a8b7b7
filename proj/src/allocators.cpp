#include "palloc/allocators.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

#include "palloc/geometry.hpp"
#include "palloc/parallel.hpp"

namespace palloc {

std::string_view algo_name(Algo a) {
  switch (a) {
    case Algo::mc1x1: return "mc1x1";
    case Algo::mm: return "mm";
    case Algo::mm_inc: return "mm-inc";
    case Algo::hilbert_bf: return "hilbert-bf";
  }
  return "?";
}

std::optional<Algo> algo_from_name(std::string_view name) {
  for (Algo a : kAllAlgos) {
    if (algo_name(a) == name) return a;
  }
  return std::nullopt;
}

namespace {

void require_feasible(std::int64_t k, std::int64_t available, const char* where) {
  if (k < 1) throw std::invalid_argument(std::string(where) + ": k must be positive");
  if (k > available) {
    throw InsufficientProcessors(std::string(where) + ": need " + std::to_string(k) +
                                 " processors, only " + std::to_string(available) + " free");
  }
}

PointMultiset dedup_sorted(const PointMultiset& p) {
  std::vector<Point> pts = p.points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return make_multiset(std::move(pts), p.dim);
}

}  // namespace

Allocation mm_allocate(const PointMultiset& free, std::int64_t k, MmCandidates candidates) {
  require_feasible(k, free.size(), "mm_allocate");
  const PointMultiset cands =
      candidates == MmCandidates::full ? candidate_medians(free) : dedup_sorted(free);
  const std::int64_t n = cands.size();

  using Key = std::tuple<Total, std::int64_t>;  // (total, candidate index)
  const Key worst{std::numeric_limits<Total>::max(), -1};
  const Key best = min_over(n, worst, [&](std::int64_t i) {
    const Point& c = cands.points[static_cast<std::size_t>(i)];
    return Key{pairwise_sum(k_closest(free, c, k)), i};
  });

  const Point& center = cands.points[static_cast<std::size_t>(std::get<1>(best))];
  Allocation out;
  out.selected = k_closest(free, center, k);
  out.total_distance = std::get<0>(best);
  out.algorithm = "mm";
  out.center = center;
  return out;
}

Allocation mm_allocate(const Mesh& mesh, std::int64_t k, MmCandidates candidates) {
  require_feasible(k, mesh.free_count(), "mm_allocate");
  return mm_allocate(mesh.free_points(), k, candidates);
}

Allocation mm_inc_allocate(const PointMultiset& free, std::int64_t k) {
  Allocation start = mm_allocate(free, k);
  const std::int64_t n = free.size();
  if (k == n) {
    start.algorithm = "mm-inc";
    return start;
  }

  // Recover selected indices from the starting allocation's center so swaps
  // operate on multiset entries, not point values.
  std::vector<std::int64_t> sel = k_closest_indices(free, *start.center, k);
  std::vector<char> in_sel(static_cast<std::size_t>(n), 0);
  for (std::int64_t i : sel) in_sel[static_cast<std::size_t>(i)] = 1;

  // dist_sum[u] = sum of distances from free[u] to the current selection.
  const PointMultiset sel_points = subset(free, sel);
  std::vector<Total> dist_sum(static_cast<std::size_t>(n));
  for (std::int64_t u = 0; u < n; ++u) {
    dist_sum[static_cast<std::size_t>(u)] =
        distance_sum_to(sel_points, free.points[static_cast<std::size_t>(u)]);
  }

  Total total = start.total_distance;
  for (;;) {
    // Best single swap: selected s out, excluded t in.
    Total best_delta = 0;
    std::int64_t best_s = -1, best_t = -1;
    for (std::int64_t s = 0; s < n; ++s) {
      if (!in_sel[static_cast<std::size_t>(s)]) continue;
      for (std::int64_t t = 0; t < n; ++t) {
        if (in_sel[static_cast<std::size_t>(t)]) continue;
        const Total delta = dist_sum[static_cast<std::size_t>(t)] -
                            l1_distance(free.points[static_cast<std::size_t>(t)],
                                        free.points[static_cast<std::size_t>(s)]) -
                            dist_sum[static_cast<std::size_t>(s)];
        if (delta < best_delta) {
          best_delta = delta;
          best_s = s;
          best_t = t;
        }
      }
    }
    if (best_s < 0) break;
    total += best_delta;
    in_sel[static_cast<std::size_t>(best_s)] = 0;
    in_sel[static_cast<std::size_t>(best_t)] = 1;
    const Point& ps = free.points[static_cast<std::size_t>(best_s)];
    const Point& pt = free.points[static_cast<std::size_t>(best_t)];
    for (std::int64_t u = 0; u < n; ++u) {
      dist_sum[static_cast<std::size_t>(u)] +=
          l1_distance(free.points[static_cast<std::size_t>(u)], pt) -
          l1_distance(free.points[static_cast<std::size_t>(u)], ps);
    }
  }

  std::vector<std::int64_t> final_sel;
  final_sel.reserve(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < n; ++i) {
    if (in_sel[static_cast<std::size_t>(i)]) final_sel.push_back(i);
  }
  Allocation out;
  out.selected = subset(free, final_sel);
  out.total_distance = total;
  out.algorithm = "mm-inc";
  out.center = start.center;
  return out;
}

Allocation mm_inc_allocate(const Mesh& mesh, std::int64_t k) {
  require_feasible(k, mesh.free_count(), "mm_inc_allocate");
  return mm_inc_allocate(mesh.free_points(), k);
}

Allocation mc1x1_select(const PointMultiset& free, std::int64_t k) {
  require_feasible(k, free.size(), "mc1x1_select");
  const PointMultiset centers = dedup_sorted(free);
  const std::int64_t n = free.size();

  auto shell_selection = [&](const Point& v) {
    std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), std::int64_t{0});
    std::vector<Total> shell(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
      shell[static_cast<std::size_t>(i)] =
          linf_distance(free.points[static_cast<std::size_t>(i)], v);
    }
    auto key_less = [&](std::int64_t a, std::int64_t b) {
      const Total sa = shell[static_cast<std::size_t>(a)];
      const Total sb = shell[static_cast<std::size_t>(b)];
      if (sa != sb) return sa < sb;
      const Point& pa = free.points[static_cast<std::size_t>(a)];
      const Point& pb = free.points[static_cast<std::size_t>(b)];
      if (pa != pb) return pa < pb;
      return a < b;
    };
    auto kth = idx.begin() + static_cast<std::ptrdiff_t>(k);
    std::nth_element(idx.begin(), kth - 1, idx.end(), key_less);
    std::sort(idx.begin(), kth, key_less);
    idx.resize(static_cast<std::size_t>(k));
    Total sigma = 0;
    for (std::int64_t i : idx) sigma += shell[static_cast<std::size_t>(i)];
    return std::pair{sigma, std::move(idx)};
  };

  using Key = std::tuple<Total, std::int64_t>;  // (sigma, center index)
  const Key worst{std::numeric_limits<Total>::max(), -1};
  const Key best = min_over(centers.size(), worst, [&](std::int64_t i) {
    return Key{shell_selection(centers.points[static_cast<std::size_t>(i)]).first, i};
  });

  const Point& center = centers.points[static_cast<std::size_t>(std::get<1>(best))];
  auto [sigma, sel] = shell_selection(center);
  Allocation out;
  out.selected = subset(free, sel);
  out.total_distance = pairwise_sum(out.selected);
  out.algorithm = "mc1x1";
  out.center = center;
  out.sigma = sigma;
  return out;
}

Allocation mc1x1_allocate(const Mesh& mesh, std::int64_t k) {
  require_feasible(k, mesh.free_count(), "mc1x1_allocate");
  return mc1x1_select(mesh.free_points(), k);
}

Total hilbert_index(const Point& p, int order) {
  if (p.dim() != 2) throw DimensionMismatch("hilbert_index: 2D points only");
  if (order < 0 || order > 31) throw std::invalid_argument("hilbert_index: bad order");
  const std::int64_t side = std::int64_t{1} << order;
  std::int64_t x = p[0], y = p[1];
  if (x < 0 || y < 0 || x >= side || y >= side) {
    throw std::invalid_argument("hilbert_index: point outside the 2^order square");
  }
  std::int64_t rank = 0;
  for (std::int64_t s = side / 2; s > 0; s /= 2) {
    const std::int64_t rx = (x & s) > 0 ? 1 : 0;
    const std::int64_t ry = (y & s) > 0 ? 1 : 0;
    rank += s * s * ((3 * rx) ^ ry);
    // Rotate the quadrant so the curve stays connected.
    if (ry == 0) {
      if (rx == 1) {
        x = side - 1 - x;
        y = side - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return rank;
}

Allocation hilbert_bf_allocate(const Mesh& mesh, std::int64_t k) {
  if (mesh.dim() != 2) throw std::invalid_argument("hilbert_bf_allocate: 2D meshes only");
  require_feasible(k, mesh.free_count(), "hilbert_bf_allocate");

  int order = 0;
  while ((std::int64_t{1} << order) < std::max(mesh.extents()[0], mesh.extents()[1])) ++order;

  const PointMultiset free = mesh.free_points();
  std::vector<std::pair<Total, std::int64_t>> by_rank;
  by_rank.reserve(free.points.size());
  for (std::int64_t i = 0; i < free.size(); ++i) {
    by_rank.emplace_back(hilbert_index(free.points[static_cast<std::size_t>(i)], order), i);
  }
  std::sort(by_rank.begin(), by_rank.end());

  struct Run {
    std::int64_t begin;  // offset into by_rank
    std::int64_t length;
  };
  std::vector<Run> runs;
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(by_rank.size()); ++i) {
    if (runs.empty() || by_rank[static_cast<std::size_t>(i)].first !=
                            by_rank[static_cast<std::size_t>(i - 1)].first + 1) {
      runs.push_back({i, 1});
    } else {
      ++runs.back().length;
    }
  }

  std::vector<char> used(runs.size(), 0);
  std::vector<std::int64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(k));
  std::int64_t remaining = k;
  while (remaining > 0) {
    // Smallest unused run that still fits; otherwise the largest one whole.
    std::int64_t fit = -1, largest = -1;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (used[r]) continue;
      if (runs[r].length >= remaining &&
          (fit < 0 || runs[r].length < runs[static_cast<std::size_t>(fit)].length)) {
        fit = static_cast<std::int64_t>(r);
      }
      if (largest < 0 || runs[r].length > runs[static_cast<std::size_t>(largest)].length) {
        largest = static_cast<std::int64_t>(r);
      }
    }
    const std::int64_t r = fit >= 0 ? fit : largest;
    const Run& run = runs[static_cast<std::size_t>(r)];
    const std::int64_t take = std::min(remaining, run.length);
    for (std::int64_t i = 0; i < take; ++i) {
      chosen.push_back(by_rank[static_cast<std::size_t>(run.begin + i)].second);
    }
    used[static_cast<std::size_t>(r)] = 1;
    remaining -= take;
  }

  Allocation out;
  out.selected = subset(free, chosen);
  out.total_distance = pairwise_sum(out.selected);
  out.algorithm = "hilbert-bf";
  return out;
}

Allocation allocate_with(const Mesh& mesh, std::int64_t k, Algo algo) {
  switch (algo) {
    case Algo::mc1x1: return mc1x1_allocate(mesh, k);
    case Algo::mm: return mm_allocate(mesh, k);
    case Algo::mm_inc: return mm_inc_allocate(mesh, k);
    case Algo::hilbert_bf: return hilbert_bf_allocate(mesh, k);
  }
  throw std::invalid_argument("allocate_with: unknown algorithm");
}

}  // namespace palloc
