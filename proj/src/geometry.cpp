#include "palloc/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace palloc {

namespace {

void require_same_dim(const Point& p, const Point& q, const char* where) {
  if (p.dim() != q.dim()) throw DimensionMismatch(std::string(where) + ": dimension mismatch");
}

}  // namespace

Total l1_distance(const Point& p, const Point& q) {
  require_same_dim(p, q, "l1_distance");
  Total s = 0;
  for (int a = 0; a < p.dim(); ++a) {
    s += p[a] > q[a] ? p[a] - q[a] : q[a] - p[a];
  }
  return s;
}

Total linf_distance(const Point& p, const Point& q) {
  require_same_dim(p, q, "linf_distance");
  Total s = 0;
  for (int a = 0; a < p.dim(); ++a) {
    s = std::max(s, p[a] > q[a] ? p[a] - q[a] : q[a] - p[a]);
  }
  return s;
}

Total pairwise_sum(const PointMultiset& s) {
  if (s.empty()) throw std::invalid_argument("pairwise_sum: empty multiset");
  const std::int64_t k = s.size();
  std::vector<Coord> axis(static_cast<std::size_t>(k));
  Total w = 0;
  for (int a = 0; a < s.dim; ++a) {
    for (std::int64_t i = 0; i < k; ++i) {
      axis[static_cast<std::size_t>(i)] = s.points[static_cast<std::size_t>(i)][a];
    }
    std::sort(axis.begin(), axis.end());
    for (std::int64_t i = 0; i < k; ++i) {
      w += (2 * i - k + 1) * axis[static_cast<std::size_t>(i)];
    }
  }
  return w;
}

Total pairwise_sum_between(const PointMultiset& s, const PointMultiset& t) {
  if (!s.empty() && !t.empty() && s.dim != t.dim) {
    throw DimensionMismatch("pairwise_sum_between: dimension mismatch");
  }
  Total w = 0;
  for (const Point& p : s.points) {
    for (const Point& q : t.points) {
      w += l1_distance(p, q);
    }
  }
  return w;
}

Total distance_sum_to(const PointMultiset& s, const Point& q) {
  Total w = 0;
  for (const Point& p : s.points) w += l1_distance(p, q);
  return w;
}

Point l1_median(const PointMultiset& s) {
  if (s.empty()) throw std::invalid_argument("l1_median: empty multiset");
  const std::size_t k = s.points.size();
  Point median;
  median.coords.resize(static_cast<std::size_t>(s.dim));
  std::vector<Coord> axis(k);
  for (int a = 0; a < s.dim; ++a) {
    for (std::size_t i = 0; i < k; ++i) axis[i] = s.points[i][a];
    auto mid = axis.begin() + static_cast<std::ptrdiff_t>((k - 1) / 2);
    std::nth_element(axis.begin(), mid, axis.end());
    median.coords[static_cast<std::size_t>(a)] = *mid;
  }
  return median;
}

std::vector<std::int64_t> k_closest_indices(const PointMultiset& p, const Point& q,
                                            std::int64_t k) {
  if (k < 1) throw std::invalid_argument("k_closest: k must be positive");
  if (k > p.size()) throw std::invalid_argument("k_closest: k exceeds set size");
  const std::int64_t n = p.size();
  std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), std::int64_t{0});
  std::vector<Total> dist(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    dist[static_cast<std::size_t>(i)] = l1_distance(p.points[static_cast<std::size_t>(i)], q);
  }
  auto key_less = [&](std::int64_t a, std::int64_t b) {
    const Total da = dist[static_cast<std::size_t>(a)];
    const Total db = dist[static_cast<std::size_t>(b)];
    if (da != db) return da < db;
    const Point& pa = p.points[static_cast<std::size_t>(a)];
    const Point& pb = p.points[static_cast<std::size_t>(b)];
    if (pa != pb) return pa < pb;
    return a < b;
  };
  auto kth = idx.begin() + static_cast<std::ptrdiff_t>(k);
  std::nth_element(idx.begin(), kth - 1, idx.end(), key_less);
  std::sort(idx.begin(), kth, key_less);
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

PointMultiset k_closest(const PointMultiset& p, const Point& q, std::int64_t k) {
  return subset(p, k_closest_indices(p, q, k));
}

PointMultiset candidate_medians(const PointMultiset& p) {
  if (p.empty()) throw std::invalid_argument("candidate_medians: empty multiset");
  const int d = p.dim;
  std::vector<std::vector<Coord>> axes(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    auto& ax = axes[static_cast<std::size_t>(a)];
    ax.reserve(p.points.size());
    for (const Point& pt : p.points) ax.push_back(pt[a]);
    std::sort(ax.begin(), ax.end());
    ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
  }
  std::vector<Point> out;
  std::size_t count = 1;
  for (const auto& ax : axes) count *= ax.size();
  out.reserve(count);
  Point cur;
  cur.coords.resize(static_cast<std::size_t>(d));
  // Odometer over the per-axis coordinate lists, axis 0 most significant,
  // which yields lexicographic order.
  std::vector<std::size_t> pos(static_cast<std::size_t>(d), 0);
  for (;;) {
    for (int a = 0; a < d; ++a) {
      cur.coords[static_cast<std::size_t>(a)] =
          axes[static_cast<std::size_t>(a)][pos[static_cast<std::size_t>(a)]];
    }
    out.push_back(cur);
    int a = d - 1;
    while (a >= 0 && ++pos[static_cast<std::size_t>(a)] == axes[static_cast<std::size_t>(a)].size()) {
      pos[static_cast<std::size_t>(a)] = 0;
      --a;
    }
    if (a < 0) break;
  }
  return make_multiset(std::move(out), d);
}

PointMultiset subset(const PointMultiset& p, const std::vector<std::int64_t>& indices) {
  std::vector<Point> pts;
  pts.reserve(indices.size());
  for (std::int64_t i : indices) pts.push_back(p.points[static_cast<std::size_t>(i)]);
  return make_multiset(std::move(pts), p.dim);
}

}  // namespace palloc
