#include "palloc/optimal.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

#include "palloc/geometry.hpp"
#include "palloc/parallel.hpp"

namespace palloc {

namespace {

// Total pairwise distance of the points of p at the given indices, via the
// per-axis sorted form, without building a multiset.
Total subset_total(const PointMultiset& p, const std::vector<std::int64_t>& comb,
                   std::vector<Coord>& axis) {
  const std::int64_t k = static_cast<std::int64_t>(comb.size());
  Total w = 0;
  for (int a = 0; a < p.dim; ++a) {
    for (std::int64_t i = 0; i < k; ++i) {
      axis[static_cast<std::size_t>(i)] =
          p.points[static_cast<std::size_t>(comb[static_cast<std::size_t>(i)])][a];
    }
    std::sort(axis.begin(), axis.end());
    for (std::int64_t i = 0; i < k; ++i) {
      w += (2 * i - k + 1) * axis[static_cast<std::size_t>(i)];
    }
  }
  return w;
}

}  // namespace

Allocation brute_force_opt(const PointMultiset& p, std::int64_t k, std::int64_t budget) {
  if (k < 1) throw std::invalid_argument("brute_force_opt: k must be positive");
  const std::int64_t n = p.size();
  if (k > n) throw std::invalid_argument("brute_force_opt: k exceeds set size");
  if (binomial_capped(n, k, budget + 1) > budget) {
    throw BudgetExceeded("brute_force_opt: C(n,k) exceeds the subset budget");
  }

  // Prefix blocks: subsets grouped by their first index. Block order equals
  // lexicographic subset order, so the reduction key (total, first index,
  // sequence within block) recovers the lex-first minimum.
  using Key = std::tuple<Total, std::int64_t, std::int64_t>;
  const Key worst{std::numeric_limits<Total>::max(), -1, -1};
  const std::int64_t blocks = n - k + 1;
  const Key best = min_over(
      blocks, worst,
      [&](std::int64_t first) {
        std::vector<std::int64_t> comb(static_cast<std::size_t>(k));
        std::iota(comb.begin(), comb.end(), first);
        std::vector<Coord> axis(static_cast<std::size_t>(k));
        Total local_best = std::numeric_limits<Total>::max();
        std::int64_t local_seq = -1;
        std::int64_t seq = 0;
        for (;;) {
          const Total w = subset_total(p, comb, axis);
          if (w < local_best) {
            local_best = w;
            local_seq = seq;
          }
          ++seq;
          // Advance the suffix; the first index stays fixed.
          std::int64_t i = k - 1;
          while (i >= 1 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
          if (i < 1) break;
          ++comb[static_cast<std::size_t>(i)];
          for (std::int64_t j = i + 1; j < k; ++j) {
            comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
          }
        }
        return Key{local_best, first, local_seq};
      },
      1);

  // Replay the winning block up to the recorded sequence number.
  const std::int64_t first = std::get<1>(best);
  std::vector<std::int64_t> comb(static_cast<std::size_t>(k));
  std::iota(comb.begin(), comb.end(), first);
  for (std::int64_t seq = 0; seq < std::get<2>(best); ++seq) {
    std::int64_t i = k - 1;
    while (i >= 1 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
    ++comb[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < k; ++j) {
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }

  Allocation out;
  out.selected = subset(p, comb);
  out.total_distance = std::get<0>(best);
  out.algorithm = "oracle";
  return out;
}

Allocation exact_k3(const PointMultiset& p) {
  if (p.dim != 2) throw std::invalid_argument("exact_k3: 2D point sets only");
  if (p.size() < 3) throw std::invalid_argument("exact_k3: need at least 3 points");

  // The optimal triple's smallest Steiner star is centered on a candidate
  // median, and its three closest points realize the optimum; the triple's
  // total is twice the bounding-box half-perimeter.
  const PointMultiset cands = candidate_medians(p);
  auto triple_cost = [&](const Point& c) {
    const std::vector<std::int64_t> sel = k_closest_indices(p, c, 3);
    Coord xmin = std::numeric_limits<Coord>::max(), xmax = std::numeric_limits<Coord>::min();
    Coord ymin = xmin, ymax = xmax;
    for (std::int64_t i : sel) {
      const Point& q = p.points[static_cast<std::size_t>(i)];
      xmin = std::min(xmin, q[0]);
      xmax = std::max(xmax, q[0]);
      ymin = std::min(ymin, q[1]);
      ymax = std::max(ymax, q[1]);
    }
    return 2 * (xmax - xmin) + 2 * (ymax - ymin);
  };

  using Key = std::tuple<Total, std::int64_t>;
  const Key worst{std::numeric_limits<Total>::max(), -1};
  const Key best = min_over(cands.size(), worst, [&](std::int64_t i) {
    return Key{triple_cost(cands.points[static_cast<std::size_t>(i)]), i};
  });

  const Point& center = cands.points[static_cast<std::size_t>(std::get<1>(best))];
  Allocation out;
  out.selected = subset(p, k_closest_indices(p, center, 3));
  out.total_distance = std::get<0>(best);
  out.algorithm = "k3";
  out.center = center;
  return out;
}

std::vector<Point> canonical_shape(std::vector<Point> points) {
  if (points.empty()) return points;
  if (points.front().dim() != 2) {
    throw std::invalid_argument("canonical_shape: 2D point sets only");
  }
  std::vector<Point> best;
  for (int sym = 0; sym < 8; ++sym) {
    std::vector<Point> img = points;
    for (Point& q : img) {
      Coord x = q[0], y = q[1];
      if (sym & 1) x = -x;
      if (sym & 2) y = -y;
      if (sym & 4) std::swap(x, y);
      q.coords[0] = x;
      q.coords[1] = y;
    }
    std::sort(img.begin(), img.end());
    const Point origin = img.front();
    for (Point& q : img) {
      q.coords[0] -= origin[0];
      q.coords[1] -= origin[1];
    }
    if (best.empty() || img < best) best = std::move(img);
  }
  return best;
}

namespace {

// Least possible added pairwise cost when extending j distinct grid points
// by one more: the j smallest values of the multiset {1 x4, 2 x8, 3 x12, ...}
// (an L1 ball around the new point holds at most 4r cells at distance r).
std::vector<Total> min_increment_table(std::int64_t k) {
  std::vector<Total> g(static_cast<std::size_t>(k), 0);
  Total dist = 1, slots = 4, used = 0, sum = 0;
  for (std::int64_t j = 1; j < k; ++j) {
    if (used == slots) {
      ++dist;
      slots = 4 * dist;
      used = 0;
    }
    sum += dist;
    ++used;
    g[static_cast<std::size_t>(j)] = sum;  // g[j] = min cost of the (j+1)-th point
  }
  return g;
}

struct ShapeSearch {
  std::int64_t k;
  std::int64_t node_budget;
  std::vector<Point> domain;          // candidate cells, lexicographic
  std::vector<Total> completion;      // completion[s] = sum of g[s..k-1]
  std::vector<Total> g;
  Total best_total;
  std::vector<std::int64_t> best_set;
  std::vector<std::int64_t> cur;
  Total cur_total = 0;
  Coord max_x = 0, max_y = 0, min_y = 0;
  std::int64_t nodes = 0;

  // Every future pick costs at least its add-cost against the current set
  // (supersets only raise it), so the r smallest available add-costs bound
  // the completion, alongside the packing bound in `completion`.
  void dfs(std::int64_t start) {
    const std::int64_t s = static_cast<std::int64_t>(cur.size());
    if (s == k) {
      if (cur_total < best_total) {
        best_total = cur_total;
        best_set = cur;
      }
      return;
    }
    if (++nodes > node_budget) {
      throw BudgetExceeded("unconstrained_optimal: node budget exceeded");
    }
    const std::int64_t remaining = k - s;
    const std::int64_t avail = static_cast<std::int64_t>(domain.size()) - start;
    if (avail < remaining) return;

    std::vector<Total> adds(static_cast<std::size_t>(avail));
    for (std::int64_t i = 0; i < avail; ++i) {
      const Point& q = domain[static_cast<std::size_t>(start + i)];
      Total add = 0;
      for (std::int64_t j : cur) {
        add += l1_distance(domain[static_cast<std::size_t>(j)], q);
      }
      adds[static_cast<std::size_t>(i)] = add;
    }
    std::vector<Total> sorted_adds = adds;
    std::sort(sorted_adds.begin(), sorted_adds.end());
    std::vector<Total> prefix(sorted_adds.size() + 1, 0);
    for (std::size_t i = 0; i < sorted_adds.size(); ++i) {
      prefix[i + 1] = prefix[i] + sorted_adds[i];
    }
    if (cur_total + std::max(prefix[static_cast<std::size_t>(remaining)],
                             completion[static_cast<std::size_t>(s)]) >= best_total) {
      return;
    }

    for (std::int64_t i = 0; i < avail; ++i) {
      const Total add = adds[static_cast<std::size_t>(i)];
      const Point& q = domain[static_cast<std::size_t>(start + i)];
      // Future picks draw from this node's candidate list minus the child,
      // so the (remaining - 1) smallest adds excluding the child's own value
      // bound the rest of the completion.
      const Total rest = add <= sorted_adds[static_cast<std::size_t>(remaining) - 1]
                             ? prefix[static_cast<std::size_t>(remaining)] - add
                             : prefix[static_cast<std::size_t>(remaining) - 1];
      const Total future = std::max(rest, completion[static_cast<std::size_t>(s + 1)]);
      const Coord nx = std::max(max_x, q[0]);
      const Coord ny_hi = std::max(max_y, q[1]);
      const Coord ny_lo = std::min(min_y, q[1]);
      const Total extent_low = (k - 1) * (nx + (ny_hi - ny_lo));
      if (cur_total + add + future >= best_total || extent_low >= best_total) continue;

      const Coord ox = max_x, oy_hi = max_y, oy_lo = min_y;
      max_x = nx;
      max_y = ny_hi;
      min_y = ny_lo;
      cur.push_back(start + i);
      cur_total += add;
      dfs(start + i + 1);
      cur_total -= add;
      cur.pop_back();
      max_x = ox;
      max_y = oy_hi;
      min_y = oy_lo;
    }
  }
};

// k cells packed row-major into a near-square block; a cheap real solution
// used to seed the bound.
std::vector<Point> seed_block(std::int64_t k) {
  Coord side = 1;
  while (side * side < k) ++side;
  std::vector<Point> pts;
  for (Coord x = 0; x < side && static_cast<std::int64_t>(pts.size()) < k; ++x) {
    for (Coord y = 0; y < side && static_cast<std::int64_t>(pts.size()) < k; ++y) {
      pts.push_back(Point{{x, y}});
    }
  }
  return pts;
}

}  // namespace

UnconstrainedResult unconstrained_optimal(std::int64_t k, Coord radius,
                                          std::int64_t node_budget) {
  if (k < 1 || k > 12) throw std::invalid_argument("unconstrained_optimal: k must be in 1..12");
  if (radius < 1) throw std::invalid_argument("unconstrained_optimal: radius must be positive");

  if (k == 1) {
    UnconstrainedResult r;
    r.alloc.selected = make_multiset({Point{{0, 0}}});
    r.alloc.total_distance = 0;
    r.alloc.algorithm = "shapes";
    r.average = {0, 1};
    return r;
  }

  const Total seed_total = pairwise_sum(make_multiset(seed_block(k)));
  // Any optimum satisfies total >= (k-1) * (x extent + y extent), so both
  // extents fit under seed_total / (k-1); the origin pins one corner.
  const Coord extent_cap = std::min<Coord>(radius, seed_total / (k - 1));

  ShapeSearch search;
  search.k = k;
  search.node_budget = node_budget;
  search.g = min_increment_table(k);
  search.completion.assign(static_cast<std::size_t>(k) + 1, 0);
  for (std::int64_t s = k - 1; s >= 0; --s) {
    search.completion[static_cast<std::size_t>(s)] =
        search.completion[static_cast<std::size_t>(s + 1)] +
        (s > 0 ? search.g[static_cast<std::size_t>(s)] : 0);
  }
  for (Coord x = 0; x <= extent_cap; ++x) {
    for (Coord y = x == 0 ? 1 : -extent_cap; y <= extent_cap; ++y) {
      if (x + (y > 0 ? y : -y) > extent_cap) continue;
      search.domain.push_back(Point{{x, y}});
    }
  }
  std::sort(search.domain.begin(), search.domain.end());
  search.best_total = seed_total + 1;
  search.cur.reserve(static_cast<std::size_t>(k));

  // The origin is the pinned lexicographically smallest point.
  search.domain.insert(search.domain.begin(), Point{{0, 0}});
  search.cur.push_back(0);
  search.dfs(1);

  std::vector<Point> winner;
  if (search.best_set.empty()) {
    // Nothing beat the seed bound, so the seed block is optimal.
    winner = seed_block(k);
  } else {
    for (std::int64_t i : search.best_set) {
      winner.push_back(search.domain[static_cast<std::size_t>(i)]);
    }
  }

  UnconstrainedResult r;
  r.alloc.selected = make_multiset(canonical_shape(std::move(winner)));
  r.alloc.total_distance = pairwise_sum(r.alloc.selected);
  r.alloc.algorithm = "shapes";
  r.average = {r.alloc.total_distance, k * (k - 1) / 2};
  return r;
}

}  // namespace palloc
