#include "palloc/ptas.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <tuple>

#include "palloc/geometry.hpp"
#include "palloc/parallel.hpp"

namespace palloc {

std::vector<std::int64_t> cell_gradient(int m, std::int64_t points_per_strip,
                                        const std::vector<int>& cell_index) {
  std::vector<std::int64_t> grad(cell_index.size());
  for (std::size_t a = 0; a < cell_index.size(); ++a) {
    grad[a] = (2 * cell_index[a] + 1 - m) * points_per_strip;
  }
  return grad;
}

Fraction ptas_factor(int m) {
  if (m <= 4) throw std::invalid_argument("ptas_factor: m must be at least 5");
  // 1 / (1 - 1/(m-2) - 2/(m-1)) with common denominator (m-2)(m-1).
  const std::int64_t num = static_cast<std::int64_t>(m - 2) * (m - 1);
  const std::int64_t den = num - (m - 1) - 2 * (m - 2);
  const std::int64_t g = std::gcd(num, den);
  return Fraction{num / g, den / g};
}

namespace {

// Cut-rank arrays r[0..m] (r[0] = 0, r[m] = n) with every part >= q,
// in lexicographic part-size order.
std::vector<std::vector<std::int64_t>> strip_compositions(std::int64_t n, int m,
                                                          std::int64_t q) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cuts(static_cast<std::size_t>(m) + 1, 0);
  cuts[static_cast<std::size_t>(m)] = n;
  auto rec = [&](auto&& self, int part, std::int64_t used) -> void {
    if (part == m - 1) {
      if (n - used >= q) out.push_back(cuts);
      return;
    }
    for (std::int64_t len = q; used + len + q * (m - part - 1) <= n; ++len) {
      cuts[static_cast<std::size_t>(part) + 1] = used + len;
      self(self, part + 1, used + len);
    }
  };
  rec(rec, 0, 0);
  return out;
}

// Streams every assignment of counts to the m^d cells (row-major, axis 0
// slowest) with per-cell caps and every axis-slice summing to q. Returns
// false if the visitor stopped the stream.
bool enumerate_plans_capped(int m, int d, std::int64_t q,
                            const std::vector<std::int64_t>& caps,
                            const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
  const std::int64_t cells = static_cast<std::int64_t>(caps.size());
  std::vector<std::vector<int>> mi(static_cast<std::size_t>(cells),
                                   std::vector<int>(static_cast<std::size_t>(d)));
  for (std::int64_t c = 0; c < cells; ++c) {
    std::int64_t rest = c;
    for (int a = d - 1; a >= 0; --a) {
      mi[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)] = static_cast<int>(rest % m);
      rest /= m;
    }
  }
  // cap_after[c][a]: total cap of cells after c (row-major) in c's slice of axis a.
  std::vector<std::vector<std::int64_t>> cap_after(
      static_cast<std::size_t>(cells), std::vector<std::int64_t>(static_cast<std::size_t>(d)));
  std::vector<std::vector<std::int64_t>> suffix(
      static_cast<std::size_t>(d), std::vector<std::int64_t>(static_cast<std::size_t>(m), 0));
  for (std::int64_t c = cells - 1; c >= 0; --c) {
    for (int a = 0; a < d; ++a) {
      const int idx = mi[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)];
      cap_after[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)] =
          suffix[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx)];
      suffix[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx)] +=
          caps[static_cast<std::size_t>(c)];
    }
  }

  std::vector<std::vector<std::int64_t>> rem(
      static_cast<std::size_t>(d), std::vector<std::int64_t>(static_cast<std::size_t>(m), q));
  std::vector<std::int64_t> counts(static_cast<std::size_t>(cells), 0);
  auto rec = [&](auto&& self, std::int64_t c) -> bool {
    if (c == cells) return visit(counts);
    std::int64_t hi = caps[static_cast<std::size_t>(c)];
    std::int64_t lo = 0;
    for (int a = 0; a < d; ++a) {
      const int idx = mi[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)];
      const std::int64_t r = rem[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx)];
      hi = std::min(hi, r);
      lo = std::max(lo, r - cap_after[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)]);
    }
    for (std::int64_t v = lo; v <= hi; ++v) {
      counts[static_cast<std::size_t>(c)] = v;
      for (int a = 0; a < d; ++a) {
        rem[static_cast<std::size_t>(a)]
           [static_cast<std::size_t>(mi[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)])] -= v;
      }
      const bool keep_going = self(self, c + 1);
      for (int a = 0; a < d; ++a) {
        rem[static_cast<std::size_t>(a)]
           [static_cast<std::size_t>(mi[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)])] += v;
      }
      if (!keep_going) return false;
    }
    counts[static_cast<std::size_t>(c)] = 0;
    return true;
  };
  return rec(rec, 0);
}

struct BoundaryContext {
  std::vector<std::int64_t> cell_of_point;           // n entries
  std::vector<std::int64_t> cell_count;              // m^d entries
  std::vector<std::vector<std::int64_t>> cell_members;
  std::vector<std::vector<std::int64_t>> cuts;       // per axis
};

}  // namespace

void enumerate_cell_plans(std::int64_t k, int m,
                          const std::function<bool(const CellPlan&)>& visit) {
  if (m < 1) throw std::invalid_argument("enumerate_cell_plans: m must be positive");
  if (k < 1 || k % m != 0) {
    throw std::invalid_argument("enumerate_cell_plans: k must be a positive multiple of m");
  }
  const std::int64_t q = k / m;
  const std::vector<std::int64_t> caps(static_cast<std::size_t>(m) * static_cast<std::size_t>(m),
                                       q);
  enumerate_plans_capped(m, 2, q, caps, [&](const std::vector<std::int64_t>& counts) {
    CellPlan plan;
    plan.m = m;
    plan.d = 2;
    plan.counts = counts;
    return visit(plan);
  });
}

namespace {

PtasResult ptas_core(const PointMultiset& p, std::int64_t k, int m, int d,
                     std::int64_t budget) {
  if (d < 2) throw std::invalid_argument("ptas: dimension must be at least 2");
  if (p.dim != d) throw DimensionMismatch("ptas: point set dimension disagrees with d");
  if (m < 2) throw std::invalid_argument("ptas: m must be at least 2");
  if (k < 1 || k % m != 0) throw std::invalid_argument("ptas: k must be a positive multiple of m");
  const std::int64_t n = p.size();
  if (k > n) throw std::invalid_argument("ptas: k exceeds set size");
  const std::int64_t q = k / m;

  // Per-axis point order: (coordinate, point, input index). Strips are rank
  // intervals of this order, so duplicate coordinates split deterministically.
  std::vector<std::vector<std::int64_t>> ord(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    auto& o = ord[static_cast<std::size_t>(a)];
    o.resize(static_cast<std::size_t>(n));
    std::iota(o.begin(), o.end(), std::int64_t{0});
    std::sort(o.begin(), o.end(), [&](std::int64_t x, std::int64_t y) {
      const Point& px = p.points[static_cast<std::size_t>(x)];
      const Point& py = p.points[static_cast<std::size_t>(y)];
      if (px[a] != py[a]) return px[a] < py[a];
      if (px != py) return px < py;
      return x < y;
    });
  }

  const auto comps = strip_compositions(n, m, q);
  const std::int64_t ncomp = static_cast<std::int64_t>(comps.size());
  std::int64_t boundaries = 1;
  for (int a = 0; a < d; ++a) {
    if (boundaries > budget / std::max<std::int64_t>(ncomp, 1) + 1) {
      throw BudgetExceeded("ptas: boundary enumeration exceeds the budget");
    }
    boundaries *= ncomp;
  }

  const std::int64_t cells = [&] {
    std::int64_t c = 1;
    for (int a = 0; a < d; ++a) c *= m;
    return c;
  }();

  auto build_context = [&](std::int64_t b, BoundaryContext& ctx) {
    ctx.cuts.assign(static_cast<std::size_t>(d), {});
    std::int64_t rest = b;
    for (int a = d - 1; a >= 0; --a) {
      ctx.cuts[static_cast<std::size_t>(a)] = comps[static_cast<std::size_t>(rest % ncomp)];
      rest /= ncomp;
    }
    ctx.cell_of_point.assign(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < d; ++a) {
      const auto& cuts = ctx.cuts[static_cast<std::size_t>(a)];
      for (int s = 0; s < m; ++s) {
        for (std::int64_t r = cuts[static_cast<std::size_t>(s)];
             r < cuts[static_cast<std::size_t>(s) + 1]; ++r) {
          const std::int64_t pt = ord[static_cast<std::size_t>(a)][static_cast<std::size_t>(r)];
          ctx.cell_of_point[static_cast<std::size_t>(pt)] =
              ctx.cell_of_point[static_cast<std::size_t>(pt)] * (a == 0 ? 1 : m) + s;
        }
      }
    }
    ctx.cell_count.assign(static_cast<std::size_t>(cells), 0);
    ctx.cell_members.assign(static_cast<std::size_t>(cells), {});
    for (std::int64_t i = 0; i < n; ++i) {
      const std::int64_t c = ctx.cell_of_point[static_cast<std::size_t>(i)];
      ++ctx.cell_count[static_cast<std::size_t>(c)];
      ctx.cell_members[static_cast<std::size_t>(c)].push_back(i);
    }
    // Presort each cell's members by (gradient inner product, point, input
    // index); every plan then takes a prefix.
    std::vector<int> mi(static_cast<std::size_t>(d));
    for (std::int64_t c = 0; c < cells; ++c) {
      auto& members = ctx.cell_members[static_cast<std::size_t>(c)];
      if (members.size() < 2) continue;
      std::int64_t rest = c;
      for (int a = d - 1; a >= 0; --a) {
        mi[static_cast<std::size_t>(a)] = static_cast<int>(rest % m);
        rest /= m;
      }
      const std::vector<std::int64_t> grad = cell_gradient(m, q, mi);
      auto dot = [&](std::int64_t i) {
        const Point& pt = p.points[static_cast<std::size_t>(i)];
        std::int64_t v = 0;
        for (int a = 0; a < d; ++a) v += pt[a] * grad[static_cast<std::size_t>(a)];
        return v;
      };
      std::sort(members.begin(), members.end(), [&](std::int64_t x, std::int64_t y) {
        const std::int64_t dx = dot(x), dy = dot(y);
        if (dx != dy) return dx < dy;
        const Point& px = p.points[static_cast<std::size_t>(x)];
        const Point& py = p.points[static_cast<std::size_t>(y)];
        if (px != py) return px < py;
        return x < y;
      });
    }
  };

  // Selected input indices for one cell under one plan: the first cnt
  // entries of the presorted member list.
  auto select_cell = [](const BoundaryContext& ctx, std::int64_t c, std::int64_t cnt,
                        std::vector<std::int64_t>& out) {
    const auto& members = ctx.cell_members[static_cast<std::size_t>(c)];
    out.insert(out.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(cnt));
  };

  std::atomic<std::int64_t> configs{0};
  std::atomic<bool> over_budget{false};

  using Key = std::tuple<Total, std::int64_t, std::int64_t>;  // (total, boundary, plan seq)
  const Key worst{std::numeric_limits<Total>::max(), -1, -1};
  const Key best = min_over(boundaries, worst, [&](std::int64_t b) {
    if (over_budget.load(std::memory_order_relaxed)) return worst;
    BoundaryContext ctx;
    build_context(b, ctx);
    Total local_best = std::numeric_limits<Total>::max();
    std::int64_t local_seq = -1;
    std::int64_t seq = 0;
    std::vector<std::int64_t> sel;
    std::vector<Coord> axis(static_cast<std::size_t>(k));
    enumerate_plans_capped(m, d, q, ctx.cell_count, [&](const std::vector<std::int64_t>& counts) {
      if (configs.fetch_add(1, std::memory_order_relaxed) >= budget) {
        over_budget.store(true, std::memory_order_relaxed);
        return false;
      }
      sel.clear();
      for (std::int64_t c = 0; c < cells; ++c) {
        if (counts[static_cast<std::size_t>(c)] > 0) {
          select_cell(ctx, c, counts[static_cast<std::size_t>(c)], sel);
        }
      }
      Total w = 0;
      for (int a = 0; a < d; ++a) {
        for (std::int64_t i = 0; i < k; ++i) {
          axis[static_cast<std::size_t>(i)] =
              p.points[static_cast<std::size_t>(sel[static_cast<std::size_t>(i)])][a];
        }
        std::sort(axis.begin(), axis.end());
        for (std::int64_t i = 0; i < k; ++i) {
          w += (2 * i - k + 1) * axis[static_cast<std::size_t>(i)];
        }
      }
      if (w < local_best) {
        local_best = w;
        local_seq = seq;
      }
      ++seq;
      return true;
    });
    return Key{local_best, b, local_seq};
  });

  if (over_budget.load()) throw BudgetExceeded("ptas: configuration budget exceeded");
  if (std::get<1>(best) < 0) throw std::runtime_error("ptas: no feasible configuration");

  // Rebuild the winning configuration.
  BoundaryContext ctx;
  build_context(std::get<1>(best), ctx);
  std::vector<std::int64_t> winner_counts;
  std::int64_t seq = 0;
  enumerate_plans_capped(m, d, q, ctx.cell_count, [&](const std::vector<std::int64_t>& counts) {
    if (seq == std::get<2>(best)) {
      winner_counts = counts;
      return false;
    }
    ++seq;
    return true;
  });

  std::vector<std::int64_t> sel;
  for (std::int64_t c = 0; c < cells; ++c) {
    if (winner_counts[static_cast<std::size_t>(c)] > 0) {
      select_cell(ctx, c, winner_counts[static_cast<std::size_t>(c)], sel);
    }
  }

  PtasResult result;
  result.alloc.selected = subset(p, sel);
  result.alloc.total_distance = std::get<0>(best);
  result.alloc.algorithm = "ptas";
  result.strips.m = m;
  result.strips.axis_bounds.resize(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    auto& bounds = result.strips.axis_bounds[static_cast<std::size_t>(a)];
    bounds.resize(static_cast<std::size_t>(m) + 1);
    const auto& cuts = ctx.cuts[static_cast<std::size_t>(a)];
    const auto& o = ord[static_cast<std::size_t>(a)];
    bounds[0] = p.points[static_cast<std::size_t>(o[0])][a];
    for (int s = 1; s <= m; ++s) {
      bounds[static_cast<std::size_t>(s)] =
          p.points[static_cast<std::size_t>(
              o[static_cast<std::size_t>(cuts[static_cast<std::size_t>(s)]) - 1])][a];
    }
  }
  result.plan.m = m;
  result.plan.d = d;
  result.plan.counts = std::move(winner_counts);
  return result;
}

}  // namespace

PtasResult ptas_select(const PointMultiset& p, std::int64_t k, int m, std::int64_t budget) {
  if (m < 5) throw std::invalid_argument("ptas_select: m must be at least 5");
  return ptas_core(p, k, m, 2, budget);
}

PtasResult ptas_select_d(const PointMultiset& p, std::int64_t k, int m, int d,
                         std::int64_t budget) {
  return ptas_core(p, k, m, d, budget);
}

}  // namespace palloc
