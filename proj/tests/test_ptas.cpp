#include <doctest.h>

#include <algorithm>
#include <map>

#include "palloc/geometry.hpp"
#include "palloc/optimal.hpp"
#include "palloc/parallel.hpp"
#include "palloc/ptas.hpp"
#include "support.hpp"

using namespace palloc;
using test_support::pt;
using test_support::pts;
using test_support::random_multiset;

namespace {

std::int64_t factorial(int m) {
  std::int64_t f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

bool plan_margins_ok(const CellPlan& plan, std::int64_t q) {
  for (int i = 0; i < plan.m; ++i) {
    std::int64_t row = 0, col = 0;
    for (int j = 0; j < plan.m; ++j) {
      row += plan.at(i, j);
      col += plan.at(j, i);
      if (plan.at(i, j) < 0) return false;
    }
    if (row != q || col != q) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("ptas") {

TEST_CASE("ptas_factor values") {
  const Fraction f5 = ptas_factor(5);
  CHECK(f5.num == 6);
  CHECK(f5.den == 1);
  const Fraction f6 = ptas_factor(6);
  CHECK(f6.num == 20);
  CHECK(f6.den == 7);
  const Fraction f1000 = ptas_factor(1000);
  CHECK(f1000.value() < 1.004);
  CHECK(f1000.value() > 1.0);
  CHECK_THROWS_AS(ptas_factor(4), std::invalid_argument);
}

TEST_CASE("cell plan enumeration counts") {
  SUBCASE("m=2, k=4 lists the three margin-2 matrices") {
    std::vector<CellPlan> plans;
    enumerate_cell_plans(4, 2, [&](const CellPlan& p) {
      plans.push_back(p);
      return true;
    });
    REQUIRE(plans.size() == 3);
    CHECK(plans[0].counts == std::vector<std::int64_t>{0, 2, 2, 0});
    CHECK(plans[1].counts == std::vector<std::int64_t>{1, 1, 1, 1});
    CHECK(plans[2].counts == std::vector<std::int64_t>{2, 0, 0, 2});
    for (const CellPlan& p : plans) CHECK(plan_margins_ok(p, 2));
  }
  SUBCASE("unit margins give m! permutation plans") {
    for (int m = 2; m <= 4; ++m) {
      std::int64_t count = 0;
      enumerate_cell_plans(m, m, [&](const CellPlan& p) {
        CHECK(plan_margins_ok(p, 1));
        ++count;
        return true;
      });
      CHECK(count == factorial(m));
    }
  }
  SUBCASE("early stop") {
    std::int64_t count = 0;
    enumerate_cell_plans(4, 4, [&](const CellPlan&) { return ++count < 5; });
    CHECK(count == 5);
  }
  CHECK_THROWS(enumerate_cell_plans(5, 2, [](const CellPlan&) { return true; }));
}

TEST_CASE("ptas_select trivial plans") {
  const PointMultiset p = random_multiset(10, 2, 0, 30, 4);
  const PtasResult whole = ptas_select(p, 10, 5);
  CHECK(whole.alloc.selected.size() == 10);
  CHECK(whole.alloc.total_distance == pairwise_sum(p));

  std::vector<Point> same(6, pt({3, 3}));
  const PtasResult coincident = ptas_select_d(make_multiset(same), 6, 2, 2);
  CHECK(coincident.alloc.total_distance == 0);
}

TEST_CASE("ptas_select argument validation") {
  const PointMultiset p = random_multiset(10, 2, 0, 30, 4);
  CHECK_THROWS_AS(ptas_select(p, 10, 4), std::invalid_argument);   // m < 5
  CHECK_THROWS_AS(ptas_select(p, 7, 5), std::invalid_argument);    // 5 does not divide 7
  CHECK_THROWS_AS(ptas_select(p, 15, 5), std::invalid_argument);   // k > n
  CHECK_THROWS_AS(ptas_select(p, 10, 5, 0), BudgetExceeded);       // zero budget
  CHECK_THROWS_AS(ptas_select_d(p, 10, 5, 3), DimensionMismatch);  // d disagrees
}

TEST_CASE("ptas respects the certified factor against the oracle") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const std::int64_t n = 7 + static_cast<std::int64_t>(seed % 4);
    const PointMultiset p = random_multiset(n, 2, 0, 25, seed);
    const PtasResult r = ptas_select(p, 5, 5);
    const Total opt = brute_force_opt(p, 5).total_distance;
    CHECK(r.alloc.total_distance >= opt);
    CHECK(r.alloc.total_distance <= 6 * opt);  // ptas_factor(5) = 6
  }
}

TEST_CASE("selected configuration matches its cell plan") {
  // Wide coordinate range so per-axis coordinates are distinct and the
  // closed-slab reconstruction below is exact.
  const PointMultiset p = random_multiset(9, 2, 0, 100000, 6);
  for (int a = 0; a < 2; ++a) {
    std::vector<Coord> axis;
    for (const Point& q : p.points) axis.push_back(q[a]);
    std::sort(axis.begin(), axis.end());
    REQUIRE(std::adjacent_find(axis.begin(), axis.end()) == axis.end());
  }
  const PtasResult r = ptas_select(p, 5, 5);
  REQUIRE(r.plan.counts.size() == 25);
  auto strip_of = [&](Coord value, const std::vector<Coord>& bounds) {
    for (int s = 0; s + 1 < static_cast<int>(bounds.size()); ++s) {
      if (value <= bounds[static_cast<std::size_t>(s) + 1]) return s;
    }
    return static_cast<int>(bounds.size()) - 2;
  };
  std::map<std::pair<int, int>, std::int64_t> cell_counts;
  for (const Point& q : r.alloc.selected.points) {
    cell_counts[{strip_of(q[0], r.strips.axis_bounds[0]),
                 strip_of(q[1], r.strips.axis_bounds[1])}]++;
  }
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const auto it = cell_counts.find({i, j});
      const std::int64_t have = it == cell_counts.end() ? 0 : it->second;
      CHECK(have == r.plan.at(i, j));
    }
  }
}

TEST_CASE("d=2 specialization equals ptas_select") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const PointMultiset p = random_multiset(8, 2, 0, 20, seed);
    const PtasResult a = ptas_select(p, 5, 5);
    const PtasResult b = ptas_select_d(p, 5, 5, 2);
    CHECK(a.alloc.selected == b.alloc.selected);
    CHECK(a.alloc.total_distance == b.alloc.total_distance);
    CHECK(a.plan.counts == b.plan.counts);
  }
}

TEST_CASE("three dimensions stay near the oracle") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const PointMultiset p = random_multiset(9, 3, 0, 12, seed);
    const PtasResult r = ptas_select_d(p, 3, 3, 3);
    const Total opt = brute_force_opt(p, 3).total_distance;
    CHECK(r.alloc.total_distance >= opt);
    CHECK(r.alloc.total_distance <= 2 * opt);
  }
}

TEST_CASE("ptas is deterministic across worker counts") {
  const PointMultiset p = random_multiset(10, 2, 0, 18, 12);
  set_thread_count(1);
  const PtasResult serial = ptas_select(p, 5, 5);
  for (int workers : {2, 4}) {
    set_thread_count(workers);
    const PtasResult par = ptas_select(p, 5, 5);
    CHECK(par.alloc.selected == serial.alloc.selected);
    CHECK(par.alloc.total_distance == serial.alloc.total_distance);
    CHECK(par.plan.counts == serial.plan.counts);
    CHECK(par.strips.axis_bounds == serial.strips.axis_bounds);
  }
  set_thread_count(0);
}

}  // TEST_SUITE
