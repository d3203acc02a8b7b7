// Timing harness for the parallel kernels against their serial references.
// Wall-clock only; correctness cross-checks are asserted on every case.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "palloc/allocators.hpp"
#include "palloc/geometry.hpp"
#include "palloc/instances.hpp"
#include "palloc/optimal.hpp"
#include "palloc/parallel.hpp"
#include "palloc/ptas.hpp"
#include "palloc/reference.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool match) {
  std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms, match ? "results match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int threads = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--threads") threads = std::stoi(argv[i + 1]);
  }
  std::printf("workers: %d\n", threads > 0 ? threads : palloc::thread_count());

  const palloc::Mesh mesh = palloc::gen_random_mesh({32, 32}, 0.3, 7);
  const palloc::PointMultiset free = mesh.free_points();
  const palloc::PointMultiset oracle_points = palloc::gen_random_points(22, 2, 0, 40, 11);
  const palloc::PointMultiset ptas_points = palloc::gen_random_points(12, 2, 0, 50, 13);

  {
    palloc::Allocation serial_out, parallel_out;
    const double s = time_ms([&] { serial_out = palloc::ref::mm_allocate(free, 32); }, 3);
    palloc::set_thread_count(threads);
    const double p = time_ms([&] { parallel_out = palloc::mm_allocate(free, 32); }, 3);
    palloc::set_thread_count(1);
    report("mm 32x32 mesh, k=32", s, p,
           serial_out.selected == parallel_out.selected &&
               serial_out.total_distance == parallel_out.total_distance);
  }
  {
    palloc::Allocation serial_out, parallel_out;
    const double s = time_ms([&] { serial_out = palloc::ref::mc1x1_select(free, 32); }, 3);
    palloc::set_thread_count(threads);
    const double p = time_ms([&] { parallel_out = palloc::mc1x1_select(free, 32); }, 3);
    palloc::set_thread_count(1);
    report("mc1x1 32x32 mesh, k=32", s, p,
           serial_out.selected == parallel_out.selected &&
               serial_out.sigma == parallel_out.sigma);
  }
  {
    palloc::Allocation serial_out, parallel_out;
    const double s =
        time_ms([&] { serial_out = palloc::ref::brute_force_opt(oracle_points, 8); }, 1);
    palloc::set_thread_count(threads);
    const double p = time_ms([&] { parallel_out = palloc::brute_force_opt(oracle_points, 8); }, 1);
    palloc::set_thread_count(1);
    report("oracle n=22, k=8", s, p,
           serial_out.selected == parallel_out.selected &&
               serial_out.total_distance == parallel_out.total_distance);
  }
  {
    palloc::PtasResult serial_out, parallel_out;
    palloc::set_thread_count(1);
    const double s = time_ms([&] { serial_out = palloc::ptas_select(ptas_points, 5, 5); }, 1);
    palloc::set_thread_count(threads);
    const double p = time_ms([&] { parallel_out = palloc::ptas_select(ptas_points, 5, 5); }, 1);
    palloc::set_thread_count(1);
    report("ptas n=12, k=m=5", s, p,
           serial_out.alloc.selected == parallel_out.alloc.selected &&
               serial_out.alloc.total_distance == parallel_out.alloc.total_distance);
  }
  {
    const palloc::PointMultiset big = palloc::gen_random_points(5000, 3, -1000, 1000, 17);
    palloc::Total a = 0, b = 0;
    const double s = time_ms([&] { a = palloc::ref::pairwise_sum_direct(big); }, 3);
    const double p = time_ms([&] { b = palloc::pairwise_sum(big); }, 3);
    report("pairwise n=5000 (formula)", s, p, a == b);
  }
  return 0;
}
