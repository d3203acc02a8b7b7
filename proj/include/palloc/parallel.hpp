#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace palloc {

/// Sets the worker count used by the parallel kernels. 0 restores the
/// OpenMP default. Results never depend on this setting.
void set_thread_count(int n);

/// The resolved worker count (always >= 1).
int thread_count();

/// Deterministic parallel argmin: evaluates eval(i) for i in [0, n) and
/// returns the smallest key. Keys must embed enough of i to total-order
/// ties, so the result is independent of schedule and worker count.
template <typename Key, typename Eval>
Key min_over(std::int64_t n, Key worst, Eval&& eval, int chunk = 16) {
  const int nt = thread_count();
#ifdef _OPENMP
  if (nt > 1 && n > 1) {
    std::vector<Key> best(static_cast<std::size_t>(nt), worst);
#pragma omp parallel num_threads(nt)
    {
      const int tid = omp_get_thread_num();
      Key local = worst;
#pragma omp for schedule(dynamic, chunk)
      for (std::int64_t i = 0; i < n; ++i) {
        Key k = eval(i);
        if (k < local) local = k;
      }
      best[static_cast<std::size_t>(tid)] = local;
    }
    Key out = worst;
    for (const Key& k : best) {
      if (k < out) out = k;
    }
    return out;
  }
#else
  (void)chunk;
#endif
  Key out = worst;
  for (std::int64_t i = 0; i < n; ++i) {
    Key k = eval(i);
    if (k < out) out = k;
  }
  return out;
}

}  // namespace palloc
