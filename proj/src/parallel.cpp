#include "palloc/parallel.hpp"

namespace palloc {

namespace {
int g_thread_count = 0;
}

void set_thread_count(int n) { g_thread_count = n < 0 ? 0 : n; }

int thread_count() {
#ifdef _OPENMP
  if (g_thread_count > 0) return g_thread_count;
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace palloc
