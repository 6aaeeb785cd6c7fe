#include "refl1d/parallel.hpp"

#ifdef REFL1D_OPENMP
#include <omp.h>
#endif

namespace refl1d {

namespace {
bool g_parallel = true;
}

void set_parallel(bool on) { g_parallel = on; }
bool parallel_enabled() {
#ifdef REFL1D_OPENMP
  return g_parallel;
#else
  return false;
#endif
}

void set_threads(int n) {
#ifdef REFL1D_OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

namespace detail {

void par_for_impl(std::size_t n, void (*fn)(std::size_t, void*), void* ctx) {
#ifdef REFL1D_OPENMP
  if (g_parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fn(static_cast<std::size_t>(i), ctx);
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i, ctx);
}

}  // namespace detail
}  // namespace refl1d
