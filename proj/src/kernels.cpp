#include "varitas/kernels.hpp"

#include <atomic>

namespace varitas::kernels {

namespace {
std::atomic<int> g_jobs{1};
}

int jobs() noexcept { return g_jobs.load(std::memory_order_relaxed); }

void set_jobs(int n) noexcept {
  if (n < 1) {
#ifdef VARITAS_HAVE_OPENMP
    n = omp_get_num_procs();
#else
    n = 1;
#endif
  }
  g_jobs.store(n, std::memory_order_relaxed);
}

}  // namespace varitas::kernels
