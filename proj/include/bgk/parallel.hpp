#pragma once

#include <atomic>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bgk {

// Runs fn(i) for i in [0, n). threads == 1 takes the plain serial loop;
// threads == 0 uses the OpenMP runtime default. Per-iteration work must be
// independent; the first exception is captured and rethrown after the region,
// and results are bitwise independent of the worker count.
template <class F>
void parallel_for(int n, int threads, F&& fn) {
  if (threads == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
#ifdef _OPENMP
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (int i = 0; i < n; ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      fn(i);
    } catch (...) {
#pragma omp critical(bgk_parallel_for_err)
      {
        if (!failed.load(std::memory_order_relaxed)) {
          err = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    }
  }
  if (err) std::rethrow_exception(err);
#else
  for (int i = 0; i < n; ++i) fn(i);
#endif
}

}  // namespace bgk
