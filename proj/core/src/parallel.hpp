#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qmetric::detail {

// Runs body(i) for i in [0, count) on up to `threads` workers (0: runtime
// default). The first exception thrown by any iteration is rethrown.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  std::exception_ptr failure;
  std::mutex guard;
  const auto n = static_cast<std::ptrdiff_t>(count);
#ifdef _OPENMP
  const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
#else
  (void)threads;
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace qmetric::detail
