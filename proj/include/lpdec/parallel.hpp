#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lpdec {

// Default worker count: LPDEC_WORKERS env var if set, else the OpenMP
// hardware default, else 1.
int default_workers();

// Index-parallel loop with a serial reference path. workers <= 1 runs the
// plain loop; otherwise OpenMP dynamic scheduling. Bodies must write only
// to their own index so results are identical either way.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& body) {
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(count); ++i)
    body(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < count; ++i) body(i);
#endif
}

}  // namespace lpdec
