#include "lpdec/parallel.hpp"

#include <cstdlib>
#include <string>

namespace lpdec {

int default_workers() {
  if (const char* env = std::getenv("LPDEC_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (...) {
    }
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace lpdec
