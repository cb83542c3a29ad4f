#include "gesturegate/parallel.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gesturegate {

int worker_count() {
  int max_workers = 1;
#ifdef _OPENMP
  max_workers = omp_get_max_threads();
#endif
  if (max_workers < 1) max_workers = 1;

  if (const char* env = std::getenv("GESTURE_GATE_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0 && cap < max_workers) return static_cast<int>(cap);
  }
  return max_workers;
}

}  // namespace gesturegate
