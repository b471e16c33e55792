#include "hdgame/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hdgame {

namespace {
int g_cap = 0;
}

void set_thread_cap(int threads) {
  g_cap = threads < 0 ? 0 : threads;
#ifdef _OPENMP
  if (g_cap > 0) omp_set_num_threads(g_cap);
#endif
}

int thread_cap() { return g_cap; }

void init_threads_from_env() {
  if (const char* env = std::getenv("HDGAME_THREADS")) {
    try {
      set_thread_cap(std::stoi(env));
    } catch (...) {
      // ignore malformed values, keep the OpenMP default
    }
  }
}

}  // namespace hdgame
