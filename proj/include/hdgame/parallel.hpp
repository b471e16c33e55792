#ifndef HDGAME_PARALLEL_HPP
#define HDGAME_PARALLEL_HPP

namespace hdgame {

// Every parallel kernel has a serial reference twin; tests compare the two
// and the bench tool times them. Results are identical by construction
// (max-reductions are order-independent).
enum class Execution { Serial, Parallel };

// 0 means "use the OpenMP default". Applies process-wide.
void set_thread_cap(int threads);
int thread_cap();

// Resolves --threads / HDGAME_THREADS once at startup.
void init_threads_from_env();

}  // namespace hdgame

#endif
