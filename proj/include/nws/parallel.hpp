#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nws {

/// Execution mode for the data-parallel kernels. Every kernel produces
/// bit-identical results in both modes (no parallel reductions); the serial
/// path is the reference the tests and the benchmark compare against.
enum class Exec { serial, parallel };

/// Worker cap: NWS_LAB_THREADS when set and positive, else all hardware
/// threads. Read once.
int max_threads();

/// Applies the worker cap to the OpenMP runtime. Called by the CLI at startup.
void apply_thread_cap();

/// Loops with fewer than this many iterations run serially even in parallel
/// mode; cheap pointwise kernels lose to the fork/join overhead below it.
/// Callers whose per-iteration work is heavy pass min_parallel = 1.
inline constexpr std::int64_t kParallelGrain = 4096;

template <class Body>
void parallel_for(std::int64_t n, Exec exec, const Body& body,
                  std::int64_t min_parallel = kParallelGrain) {
#ifdef _OPENMP
    if (exec == Exec::parallel && n >= min_parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
#else
    (void)exec;
    (void)min_parallel;
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        body(i);
    }
}

} // namespace nws
