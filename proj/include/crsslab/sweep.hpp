#pragma once

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crsslab {

// Both runners fill results by index, so output order never depends on the
// schedule; the parallel one is only a speedup over the serial reference.

template <typename F>
void run_indexed_serial(int n, F&& f) {
    for (int i = 0; i < n; ++i) f(i);
}

template <typename F>
void run_indexed(int n, int jobs, F&& f) {
#ifdef _OPENMP
    if (jobs > 1) {
#pragma omp parallel for schedule(static) num_threads(jobs)
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
#endif
    run_indexed_serial(n, f);
}

inline int default_jobs() {
    if (const char* env = std::getenv("CRSS_LAB_JOBS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace crsslab
