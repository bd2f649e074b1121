#pragma once

#include <cstdlib>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bulsol {

/// Serial keeps the reference single-thread path; Parallel fans out with
/// OpenMP. Identical results either way: every iteration owns its output
/// slot and its own rng stream.
enum class Exec { Serial, Parallel };

/// OpenMP's thread count, capped by the BULSOL_THREADS environment
/// variable when set. 1 without OpenMP.
inline int max_threads() {
#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif
    if (const char* cap = std::getenv("BULSOL_THREADS")) {
        const int requested = std::atoi(cap);
        if (requested >= 1 && requested < threads) threads = requested;
    }
    return threads;
}

template <typename Body>
void parallel_for(std::size_t count, Exec mode, Body&& body) {
#ifdef _OPENMP
    if (mode == Exec::Parallel) {
        const int threads = max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < count; ++i) body(i);
}

} // namespace bulsol
