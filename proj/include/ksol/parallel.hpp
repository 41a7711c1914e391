// Execution policy for the data-parallel kernels (boundary sweeps, catalog
// runs). Serial is the reference implementation; Parallel runs the same loop
// body under OpenMP. Results are written to preallocated slots by index, so
// both policies produce identical output.
#ifndef KSOL_PARALLEL_HPP
#define KSOL_PARALLEL_HPP

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ksol {

enum class Exec { Serial, Parallel };

template <class F>
void parallel_for(long n, Exec exec, F&& fn) {
#ifdef _OPENMP
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
#endif
    (void)exec;
    for (long i = 0; i < n; ++i) fn(i);
}

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_thread_count(int jobs) {
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#else
    (void)jobs;
#endif
}

}  // namespace ksol

#endif
