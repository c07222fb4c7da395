#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exstab::detail {

// Index-parallel dispatch: body(i) for i in [0, count). threads == 1 takes the
// serial reference loop; anything else hands the range to OpenMP (threads == 0
// leaves the team size to the runtime). Callers must make body(i) independent
// across i and write only to slot i, so results never depend on scheduling.
template <class F>
void run_indexed(long count, int threads, F&& body) {
#ifdef _OPENMP
    if (threads != 1) {
        if (threads > 0) {
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
            for (long i = 0; i < count; ++i) body(i);
        } else {
#pragma omp parallel for schedule(dynamic, 4)
            for (long i = 0; i < count; ++i) body(i);
        }
        return;
    }
#else
    (void)threads;
#endif
    for (long i = 0; i < count; ++i) body(i);
}

}  // namespace exstab::detail
