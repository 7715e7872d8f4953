#pragma once

#ifdef LVOA_HAVE_OPENMP
#include <omp.h>
#endif

namespace lvoa {

// Worker count for the OpenMP kernels; 0 keeps the runtime default.
inline void set_thread_count(int threads) {
#ifdef LVOA_HAVE_OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

inline int thread_count() {
#ifdef LVOA_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace lvoa
