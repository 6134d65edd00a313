#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace coflat {

/// Entry computations for distinct tensor indices are independent; parallel
/// mode distributes them over OpenMP threads and writes into preallocated
/// canonical-order slots, so results are identical to the serial reference
/// regardless of thread count. serial is the reference path used by tests.
enum class ExecMode { serial, parallel };

template <class F>
void for_each_index(std::size_t count, ExecMode mode, F&& body) {
#ifdef _OPENMP
    if (mode == ExecMode::parallel) {
        #pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(count); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < count; ++i) body(i);
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace coflat
