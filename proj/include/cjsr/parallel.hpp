#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cjsr {

// Execution policy for the data-parallel kernels. The serial path is the
// reference implementation; results must match bit for bit.
enum class Exec { serial, parallel };

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

struct ScanHit {
    std::ptrdiff_t index = -1;
    double violation = -1e300;
};

inline bool scan_better(const ScanHit& a, const ScanHit& b) {
    return a.violation > b.violation || (a.violation == b.violation && a.index < b.index);
}

// Argmax of violation_at(i) over 0..count-1; ties resolve to the lowest
// index, so the parallel schedule cannot change the result.
template <class F>
ScanHit most_violated(std::ptrdiff_t count, const F& violation_at, Exec exec) {
    ScanHit best;
#ifdef _OPENMP
    if (exec == Exec::parallel && count >= 2048) {
#pragma omp parallel
        {
            ScanHit local;
#pragma omp for schedule(static) nowait
            for (std::ptrdiff_t i = 0; i < count; ++i) {
                const double v = violation_at(i);
                if (v > local.violation) local = {i, v};
            }
#pragma omp critical(cjsr_scan_merge)
            {
                if (scan_better(local, best)) best = local;
            }
        }
        return best;
    }
#else
    (void)exec;
#endif
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const double v = violation_at(i);
        if (v > best.violation) best = {i, v};
    }
    return best;
}

}  // namespace cjsr
