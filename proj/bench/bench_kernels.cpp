// Timings for the OpenMP kernels against their serial reference paths:
// the constraint violation scan and observation synthesis.

#include <chrono>
#include <cstdio>
#include <vector>

#include "cjsr/parallel.hpp"
#include "cjsr/rng.hpp"
#include "cjsr/sampling.hpp"
#include "cjsr/system.hpp"

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

template <class F>
double time_best_of(int reps, const F& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now_seconds();
        f();
        best = std::min(best, now_seconds() - t0);
    }
    return best;
}

}  // namespace

int main() {
    using namespace cjsr;
    std::printf("threads available: %d\n\n", hardware_threads());

    {
        // violation scan over synthetic linear constraints, d = 6
        const std::ptrdiff_t count = 2'000'000;
        const int d = 6;
        SplitMix64 rng(42);
        std::vector<double> table(count * d);
        for (double& v : table) v = rng.next_double() - 0.5;
        std::vector<double> z(d);
        for (double& v : z) v = rng.next_double();

        auto violation = [&](std::ptrdiff_t i) {
            double dot = 0.0;
            for (int k = 0; k < d; ++k) dot += table[i * d + k] * z[k];
            return dot;
        };

        ScanHit serial_hit, parallel_hit;
        const double ts = time_best_of(5, [&] { serial_hit = most_violated(count, violation, Exec::serial); });
        const double tp = time_best_of(5, [&] { parallel_hit = most_violated(count, violation, Exec::parallel); });
        if (serial_hit.index != parallel_hit.index || serial_hit.violation != parallel_hit.violation) {
            std::printf("FAIL: scan results diverge\n");
            return 1;
        }
        std::printf("violation scan, %td constraints:\n", count);
        std::printf("  serial   %8.2f ms\n", ts * 1e3);
        std::printf("  parallel %8.2f ms   speedup %.2fx\n\n", tp * 1e3, ts / tp);
    }

    {
        // observation synthesis, n = 4, l = 6
        const int n = 4;
        std::vector<Matrix> mats;
        for (int m = 0; m < 2; ++m) {
            Matrix a(n);
            SplitMix64 rng(7 + m);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i, j) = 0.4 * (rng.next_double() - 0.5);
            mats.push_back(a);
        }
        Automaton automaton(1, {{0, 0, 1}, {0, 0, 2}}, 2);
        const SystemSpec system = make_system(n, mats, automaton);
        const SamplingConfig config{200000, 6, 1};

        ObservationSet serial_set, parallel_set;
        const double ts = time_best_of(3, [&] { serial_set = synthesize(system, config, Exec::serial); });
        const double tp = time_best_of(3, [&] { parallel_set = synthesize(system, config, Exec::parallel); });
        for (int i = 0; i < serial_set.count(); ++i)
            if (serial_set.items[i].xl != parallel_set.items[i].xl) {
                std::printf("FAIL: synthesis results diverge at %d\n", i);
                return 1;
            }
        std::printf("synthesis, N = %d, n = %d, l = %d:\n", config.count, n, config.length);
        std::printf("  serial   %8.2f ms\n", ts * 1e3);
        std::printf("  parallel %8.2f ms   speedup %.2fx\n", tp * 1e3, ts / tp);
    }
    return 0;
}
