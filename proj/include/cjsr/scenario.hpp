#pragma once

#include <cstdint>
#include <stdexcept>

#include "cjsr/ellipsoid.hpp"
#include "cjsr/numerics.hpp"
#include "cjsr/parallel.hpp"
#include "cjsr/sampling.hpp"

namespace cjsr {

class EmptyObservations : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class IterationLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
    double C = 1e6;            // spectral box I <= P <= C I
    double gamma_tol = 1e-6;   // bisection tolerance on gamma
    double feas_tol = 1e-8;    // constraint slack tolerance
    long max_oracle_iters = 200000;
    std::uint64_t ordering_seed = 0;  // permutes the constraint scan order
};

struct OracleStats {
    long bisection_steps = 0;
    long feasibility_iterations = 0;
    long tie_break_iterations = 0;
    bool tie_break_converged = false;
};

struct ScenarioSolution {
    double gamma_star;
    SymMatrix p_star;
    double active_margin;  // smallest slack over all constraints at p_star (>= -feas_tol)
    OracleStats stats;
    int sample_count;
    int length;
};

enum class FeasibilityStatus { feasible, infeasible, iteration_limit };

struct FeasibilityResult {
    FeasibilityStatus status;
    SymMatrix p;  // valid when feasible
    long iterations;
};

// For fixed gamma the sampled constraints are linear in P; this runs the
// ellipsoid method over the spectral box and either returns a P with every
// slack within feas_tol or certifies that no feas_tol-deep point exists.
FeasibilityResult feasible(double gamma, const ObservationSet& observations,
                           const ScenarioConfig& config, Exec exec = Exec::parallel);

// Bisection on gamma down to gamma_tol, then the Frobenius tie-break at the
// optimum. length overrides observations.length when the latter is unknown.
ScenarioSolution solve(const ObservationSet& observations, int length,
                       const ScenarioConfig& config = {}, Exec exec = Exec::parallel);

}  // namespace cjsr
