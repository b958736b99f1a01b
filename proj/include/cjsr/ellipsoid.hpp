#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace cjsr {

// Halfspace cut g.x <= offset with |g| = 1.
struct Cut {
    std::vector<double> normal;
    double offset;
};

// Returns a violated cut for the queried point, or nullopt when the point
// satisfies every constraint within the oracle's slack.
using SeparationOracle = std::function<std::optional<Cut>(const std::vector<double>&)>;

enum class EllipsoidStatus {
    feasible,         // point accepted by the oracle
    infeasible,       // certified: no deep feasible point in the start ball
    converged,        // minimization: ellipsoid shrunk below point resolution
    iteration_limit,
};

struct EllipsoidOutcome {
    EllipsoidStatus status;
    std::vector<double> point;
    long iterations = 0;
    double objective = 0.0;  // |point|^2 for the norm minimizer
};

struct EllipsoidOptions {
    double feas_tol = 1e-8;   // deep-feasibility radius for the infeasibility certificate
    long max_iters = 200000;
};

// Deep-cut ellipsoid method over the ball B(center, radius). Declares
// infeasibility once the ellipsoid volume drops below the volume of a
// feas_tol-ball, i.e. no point satisfies every cut with slack >= feas_tol.
EllipsoidOutcome ellipsoid_feasible(const SeparationOracle& oracle, std::vector<double> center,
                                    double radius, const EllipsoidOptions& options);

// Minimizes |x|^2 over the feasible set described by the oracle, cutting on
// the objective at feasible iterates. Returns the best feasible point seen.
EllipsoidOutcome ellipsoid_min_norm(const SeparationOracle& oracle, std::vector<double> center,
                                    double radius, const EllipsoidOptions& options);

}  // namespace cjsr
