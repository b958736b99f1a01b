#include "cjsr/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cjsr/rng.hpp"

namespace cjsr {

namespace {

// Sampled constraints in svec coordinates: <xl xl^T - gamma^{2l} x0 x0^T, P> <= 0.
struct ConstraintTable {
    int dim = 0;        // n
    int packed = 0;     // d
    std::vector<std::vector<double>> a;  // svec(xl xl^T), permuted order
    std::vector<std::vector<double>> b;  // svec(x0 x0^T)

    ConstraintTable(const ObservationSet& obs, std::uint64_t ordering_seed) {
        dim = obs.dim;
        packed = dim * (dim + 1) / 2;
        std::vector<std::size_t> order(obs.items.size());
        std::iota(order.begin(), order.end(), 0);
        if (ordering_seed != 0) {
            SplitMix64 rng(ordering_seed);
            for (std::size_t i = order.size(); i > 1; --i)
                std::swap(order[i - 1], order[rng.next_below(i)]);
        }
        a.reserve(order.size());
        b.reserve(order.size());
        for (std::size_t idx : order) {
            a.push_back(svec_outer(obs.items[idx].xl));
            b.push_back(svec_outer(obs.items[idx].x0));
        }
    }

    std::size_t count() const { return a.size(); }

    // normalized violation of constraint i at point z; vacuous constraints
    // (zero normal) report -inf
    double violation(std::size_t i, const std::vector<double>& z, double gamma_2l) const {
        double dot = 0.0, nrm2 = 0.0;
        const auto& ai = a[i];
        const auto& bi = b[i];
        for (int k = 0; k < packed; ++k) {
            const double c = ai[k] - gamma_2l * bi[k];
            dot += c * z[k];
            nrm2 += c * c;
        }
        if (nrm2 <= 1e-300) return -1e300;
        return dot / std::sqrt(nrm2);
    }

    Cut cut(std::size_t i, double gamma_2l) const {
        Cut c;
        c.normal.resize(packed);
        double nrm2 = 0.0;
        for (int k = 0; k < packed; ++k) {
            c.normal[k] = a[i][k] - gamma_2l * b[i][k];
            nrm2 += c.normal[k] * c.normal[k];
        }
        const double nrm = std::sqrt(nrm2);
        for (double& v : c.normal) v /= nrm;
        c.offset = 0.0;
        return c;
    }
};

struct BoxOracle {
    int dim;
    double upper;  // C

    // most violated of lambda_min(P) >= 1 and lambda_max(P) <= C, with the
    // eigenvector cut realizing it
    std::optional<std::pair<double, Cut>> operator()(const std::vector<double>& z) const {
        const SymMatrix p = SymMatrix::from_svec(z);
        const SymEig eig = sym_eig(p);
        const double v_lo = 1.0 - eig.values.front();
        const double v_hi = eig.values.back() - upper;
        if (v_lo <= 0.0 && v_hi <= 0.0) return std::nullopt;
        std::vector<double> v(dim);
        Cut cut;
        if (v_lo >= v_hi) {
            for (int i = 0; i < dim; ++i) v[i] = eig.vectors(i, 0);
            cut.normal = svec_outer(v);
            for (double& x : cut.normal) x = -x;
            cut.offset = -1.0;
            return std::make_pair(v_lo, cut);
        }
        for (int i = 0; i < dim; ++i) v[i] = eig.vectors(i, dim - 1);
        cut.normal = svec_outer(v);
        cut.offset = upper;
        return std::make_pair(v_hi, cut);
    }
};

SeparationOracle make_oracle(const ConstraintTable& table, double gamma_2l,
                             const ScenarioConfig& config, Exec exec) {
    const BoxOracle box{table.dim, config.C};
    return [&table, gamma_2l, box, feas_tol = config.feas_tol, exec](
               const std::vector<double>& z) -> std::optional<Cut> {
        double worst = -1e300;
        std::optional<Cut> worst_cut;
        if (auto b = box(z); b && b->first > worst) {
            worst = b->first;
            worst_cut = b->second;
        }
        const ScanHit hit = most_violated(
            static_cast<std::ptrdiff_t>(table.count()),
            [&](std::ptrdiff_t i) { return table.violation(i, z, gamma_2l); }, exec);
        if (hit.index >= 0 && hit.violation > worst) {
            worst = hit.violation;
            worst_cut = table.cut(static_cast<std::size_t>(hit.index), gamma_2l);
        }
        if (worst <= feas_tol) return std::nullopt;
        return worst_cut;
    };
}

std::vector<double> box_center(int dim, double upper) {
    SymMatrix p = SymMatrix::identity(dim);
    for (int i = 0; i < dim; ++i) p.at(i, i) = 0.5 * (upper + 1.0);
    return p.to_svec();
}

double box_radius(int dim, double upper) {
    // covers every P with I <= P <= C I, plus slack for deep points
    return std::sqrt(static_cast<double>(dim)) * 0.5 * (upper - 1.0) + 1.0;
}

FeasibilityResult run_feasible(const ConstraintTable& table, double gamma, int length,
                               const ScenarioConfig& config, Exec exec) {
    const double gamma_2l = std::pow(gamma, 2.0 * length);
    const auto oracle = make_oracle(table, gamma_2l, config, exec);
    const EllipsoidOptions opts{config.feas_tol, config.max_oracle_iters};
    const EllipsoidOutcome out =
        ellipsoid_feasible(oracle, box_center(table.dim, config.C), box_radius(table.dim, config.C), opts);
    FeasibilityResult res;
    res.iterations = out.iterations;
    switch (out.status) {
        case EllipsoidStatus::feasible:
            res.status = FeasibilityStatus::feasible;
            res.p = SymMatrix::from_svec(out.point);
            break;
        case EllipsoidStatus::infeasible:
            res.status = FeasibilityStatus::infeasible;
            break;
        default:
            res.status = FeasibilityStatus::iteration_limit;
            break;
    }
    return res;
}

}  // namespace

FeasibilityResult feasible(double gamma, const ObservationSet& observations,
                           const ScenarioConfig& config, Exec exec) {
    if (observations.items.empty()) throw EmptyObservations("feasibility needs observations");
    const int length = observations.length > 0 ? observations.length : 1;
    const ConstraintTable table(observations, config.ordering_seed);
    return run_feasible(table, gamma, length, config, exec);
}

ScenarioSolution solve(const ObservationSet& observations, int length, const ScenarioConfig& config,
                       Exec exec) {
    if (observations.items.empty()) throw EmptyObservations("solve needs observations");
    if (length < 1) throw DomainError("solve: length must be >= 1");

    const ConstraintTable table(observations, config.ordering_seed);
    OracleStats stats;

    // gamma upper bound: P = I is feasible at the worst endpoint growth rate
    double hi = 0.0;
    double lo = 0.0;
    for (const Observation& o : observations.items) {
        double n0 = 0.0, nl = 0.0;
        for (double v : o.x0) n0 += v * v;
        for (double v : o.xl) nl += v * v;
        const double ratio = std::sqrt(nl / n0);
        hi = std::max(hi, std::pow(ratio, 1.0 / length));
        // in the box the same constraint forces gamma^{2l} >= |xl|^2 / (C |x0|^2)
        lo = std::max(lo, std::pow(ratio * ratio / config.C, 0.5 / length));
    }

    SymMatrix p_hi = SymMatrix::identity(table.dim);
    if (hi > 0.0) {
        lo = std::min(lo, hi);
        FeasibilityResult at_hi = run_feasible(table, hi, length, config, exec);
        stats.feasibility_iterations += at_hi.iterations;
        if (at_hi.status == FeasibilityStatus::iteration_limit)
            throw IterationLimit("feasibility oracle hit the iteration limit at gamma_ub");
        if (at_hi.status == FeasibilityStatus::feasible) p_hi = at_hi.p;

        while (hi - lo > config.gamma_tol) {
            const double mid = 0.5 * (lo + hi);
            const FeasibilityResult r = run_feasible(table, mid, length, config, exec);
            ++stats.bisection_steps;
            stats.feasibility_iterations += r.iterations;
            if (r.status == FeasibilityStatus::iteration_limit)
                throw IterationLimit("feasibility oracle hit the iteration limit");
            if (r.status == FeasibilityStatus::feasible) {
                hi = mid;
                p_hi = r.p;
            } else {
                lo = mid;
            }
        }
    }

    // Frobenius tie-break at gamma*
    const double gamma_2l = std::pow(hi, 2.0 * length);
    const auto oracle = make_oracle(table, gamma_2l, config, exec);
    const EllipsoidOptions opts{config.feas_tol, config.max_oracle_iters};
    const EllipsoidOutcome tie = ellipsoid_min_norm(oracle, box_center(table.dim, config.C),
                                                    box_radius(table.dim, config.C), opts);
    stats.tie_break_iterations = tie.iterations;
    stats.tie_break_converged = tie.status == EllipsoidStatus::converged;

    std::vector<double> best = p_hi.to_svec();
    double best_f = std::inner_product(best.begin(), best.end(), best.begin(), 0.0);
    if (tie.status == EllipsoidStatus::converged && tie.objective < best_f) {
        best = tie.point;
        best_f = tie.objective;
    }

    ScenarioSolution sol;
    sol.gamma_star = hi;
    sol.p_star = SymMatrix::from_svec(best);
    sol.sample_count = observations.count();
    sol.length = length;
    sol.stats = stats;

    // active margin: most violated constraint (box included) at the returned point
    const SymEig eig = sym_eig(sol.p_star);
    double worst = std::max(1.0 - eig.values.front(), eig.values.back() - config.C);
    const ScanHit hit = most_violated(
        static_cast<std::ptrdiff_t>(table.count()),
        [&](std::ptrdiff_t i) { return table.violation(i, best, gamma_2l); }, exec);
    if (hit.index >= 0) worst = std::max(worst, hit.violation);
    sol.active_margin = -worst;
    return sol;
}

}  // namespace cjsr
