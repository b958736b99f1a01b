#include "cjsr/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

namespace cjsr {

namespace {

struct LmiTable {
    int dim;
    int packed;
    double upper;  // C
    const std::vector<ProductEntry>& entries;

    // violation of A^T P A <= g2l P in normalized cut units, together with
    // the most violating direction
    std::pair<double, std::vector<double>> check(std::size_t i, const SymMatrix& p,
                                                 double gamma_2l) const {
        const Matrix& a = entries[i].product;
        // m = a^T p a - g2l p
        Matrix pd = p.to_dense();
        Matrix m = a.transposed() * (pd * a);
        SymMatrix diff(dim);
        for (int r = 0; r < dim; ++r)
            for (int c = r; c < dim; ++c) diff.at(r, c) = 0.5 * (m(r, c) + m(c, r)) - gamma_2l * p(r, c);
        const SymEig eig = sym_eig(diff);
        std::vector<double> v(dim);
        for (int k = 0; k < dim; ++k) v[k] = eig.vectors(k, dim - 1);
        return {eig.values.back(), v};
    }

    // cut from direction v: <(Av)(Av)^T - g2l v v^T, P> <= 0
    Cut cut(std::size_t i, const std::vector<double>& v, double gamma_2l) const {
        const std::vector<double> av = entries[i].product.apply(v);
        const std::vector<double> sa = svec_outer(av);
        const std::vector<double> sb = svec_outer(v);
        Cut c;
        c.normal.resize(packed);
        double nrm2 = 0.0;
        for (int k = 0; k < packed; ++k) {
            c.normal[k] = sa[k] - gamma_2l * sb[k];
            nrm2 += c.normal[k] * c.normal[k];
        }
        const double nrm = std::sqrt(nrm2);
        for (double& x : c.normal) x /= nrm;
        c.offset = 0.0;
        return c;
    }

    // normalized violation used for the scan: lambda_max(diff) / |cut normal|
    double violation(std::size_t i, const SymMatrix& p, double gamma_2l) const {
        const auto [lam, v] = check(i, p, gamma_2l);
        if (lam <= 0.0) return lam;
        const std::vector<double> av = entries[i].product.apply(v);
        const std::vector<double> sa = svec_outer(av);
        const std::vector<double> sb = svec_outer(v);
        double nrm2 = 0.0;
        for (int k = 0; k < packed; ++k) {
            const double c = sa[k] - gamma_2l * sb[k];
            nrm2 += c * c;
        }
        if (nrm2 <= 1e-300) return -1e300;
        return lam / std::sqrt(nrm2);
    }
};

SeparationOracle make_lmi_oracle(const LmiTable& table, double gamma_2l, double feas_tol,
                                 Exec exec) {
    return [&table, gamma_2l, feas_tol, exec](const std::vector<double>& z) -> std::optional<Cut> {
        const SymMatrix p = SymMatrix::from_svec(z);
        const SymEig eig = sym_eig(p);
        double worst = 1.0 - eig.values.front();
        int kind = 0;  // 0 = box lower, 1 = box upper, 2 = lmi
        if (eig.values.back() - table.upper > worst) {
            worst = eig.values.back() - table.upper;
            kind = 1;
        }
        const ScanHit hit =
            most_violated(static_cast<std::ptrdiff_t>(table.entries.size()),
                          [&](std::ptrdiff_t i) { return table.violation(i, p, gamma_2l); }, exec);
        if (hit.index >= 0 && hit.violation > worst) {
            worst = hit.violation;
            kind = 2;
        }
        if (worst <= feas_tol) return std::nullopt;
        Cut cut;
        if (kind == 2) {
            const auto dir = table.check(static_cast<std::size_t>(hit.index), p, gamma_2l).second;
            return table.cut(static_cast<std::size_t>(hit.index), dir, gamma_2l);
        }
        std::vector<double> v(table.dim);
        if (kind == 0) {
            for (int i = 0; i < table.dim; ++i) v[i] = eig.vectors(i, 0);
            cut.normal = svec_outer(v);
            for (double& x : cut.normal) x = -x;
            cut.offset = -1.0;
        } else {
            for (int i = 0; i < table.dim; ++i) v[i] = eig.vectors(i, table.dim - 1);
            cut.normal = svec_outer(v);
            cut.offset = table.upper;
        }
        return cut;
    };
}

std::vector<double> box_center(int dim, double upper) {
    SymMatrix p(dim);
    for (int i = 0; i < dim; ++i) p.at(i, i) = 0.5 * (upper + 1.0);
    return p.to_svec();
}

double box_radius(int dim, double upper) {
    return std::sqrt(static_cast<double>(dim)) * 0.5 * (upper - 1.0) + 1.0;
}

}  // namespace

ModelSolution gamma_model(const SystemSpec& system, int length, const ScenarioConfig& config,
                          Exec exec) {
    const ProductSet products = enumerate_products(system, length);
    const int n = system.dim;
    const LmiTable table{n, n * (n + 1) / 2, config.C, products.entries};
    OracleStats stats;

    double hi = 0.0;
    for (const ProductEntry& e : products.entries) {
        const Matrix g = e.product.transposed() * e.product;
        const SymEig eig = sym_eig(SymMatrix::from_dense(g));
        hi = std::max(hi, std::pow(std::sqrt(std::max(0.0, eig.values.back())), 1.0 / length));
    }
    double lo = 0.0;

    const EllipsoidOptions opts{config.feas_tol, config.max_oracle_iters};
    SymMatrix p_best = SymMatrix::identity(n);
    if (hi > 0.0) {
        while (hi - lo > config.gamma_tol) {
            const double mid = 0.5 * (lo + hi);
            const double gamma_2l = std::pow(mid, 2.0 * length);
            const auto oracle = make_lmi_oracle(table, gamma_2l, config.feas_tol, exec);
            const EllipsoidOutcome out =
                ellipsoid_feasible(oracle, box_center(n, config.C), box_radius(n, config.C), opts);
            ++stats.bisection_steps;
            stats.feasibility_iterations += out.iterations;
            if (out.status == EllipsoidStatus::iteration_limit)
                throw IterationLimit("model feasibility oracle hit the iteration limit");
            if (out.status == EllipsoidStatus::feasible) {
                hi = mid;
                p_best = SymMatrix::from_svec(out.point);
            } else {
                lo = mid;
            }
        }
    }

    const double gamma_2l = std::pow(hi, 2.0 * length);
    const auto oracle = make_lmi_oracle(table, gamma_2l, config.feas_tol, exec);
    const EllipsoidOutcome tie =
        ellipsoid_min_norm(oracle, box_center(n, config.C), box_radius(n, config.C), opts);
    stats.tie_break_iterations = tie.iterations;
    stats.tie_break_converged = tie.status == EllipsoidStatus::converged;

    std::vector<double> best = p_best.to_svec();
    const double best_f = std::inner_product(best.begin(), best.end(), best.begin(), 0.0);
    if (tie.status == EllipsoidStatus::converged && tie.objective < best_f) best = tie.point;

    return ModelSolution{hi, SymMatrix::from_svec(best), stats};
}

namespace {

std::vector<int> canonical_rotation(const std::vector<int>& word) {
    std::vector<int> best = word;
    std::vector<int> rot = word;
    for (std::size_t i = 1; i < word.size(); ++i) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return best;
}

}  // namespace

CycleBound cjsr_lower(const SystemSpec& system, int max_cycle_len) {
    if (max_cycle_len < 1) throw DomainError("cjsr_lower: max_cycle_len must be >= 1");
    const Automaton& g = system.automaton;

    std::set<std::vector<int>> seen;
    CycleBound best{0.0, {}};
    std::vector<int> word;
    long visited = 0;

    // DFS over paths from each start node, collecting closed walks
    std::function<void(int, int, int)> dfs = [&](int start, int node, int depth) {
        if (++visited > 5'000'000) throw TooManyWords("cycle enumeration exceeds the guard");
        if (depth > 0 && node == start) {
            const std::vector<int> canon = canonical_rotation(word);
            if (seen.insert(canon).second) {
                Matrix prod = Matrix::identity(system.dim);
                for (int label : word) prod = system.matrices[label - 1] * prod;
                const double rho = std::pow(spectral_radius(prod), 1.0 / depth);
                if (rho > best.lower) best = {rho, word};
            }
        }
        if (depth == max_cycle_len) return;
        for (const Edge& e : g.out_edges(node)) {
            word.push_back(e.label);
            dfs(start, e.dst, depth + 1);
            word.pop_back();
        }
    };
    for (int start = 0; start < g.node_count(); ++start) dfs(start, start, 0);
    return best;
}

CjsrBracket cjsr_bracket(const SystemSpec& system, int length, const ScenarioConfig& config,
                         Exec exec) {
    // a strongly connected graph always has a cycle within |V| steps
    const int cycle_len = std::max(length, system.automaton.node_count());
    const CycleBound lower = cjsr_lower(system, cycle_len);
    const ModelSolution upper = gamma_model(system, length, config, exec);
    return CjsrBracket{lower.lower, upper.gamma, lower.witness, length};
}

}  // namespace cjsr
