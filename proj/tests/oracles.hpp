#pragma once

// Independent oracles used to pin expected values. Everything here is
// brute force on purpose and must stay independent of the implementation
// paths it checks.

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "cjsr/automaton.hpp"
#include "cjsr/sampling.hpp"
#include "cjsr/system.hpp"

namespace oracles {

// P[Binomial(n, p) >= k] by direct summation of log-space terms.
inline double binomial_tail_at_least(int n, double p, int k) {
    if (k <= 0) return 1.0;
    if (k > n) return 0.0;
    double sum = 0.0;
    for (int i = k; i <= n; ++i) {
        const double ln_term = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) +
                               i * std::log(p) + (n - i) * std::log1p(-p);
        sum += std::exp(ln_term);
    }
    return std::min(sum, 1.0);
}

inline double binomial_tail_at_most(int n, double p, int k) {
    if (k >= n) return 1.0;
    if (k < 0) return 0.0;
    double sum = 0.0;
    for (int i = 0; i <= k; ++i) {
        const double ln_term = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) +
                               i * std::log(p) + (n - i) * std::log1p(-p);
        sum += std::exp(ln_term);
    }
    return std::min(sum, 1.0);
}

// Every accepted word of the given length, by trying all label strings.
inline std::vector<std::vector<int>> enumerate_words(const cjsr::Automaton& g, int length) {
    std::vector<std::vector<int>> words;
    std::vector<int> w(length, 1);
    while (true) {
        if (g.accepts(w)) words.push_back(w);
        int pos = length - 1;
        while (pos >= 0 && w[pos] == g.alphabet_size()) {
            w[pos] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++w[pos];
    }
    return words;
}

// Brute-force solver for the sampled program at n = 2: bisection on gamma
// with a dense grid over P = R(theta) diag(1, t) R(theta)^T. Constraints are
// scale invariant in P, so sections with lambda_min = 1 cover the box.
struct GridSolver {
    int theta_steps = 720;
    int t_steps = 600;
    double box_upper = 1e6;

    bool feasible(const cjsr::ObservationSet& obs, int length, double gamma) const {
        const double g2l = std::pow(gamma, 2.0 * length);
        for (int ti = 0; ti < t_steps; ++ti) {
            const double t = std::exp(std::log(box_upper) * ti / (t_steps - 1.0));
            for (int ai = 0; ai < theta_steps; ++ai) {
                const double th = M_PI * ai / theta_steps;
                const double c = std::cos(th), s = std::sin(th);
                // P = R diag(1, t) R^T
                const double p00 = c * c + t * s * s;
                const double p01 = c * s * (1.0 - t);
                const double p11 = s * s + t * c * c;
                bool ok = true;
                for (const cjsr::Observation& o : obs.items) {
                    const double lhs = p00 * o.xl[0] * o.xl[0] + 2.0 * p01 * o.xl[0] * o.xl[1] +
                                       p11 * o.xl[1] * o.xl[1];
                    const double rhs = p00 * o.x0[0] * o.x0[0] + 2.0 * p01 * o.x0[0] * o.x0[1] +
                                       p11 * o.x0[1] * o.x0[1];
                    if (lhs > g2l * rhs + 1e-14 * (lhs + g2l * rhs)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) return true;
            }
        }
        return false;
    }

    double solve(const cjsr::ObservationSet& obs, int length) const {
        double hi = 0.0;
        for (const cjsr::Observation& o : obs.items) {
            double n0 = 0.0, nl = 0.0;
            for (double v : o.x0) n0 += v * v;
            for (double v : o.xl) nl += v * v;
            hi = std::max(hi, std::pow(std::sqrt(nl / n0), 1.0 / length));
        }
        double lo = 0.0;
        if (hi == 0.0) return 0.0;
        while (hi - lo > 1e-5) {
            const double mid = 0.5 * (lo + hi);
            if (feasible(obs, length, mid))
                hi = mid;
            else
                lo = mid;
        }
        return hi;
    }

    // same grid against the robust matrix inequalities over a product list
    bool feasible_lmi(const std::vector<cjsr::Matrix>& products, int length, double gamma) const {
        const double g2l = std::pow(gamma, 2.0 * length);
        for (int ti = 0; ti < t_steps; ++ti) {
            const double t = std::exp(std::log(box_upper) * ti / (t_steps - 1.0));
            for (int ai = 0; ai < theta_steps; ++ai) {
                const double th = M_PI * ai / theta_steps;
                const double c = std::cos(th), s = std::sin(th);
                const double p00 = c * c + t * s * s;
                const double p01 = c * s * (1.0 - t);
                const double p11 = s * s + t * c * c;
                bool ok = true;
                for (const cjsr::Matrix& a : products) {
                    // q = a^T p a - g2l p must be negative semidefinite
                    const double q00 = a(0, 0) * (p00 * a(0, 0) + p01 * a(1, 0)) +
                                       a(1, 0) * (p01 * a(0, 0) + p11 * a(1, 0)) - g2l * p00;
                    const double q01 = a(0, 0) * (p00 * a(0, 1) + p01 * a(1, 1)) +
                                       a(1, 0) * (p01 * a(0, 1) + p11 * a(1, 1)) - g2l * p01;
                    const double q11 = a(0, 1) * (p00 * a(0, 1) + p01 * a(1, 1)) +
                                       a(1, 1) * (p01 * a(0, 1) + p11 * a(1, 1)) - g2l * p11;
                    const double scale = std::fabs(q00) + std::fabs(q11) + 1e-300;
                    const double trace = q00 + q11;
                    const double det = q00 * q11 - q01 * q01;
                    if (trace > 1e-12 * scale || det < -1e-12 * scale * scale) {
                        ok = false;
                        break;
                    }
                }
                if (ok) return true;
            }
        }
        return false;
    }

    double solve_lmi(const std::vector<cjsr::Matrix>& products, int length) const {
        double hi = 0.0;
        for (const cjsr::Matrix& a : products) {
            double fr = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) fr += a(i, j) * a(i, j);
            hi = std::max(hi, std::pow(std::sqrt(fr), 1.0 / length));
        }
        double lo = 0.0;
        if (hi == 0.0) return 0.0;
        while (hi - lo > 1e-5) {
            const double mid = 0.5 * (lo + hi);
            if (feasible_lmi(products, length, mid))
                hi = mid;
            else
                lo = mid;
        }
        return hi;
    }
};

}  // namespace oracles
