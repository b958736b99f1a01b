#include "cjsr/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cjsr {

namespace {

class EllipsoidState {
public:
    EllipsoidState(std::vector<double> center, double radius)
        : d_(static_cast<int>(center.size())),
          z_(std::move(center)),
          b_(static_cast<std::size_t>(d_) * d_, 0.0),
          lndet_(2.0 * d_ * std::log(radius)) {
        for (int i = 0; i < d_; ++i) at(i, i) = radius * radius;
    }

    const std::vector<double>& center() const { return z_; }
    // geometric mean of the semi-axes
    double equivalent_radius() const { return std::exp(lndet_ / (2.0 * d_)); }

    enum class CutResult { ok, empty, breakdown };

    // cut g.x <= h, |g| = 1
    CutResult apply(const std::vector<double>& g, double h) {
        double gz = 0.0;
        for (int i = 0; i < d_; ++i) gz += g[i] * z_[i];

        if (d_ == 1) {
            // interval arithmetic is exact in one dimension
            const double r = std::sqrt(at(0, 0));
            double lo = z_[0] - r, hi = z_[0] + r;
            if (g[0] > 0.0)
                hi = std::min(hi, h / g[0]);
            else
                lo = std::max(lo, h / g[0]);
            if (lo > hi) return CutResult::empty;
            z_[0] = 0.5 * (lo + hi);
            const double nr = std::max(0.5 * (hi - lo), 1e-300);
            at(0, 0) = nr * nr;
            lndet_ = 2.0 * std::log(nr);
            return CutResult::ok;
        }

        std::vector<double> bg(d_, 0.0);
        for (int i = 0; i < d_; ++i) {
            double s = 0.0;
            for (int j = 0; j < d_; ++j) s += at(i, j) * g[j];
            bg[i] = s;
        }
        double gbg = 0.0;
        for (int i = 0; i < d_; ++i) gbg += g[i] * bg[i];
        if (!(gbg > 0.0) || !std::isfinite(gbg)) return CutResult::breakdown;
        const double sq = std::sqrt(gbg);

        double alpha = (gz - h) / sq;
        if (alpha >= 1.0) return CutResult::empty;
        if (alpha < 0.0) alpha = 0.0;  // cuts are issued through or beyond the center

        const double dd = static_cast<double>(d_);
        const double tau = (1.0 + dd * alpha) / (dd + 1.0);
        const double sigma = 2.0 * (1.0 + dd * alpha) / ((dd + 1.0) * (1.0 + alpha));
        const double delta = dd * dd * (1.0 - alpha * alpha) / (dd * dd - 1.0);

        for (int i = 0; i < d_; ++i) z_[i] -= tau * bg[i] / sq;
        const double scale = sigma / gbg;
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) at(i, j) = delta * (at(i, j) - scale * bg[i] * bg[j]);
        // keep B symmetric against roundoff drift
        for (int i = 0; i < d_; ++i)
            for (int j = i + 1; j < d_; ++j) {
                const double m = 0.5 * (at(i, j) + at(j, i));
                at(i, j) = at(j, i) = m;
            }
        lndet_ += dd * std::log(delta) + std::log1p(-sigma);
        return CutResult::ok;
    }

private:
    double& at(int i, int j) { return b_[static_cast<std::size_t>(i) * d_ + j]; }
    double at(int i, int j) const { return b_[static_cast<std::size_t>(i) * d_ + j]; }

    int d_;
    std::vector<double> z_;
    std::vector<double> b_;
    double lndet_;
};

}  // namespace

EllipsoidOutcome ellipsoid_feasible(const SeparationOracle& oracle, std::vector<double> center,
                                    double radius, const EllipsoidOptions& options) {
    EllipsoidState state(std::move(center), radius);
    for (long it = 0; it < options.max_iters; ++it) {
        const auto cut = oracle(state.center());
        if (!cut) return {EllipsoidStatus::feasible, state.center(), it};
        const auto res = state.apply(cut->normal, cut->offset);
        if (res == EllipsoidState::CutResult::empty)
            return {EllipsoidStatus::infeasible, state.center(), it};
        if (res == EllipsoidState::CutResult::breakdown)
            return {EllipsoidStatus::iteration_limit, state.center(), it};
        if (state.equivalent_radius() < options.feas_tol)
            return {EllipsoidStatus::infeasible, state.center(), it};
    }
    return {EllipsoidStatus::iteration_limit, state.center(), options.max_iters};
}

EllipsoidOutcome ellipsoid_min_norm(const SeparationOracle& oracle, std::vector<double> center,
                                    double radius, const EllipsoidOptions& options) {
    const int d = static_cast<int>(center.size());
    const double center_norm = std::sqrt(
        std::inner_product(center.begin(), center.end(), center.begin(), 0.0));
    // stop once the volume bound pins the objective gap below ~1e-12 of range
    const double f_range = std::max(1.0, (radius + center_norm) * (radius + center_norm));
    const double stop_radius = radius * (1e-12 / f_range);

    EllipsoidState state(std::move(center), radius);
    EllipsoidOutcome best{EllipsoidStatus::iteration_limit, {}, 0, 0.0};
    bool have_best = false;

    long it = 0;
    for (; it < options.max_iters; ++it) {
        const std::vector<double>& z = state.center();
        const auto cut = oracle(z);
        EllipsoidState::CutResult res;
        if (cut) {
            res = state.apply(cut->normal, cut->offset);
        } else {
            double f = 0.0;
            for (double v : z) f += v * v;
            if (!have_best || f < best.objective) {
                best.point = z;
                best.objective = f;
                have_best = true;
            }
            if (f == 0.0) break;  // unconstrained minimum reached
            std::vector<double> g(d);
            const double nrm = std::sqrt(f);
            for (int i = 0; i < d; ++i) g[i] = z[i] / nrm;
            res = state.apply(g, nrm);  // central cut on the objective
        }
        if (res == EllipsoidState::CutResult::empty) break;
        if (res == EllipsoidState::CutResult::breakdown) break;
        if (state.equivalent_radius() < stop_radius) break;
    }

    if (!have_best) return {EllipsoidStatus::infeasible, state.center(), it, 0.0};
    best.status = EllipsoidStatus::converged;
    best.iterations = it;
    return best;
}

}  // namespace cjsr
