#include "cjsr/bounds.hpp"

#include <cmath>
#include <limits>

namespace cjsr {

std::string to_string(BoundVariant v) {
    switch (v) {
        case BoundVariant::exact: return "exact";
        case BoundVariant::uniform: return "uniform";
        case BoundVariant::entropy: return "entropy";
        case BoundVariant::eigen: return "eigen";
    }
    return "?";
}

std::optional<BoundVariant> variant_from_string(const std::string& s) {
    if (s == "exact") return BoundVariant::exact;
    if (s == "uniform") return BoundVariant::uniform;
    if (s == "entropy") return BoundVariant::entropy;
    if (s == "eigen") return BoundVariant::eigen;
    return std::nullopt;
}

double scenario_epsilon(double beta, long sample_count, int packed) {
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in the open interval (0,1)");
    if (sample_count <= packed)
        throw TooFewSamples("N = " + std::to_string(sample_count) +
                            " violates N >= d := n(n+1)/2 (and the closed form needs N >= d+1, d = " +
                            std::to_string(packed) + ")");
    // 1 - I_{1-beta}(d+1, N-d) == I_beta(N-d, d+1)
    return reg_inc_beta(beta, static_cast<double>(sample_count - packed),
                        static_cast<double>(packed) + 1.0);
}

DeltaResult scenario_delta(double epsilon_value, double kappa_value, double amplifier, int dim) {
    const double q = epsilon_value * kappa_value * amplifier;
    if (!(q < 1.0)) return {0.0, false, q};
    if (q <= 0.0) return {1.0, true, q};
    if (dim == 1) return {1.0, true, q};  // (n-1)/2 = 0: the inverse beta degenerates to 0
    const double x = reg_inc_beta_inv(q, 0.5 * (dim - 1), 0.5);
    return {std::sqrt(1.0 - x), true, q};
}

Certificate certify(const ScenarioSolution& solution, BoundVariant variant, double beta,
                    const BoundContext& context, const ScenarioConfig& config) {
    const int n = solution.p_star.dim();
    Certificate cert;
    cert.beta = beta;
    cert.sample_count = solution.sample_count;
    cert.length = solution.length;
    cert.dim = n;
    cert.packed = n * (n + 1) / 2;
    cert.gamma_star = solution.gamma_star;
    cert.p_star = solution.p_star;
    cert.variant = variant;
    cert.warnings = context.warnings;
    cert.gamma_tol = config.gamma_tol;
    cert.feas_tol = config.feas_tol;
    cert.box_upper = config.C;

    cert.epsilon = scenario_epsilon(beta, solution.sample_count, cert.packed);
    cert.kappa = kappa(solution.p_star);

    double amplifier;
    switch (variant) {
        case BoundVariant::exact:
            if (!context.p_min || !(*context.p_min > 0.0))
                throw DomainError("exact variant needs p_min > 0");
            cert.mass_term = *context.p_min;
            amplifier = 1.0 / *context.p_min;
            break;
        case BoundVariant::uniform:
            if (!context.product_count || !(*context.product_count >= 1.0))
                throw DomainError("uniform variant needs the product count");
            cert.mass_term = *context.product_count;
            amplifier = *context.product_count;
            break;
        case BoundVariant::entropy: {
            if (!context.entropy) throw DomainError("entropy variant needs h(G)");
            // computed in log2 space; may overflow to +inf, which simply
            // yields the non-informative outcome
            cert.mass_term = std::exp2(static_cast<double>(solution.length) * *context.entropy);
            amplifier = cert.mass_term;
            break;
        }
        case BoundVariant::eigen:
            if (!context.lambda_max || !context.node_count)
                throw DomainError("eigen variant needs lambda_max and |V|");
            cert.mass_term = static_cast<double>(*context.node_count) *
                             std::pow(*context.lambda_max, static_cast<double>(solution.length));
            amplifier = cert.mass_term;
            break;
        default:
            throw DomainError("unknown bound variant");
    }

    const DeltaResult d = scenario_delta(cert.epsilon, cert.kappa, amplifier, n);
    cert.delta = d.delta;
    cert.informative = d.informative;
    if (d.informative) {
        // 1/delta^{1/l} in log space to dodge underflow at large l
        cert.bound = cert.gamma_star * std::exp(-std::log(d.delta) / solution.length);
    } else {
        cert.bound = std::numeric_limits<double>::infinity();
    }
    return cert;
}

}  // namespace cjsr
