#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cjsr/numerics.hpp"
#include "cjsr/scenario.hpp"

namespace cjsr {

class TooFewSamples : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// How the sampling mass of a product enters the confidence correction:
//   exact    - minimal product probability p_{l,min}
//   uniform  - product count |Pi_l| (valid when the walk measure is uniform)
//   entropy  - 2^{l h(G)}, a labeled approximation of |Pi_l| at finite l
//   eigen    - |V| lambda_max^l (needs a diagonalizable adjacency matrix)
enum class BoundVariant { exact, uniform, entropy, eigen };

std::string to_string(BoundVariant v);
std::optional<BoundVariant> variant_from_string(const std::string& s);

// Context numbers for the chosen variant plus their provenance.
struct BoundContext {
    std::optional<double> p_min;
    std::optional<double> product_count;
    std::optional<double> entropy;
    std::optional<double> lambda_max;
    std::optional<int> node_count;
    bool from_model = false;
    std::vector<std::string> warnings;
};

struct Certificate {
    double beta;
    int sample_count;  // N
    int length;        // l
    int dim;           // n
    int packed;        // d = n(n+1)/2
    double gamma_star;
    SymMatrix p_star;
    double epsilon;
    double kappa;
    double mass_term;  // the variant's amplification mass
    BoundVariant variant;
    double delta;      // in (0,1] when informative, 0 otherwise
    double bound;      // gamma_star / delta^{1/l}; +inf when non-informative
    bool informative;
    std::vector<std::string> warnings;
    double gamma_tol;
    double feas_tol;
    double box_upper;  // C
};

// epsilon(beta, N) = 1 - Phi(1-beta, d+1, N-d), evaluated in the symmetric
// form I_beta(N-d, d+1) so that tiny values survive. Requires N >= d+1.
double scenario_epsilon(double beta, long sample_count, int packed);

struct DeltaResult {
    double delta;
    bool informative;
    double q;  // argument handed to the inverse beta function
};

// delta = sqrt(1 - Phi^{-1}(q, (n-1)/2, 1/2)) with q = epsilon * kappa * amplifier;
// q >= 1 yields the non-informative outcome instead of delta = 0 artifacts.
DeltaResult scenario_delta(double epsilon_value, double kappa_value, double amplifier, int dim);

Certificate certify(const ScenarioSolution& solution, BoundVariant variant, double beta,
                    const BoundContext& context, const ScenarioConfig& config);

}  // namespace cjsr
