#pragma once

#include <vector>

#include "cjsr/products.hpp"
#include "cjsr/scenario.hpp"
#include "cjsr/system.hpp"

namespace cjsr {

struct ModelSolution {
    double gamma;
    SymMatrix p;
    OracleStats stats;
};

// gamma*(Delta) of the robust program: the for-all-x constraint over the
// sphere is the matrix inequality A^T P A <= gamma^{2l} P for every product
// in Pi_l, separated through its most violating eigenvector.
ModelSolution gamma_model(const SystemSpec& system, int length, const ScenarioConfig& config = {},
                          Exec exec = Exec::parallel);

struct CycleBound {
    double lower;
    std::vector<int> witness;  // cycle word attaining the bound
};

// max over admissible cycles of spectral_radius(product)^{1/len}; cyclic
// rotations of the same cycle are deduplicated.
CycleBound cjsr_lower(const SystemSpec& system, int max_cycle_len);

struct CjsrBracket {
    double lower;
    double upper;
    std::vector<int> lower_witness;
    int upper_l;
};

// lower: cycle bound up to max(length, |V|); upper: gamma_model(length).
CjsrBracket cjsr_bracket(const SystemSpec& system, int length, const ScenarioConfig& config = {},
                         Exec exec = Exec::parallel);

}  // namespace cjsr
