#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cjsr/system.hpp"

namespace cjsr {

class TooManyWords : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProductEntry {
    Matrix product;            // A_{s(l-1)} ... A_{s(0)}
    std::vector<int> word;     // lexicographically smallest word realizing it
    double probability;        // aggregated walk probability over merged words
};

struct ProductSet {
    int length;
    std::vector<ProductEntry> entries;
    std::size_t word_count;     // |L_{G,l}|
    double p_min;               // matrix-level minimum (post-merge)
    double p_min_word;          // word-level minimum, conservative fallback

    std::size_t distinct_count() const { return entries.size(); }
};

// All admissible products of the given length with their sampling
// probabilities; words whose products coincide (relative Frobenius
// tolerance 1e-9) are merged and their probabilities summed.
ProductSet enumerate_products(const SystemSpec& system, int length,
                              std::size_t max_words = 1'000'000);

struct BarabanovFinding {
    std::size_t entry_index;
    double modulus;  // common eigenvalue modulus of the flagged product
};

// Heuristic detector for products similar to a scaled orthogonal matrix:
// all eigenvalue moduli equal (relative 1e-6) and a well-conditioned
// eigenvector matrix.
std::vector<BarabanovFinding> barabanov_flag(const ProductSet& products);

}  // namespace cjsr
