#include "cjsr/products.hpp"

#include <algorithm>
#include <cmath>

#include "cjsr/automaton.hpp"

namespace cjsr {

namespace {

struct Enumerator {
    const SystemSpec& system;
    int length;
    std::size_t max_words;

    std::vector<int> word;
    std::size_t emitted = 0;
    double p_min_word = 1.0;
    std::vector<ProductEntry> entries;

    void emit(const Matrix& product, double probability) {
        if (++emitted > max_words) throw TooManyWords("word enumeration exceeds the guard");
        p_min_word = std::min(p_min_word, probability);
        const double nrm = product.frobenius();
        for (ProductEntry& e : entries) {
            const double ref = e.product.frobenius();
            if ((e.product - product).frobenius() <= 1e-9 * std::max({nrm, ref, 1e-300})) {
                e.probability += probability;  // word emitted later is lexicographically larger
                return;
            }
        }
        entries.push_back(ProductEntry{product, word, probability});
    }

    // depth-first over label strings in lexicographic order; `mass` carries the
    // per-node walk probability of the current prefix
    void expand(int depth, const std::vector<double>& mass, const Matrix& product) {
        if (depth == length) {
            double total = 0.0;
            for (double m : mass) total += m;
            emit(product, total);
            return;
        }
        for (int label = 1; label <= system.mode_count(); ++label) {
            const std::vector<double> next = walk_step(system.automaton, mass, label);
            bool alive = false;
            for (double m : next)
                if (m > 0.0) {
                    alive = true;
                    break;
                }
            if (!alive) continue;
            word.push_back(label);
            // later labels multiply on the left
            expand(depth + 1, next, system.matrices[label - 1] * product);
            word.pop_back();
        }
    }
};

}  // namespace

ProductSet enumerate_products(const SystemSpec& system, int length, std::size_t max_words) {
    if (length < 1) throw DomainError("enumerate_products: length must be >= 1");

    Enumerator e{system, length, max_words, {}, 0, 1.0, {}};
    const std::vector<double> uniform(system.automaton.node_count(),
                                      1.0 / system.automaton.node_count());
    e.expand(0, uniform, Matrix::identity(system.dim));

    ProductSet out;
    out.length = length;
    out.entries = std::move(e.entries);
    out.word_count = e.emitted;
    out.p_min_word = e.p_min_word;
    out.p_min = 1.0;
    for (const ProductEntry& entry : out.entries) out.p_min = std::min(out.p_min, entry.probability);
    return out;
}

std::vector<BarabanovFinding> barabanov_flag(const ProductSet& products) {
    std::vector<BarabanovFinding> findings;
    for (std::size_t k = 0; k < products.entries.size(); ++k) {
        const Matrix& a = products.entries[k].product;
        const auto eig = eigenvalues(a);
        double lo = 1e300, hi = 0.0;
        for (const auto& l : eig) {
            lo = std::min(lo, std::abs(l));
            hi = std::max(hi, std::abs(l));
        }
        if (hi - lo > 1e-6 * std::max(hi, 1e-300)) continue;
        if (!diagonalizability(a).diagonalizable) continue;
        findings.push_back(BarabanovFinding{k, hi});
    }
    return findings;
}

}  // namespace cjsr
