#pragma once

// Small systems and automata shared across the test suites.

#include <cmath>
#include <vector>

#include "cjsr/rng.hpp"
#include "cjsr/system.hpp"

namespace corpus {

using cjsr::Automaton;
using cjsr::Edge;
using cjsr::Matrix;
using cjsr::SystemSpec;

// 1 node, one self-loop per label
inline Automaton full_shift(int m) {
    std::vector<Edge> edges;
    for (int s = 1; s <= m; ++s) edges.push_back({0, 0, s});
    return Automaton(1, edges, m);
}

inline Automaton single_loop() { return full_shift(1); }

// nodes {a=0, b=1}; a->a:1, a->b:2, b->a:1 — forbids the factor "22"
inline Automaton golden_mean() { return Automaton(2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 1}}, 2); }

// directed 3-cycle on one label
inline Automaton three_cycle() { return Automaton(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}, 1); }

// blocks of 2s must have even length
inline Automaton even_shift() { return Automaton(2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 2}}, 2); }

// nondeterministic multigraph: two label choices a->b, single return edge
inline Automaton multi_pair() { return Automaton(2, {{0, 1, 1}, {0, 1, 2}, {1, 0, 1}}, 2); }

inline std::vector<Automaton> all_automata() {
    return {single_loop(), full_shift(2), full_shift(3), golden_mean(), three_cycle(), even_shift(),
            multi_pair()};
}

inline Matrix rotation(double angle, double scale = 1.0) {
    Matrix r(2);
    r(0, 0) = scale * std::cos(angle);
    r(0, 1) = -scale * std::sin(angle);
    r(1, 0) = scale * std::sin(angle);
    r(1, 1) = scale * std::cos(angle);
    return r;
}

inline Matrix diag2(double a, double b) {
    Matrix m(2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

inline Matrix scaled_identity(int n, double c) {
    Matrix m = Matrix::identity(n);
    m *= c;
    return m;
}

inline Matrix random_matrix(int n, cjsr::SplitMix64& rng, double scale = 1.0) {
    Matrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto [g0, g1] = rng.next_normal_pair();
            m(i, j) = scale * g0;
            (void)g1;
        }
    return m;
}

inline SystemSpec random_system(int n, const Automaton& automaton, cjsr::SplitMix64& rng,
                                double scale = 0.5) {
    std::vector<Matrix> mats;
    for (int k = 0; k < automaton.alphabet_size(); ++k)
        mats.push_back(random_matrix(n, rng, scale));
    return cjsr::make_system(n, mats, automaton);
}

}  // namespace corpus
