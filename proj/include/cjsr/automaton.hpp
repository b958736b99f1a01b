#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cjsr/numerics.hpp"

namespace cjsr {

struct Edge {
    int src;
    int dst;
    int label;  // 1-based, in {1..alphabet_size}
};

class AutomatonError : public std::runtime_error {
public:
    enum class Code { not_strongly_connected, dangling_node, bad_label, bad_node, duplicate_edge };

    AutomatonError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

class WordCountOverflow : public std::runtime_error {
public:
    WordCountOverflow(double log2_estimate, const std::string& what)
        : std::runtime_error(what), log2_estimate_(log2_estimate) {}
    double log2_estimate() const { return log2_estimate_; }

private:
    double log2_estimate_;
};

// Strongly connected labelled digraph constraining the switching signal.
// Validation happens at construction: labels in range, no duplicate
// (src,dst,label) triples, out-degree >= 1 everywhere, strong connectivity.
class Automaton {
public:
    Automaton(int node_count, std::vector<Edge> edges, int alphabet_size);

    int node_count() const { return node_count_; }
    int alphabet_size() const { return alphabet_size_; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::span<const Edge> out_edges(int node) const {
        return {edges_.data() + out_offsets_[node], edges_.data() + out_offsets_[node + 1]};
    }
    int out_degree(int node) const { return out_offsets_[node + 1] - out_offsets_[node]; }

    // Adjacency with edge multiplicities (labels ignored).
    Matrix adjacency() const;

    bool accepts(std::span<const int> word) const;

private:
    void validate() const;

    int node_count_ = 0;
    int alphabet_size_ = 0;
    std::vector<Edge> edges_;          // sorted by (src, dst, label)
    std::vector<int> out_offsets_;     // CSR offsets into edges_
};

struct AutomatonStats {
    int node_count;
    double entropy;                          // bits per symbol, log2 of the Perron eigenvalue
    double lambda_max;                       // adjacency Perron eigenvalue
    std::vector<double> eigenvalue_moduli;   // ascending; full spectrum when node_count <= 32
    bool spectrum_complete;
    bool diagonalizable;
    double eigenvector_condition;
};

// Exact number of distinct accepted label sequences of length l.
std::uint64_t count_words(const Automaton& g, int length);

// Entropy and adjacency spectrum. Dense eigensolve for |V| <= 32, power
// iteration (tolerance 1e-12, at most 1e6 steps) above that.
AutomatonStats automaton_stats(const Automaton& g);

// One step of the walk measure: mass vector after reading `label`.
// p[u] is mass at node u; each out-edge of u carries p[u]/outdeg(u).
std::vector<double> walk_step(const Automaton& g, std::span<const double> p, int label);

// Probability that the uniform-start / uniform-out-edge random walk emits
// exactly this label sequence; 0 when the word is not accepted.
double walk_probability(const Automaton& g, std::span<const int> word);

}  // namespace cjsr
