#include "cjsr/automaton.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <tuple>
#include <unordered_map>

namespace cjsr {

Automaton::Automaton(int node_count, std::vector<Edge> edges, int alphabet_size)
    : node_count_(node_count), alphabet_size_(alphabet_size), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.src, a.dst, a.label) < std::tie(b.src, b.dst, b.label);
    });
    out_offsets_.assign(node_count_ + 1, 0);
    for (const Edge& e : edges_)
        if (e.src >= 0 && e.src < node_count_) ++out_offsets_[e.src + 1];
    for (int v = 0; v < node_count_; ++v) out_offsets_[v + 1] += out_offsets_[v];
    validate();
}

void Automaton::validate() const {
    if (node_count_ < 1) throw AutomatonError(AutomatonError::Code::bad_node, "automaton needs at least one node");
    if (alphabet_size_ < 1) throw AutomatonError(AutomatonError::Code::bad_label, "alphabet must be nonempty");
    for (const Edge& e : edges_) {
        if (e.src < 0 || e.src >= node_count_ || e.dst < 0 || e.dst >= node_count_)
            throw AutomatonError(AutomatonError::Code::bad_node,
                                 "edge references node outside 0.." + std::to_string(node_count_ - 1));
        if (e.label < 1 || e.label > alphabet_size_)
            throw AutomatonError(AutomatonError::Code::bad_label,
                                 "edge label " + std::to_string(e.label) + " outside 1.." +
                                     std::to_string(alphabet_size_));
    }
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        const Edge& a = edges_[i - 1];
        const Edge& b = edges_[i];
        if (a.src == b.src && a.dst == b.dst && a.label == b.label)
            throw AutomatonError(AutomatonError::Code::duplicate_edge,
                                 "duplicate edge (" + std::to_string(a.src) + "," + std::to_string(a.dst) + "," +
                                     std::to_string(a.label) + ")");
    }
    for (int v = 0; v < node_count_; ++v)
        if (out_degree(v) == 0)
            throw AutomatonError(AutomatonError::Code::dangling_node,
                                 "node " + std::to_string(v) + " has no outgoing edge");

    // strong connectivity: forward and reverse reachability from node 0
    auto reach = [&](bool forward) {
        std::vector<char> seen(node_count_, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (const Edge& e : edges_) {
                const int from = forward ? e.src : e.dst;
                const int to = forward ? e.dst : e.src;
                if (from == u && !seen[to]) {
                    seen[to] = 1;
                    stack.push_back(to);
                }
            }
        }
        return seen;
    };
    const auto fwd = reach(true);
    const auto bwd = reach(false);
    for (int v = 0; v < node_count_; ++v)
        if (!fwd[v] || !bwd[v])
            throw AutomatonError(AutomatonError::Code::not_strongly_connected,
                                 "graph is not strongly connected (node " + std::to_string(v) + ")");
}

Matrix Automaton::adjacency() const {
    Matrix a(node_count_);
    for (const Edge& e : edges_) a(e.src, e.dst) += 1.0;
    return a;
}

bool Automaton::accepts(std::span<const int> word) const {
    std::vector<char> cur(node_count_, 1);
    for (int label : word) {
        std::vector<char> next(node_count_, 0);
        bool any = false;
        for (const Edge& e : edges_)
            if (e.label == label && cur[e.src]) {
                next[e.dst] = 1;
                any = true;
            }
        if (!any) return false;
        cur = std::move(next);
    }
    return true;
}

namespace {

// subset-construction state: bitset over nodes
struct Mask {
    std::vector<std::uint64_t> bits;
    bool operator==(const Mask&) const = default;
    bool any() const {
        for (auto w : bits)
            if (w) return true;
        return false;
    }
};

struct MaskHash {
    std::size_t operator()(const Mask& m) const {
        std::size_t h = 1469598103934665603ull;
        for (auto w : m.bits) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

std::uint64_t count_words(const Automaton& g, int length) {
    if (length < 1) throw DomainError("count_words: length must be >= 1");
    const int n = g.node_count();
    const int words = (n + 63) / 64;

    // per (node, label) successor masks
    std::vector<std::vector<Mask>> succ(n, std::vector<Mask>(g.alphabet_size() + 1, Mask{std::vector<std::uint64_t>(words, 0)}));
    for (const Edge& e : g.edges()) succ[e.src][e.label].bits[e.dst / 64] |= 1ull << (e.dst % 64);

    Mask all{std::vector<std::uint64_t>(words, 0)};
    for (int v = 0; v < n; ++v) all.bits[v / 64] |= 1ull << (v % 64);

    std::unordered_map<Mask, std::uint64_t, MaskHash> counts;
    std::unordered_map<Mask, double, MaskHash> approx;  // shadow for the overflow estimate
    counts.emplace(all, 1);
    approx.emplace(all, 1.0);

    for (int step = 0; step < length; ++step) {
        std::unordered_map<Mask, std::uint64_t, MaskHash> next;
        std::unordered_map<Mask, double, MaskHash> next_approx;
        for (const auto& [mask, cnt] : counts) {
            for (int label = 1; label <= g.alphabet_size(); ++label) {
                Mask to{std::vector<std::uint64_t>(words, 0)};
                for (int w = 0; w < words; ++w) {
                    std::uint64_t bitsw = mask.bits[w];
                    while (bitsw) {
                        const int v = w * 64 + std::countr_zero(bitsw);
                        bitsw &= bitsw - 1;
                        for (int ww = 0; ww < words; ++ww) to.bits[ww] |= succ[v][label].bits[ww];
                    }
                }
                if (!to.any()) continue;
                std::uint64_t& slot = next[to];
                double& aslot = next_approx[to];
                std::uint64_t sum;
                if (__builtin_add_overflow(slot, cnt, &sum)) {
                    double total = 0.0;
                    for (const auto& [m2, a2] : next_approx) total += a2;
                    for (const auto& [m2, c2] : counts) total += approx[m2];
                    throw WordCountOverflow(std::log2(std::max(total, 1.0)),
                                            "word count exceeds 64-bit range");
                }
                slot = sum;
                aslot += approx[mask];
            }
        }
        if (next.size() > 4'000'000) throw std::runtime_error("count_words: subset state explosion");
        counts = std::move(next);
        approx = std::move(next_approx);
    }

    std::uint64_t total = 0;
    double atotal = 0.0;
    for (const auto& [mask, cnt] : counts) {
        std::uint64_t sum;
        if (__builtin_add_overflow(total, cnt, &sum))
            throw WordCountOverflow(std::log2([&] {
                                        double t = 0.0;
                                        for (const auto& [m2, a2] : approx) t += a2;
                                        return std::max(t, 1.0);
                                    }()),
                                    "word count exceeds 64-bit range");
        total = sum;
        atotal += approx[mask];
    }
    (void)atotal;
    return total;
}

AutomatonStats automaton_stats(const Automaton& g) {
    const int n = g.node_count();
    const Matrix a = g.adjacency();
    AutomatonStats stats;
    stats.node_count = n;

    if (n <= 32) {
        const auto eig = eigenvalues(a);
        stats.eigenvalue_moduli.reserve(n);
        for (const auto& l : eig) stats.eigenvalue_moduli.push_back(std::abs(l));
        std::sort(stats.eigenvalue_moduli.begin(), stats.eigenvalue_moduli.end());
        stats.lambda_max = stats.eigenvalue_moduli.back();
        stats.spectrum_complete = true;
        const auto diag = diagonalizability(a);
        stats.diagonalizable = diag.diagonalizable;
        stats.eigenvector_condition = diag.condition;
    } else {
        // power iteration on A + I (primitive for strongly connected graphs)
        std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
        double lambda = 0.0;
        bool converged = false;
        for (long it = 0; it < 1'000'000; ++it) {
            std::vector<double> w = a.apply(v);
            for (int i = 0; i < n; ++i) w[i] += v[i];
            double nrm = 0.0;
            for (double x : w) nrm += x * x;
            nrm = std::sqrt(nrm);
            for (double& x : w) x /= nrm;
            const double next = nrm;
            v = std::move(w);
            if (it > 0 && std::fabs(next - lambda) <= 1e-12 * std::max(1.0, next)) {
                lambda = next;
                converged = true;
                break;
            }
            lambda = next;
        }
        if (!converged) throw ConvergenceFailure("adjacency power iteration did not converge");
        stats.lambda_max = lambda - 1.0;
        stats.eigenvalue_moduli = {stats.lambda_max};
        stats.spectrum_complete = false;
        stats.diagonalizable = false;  // not determined at this size
        stats.eigenvector_condition = std::numeric_limits<double>::quiet_NaN();
    }

    stats.entropy = std::max(0.0, std::log2(stats.lambda_max));
    return stats;
}

std::vector<double> walk_step(const Automaton& g, std::span<const double> p, int label) {
    std::vector<double> next(g.node_count(), 0.0);
    for (int u = 0; u < g.node_count(); ++u) {
        if (p[u] == 0.0) continue;
        const double share = p[u] / g.out_degree(u);
        for (const Edge& e : g.out_edges(u))
            if (e.label == label) next[e.dst] += share;
    }
    return next;
}

double walk_probability(const Automaton& g, std::span<const int> word) {
    if (word.empty()) throw DomainError("walk_probability: word must be nonempty");
    std::vector<double> p(g.node_count(), 1.0 / g.node_count());
    for (int label : word) {
        p = walk_step(g, p, label);
    }
    double total = 0.0;
    for (double x : p) total += x;
    return total;
}

}  // namespace cjsr
