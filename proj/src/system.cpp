#include "cjsr/system.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cjsr {

SystemSpec make_system(int dim, std::vector<Matrix> matrices, Automaton automaton) {
    if (dim < 1) throw SystemParseError("system dimension must be >= 1");
    if (matrices.empty()) throw SystemParseError("system needs at least one matrix");
    for (const Matrix& m : matrices)
        if (m.dim() != dim) throw SystemParseError("matrix dimension does not match n");
    if (automaton.alphabet_size() != static_cast<int>(matrices.size()))
        throw SystemParseError("automaton alphabet size must equal the number of matrices");
    return SystemSpec{dim, std::move(matrices), std::move(automaton)};
}

SystemSpec parse_system(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SystemParseError(std::string("system JSON parse error: ") + e.what());
    }
    try {
        const int n = j.at("n").get<int>();
        if (n < 1) throw SystemParseError("\"n\" must be >= 1");
        std::vector<Matrix> matrices;
        for (const auto& flat : j.at("matrices")) {
            if (static_cast<int>(flat.size()) != n * n)
                throw SystemParseError("matrix entry count must be n*n = " + std::to_string(n * n));
            Matrix m(n);
            int k = 0;
            for (const auto& v : flat) {
                m(k / n, k % n) = v.get<double>();
                ++k;
            }
            matrices.push_back(std::move(m));
        }
        const auto& ja = j.at("automaton");
        const int nodes = ja.at("nodes").get<int>();
        std::vector<Edge> edges;
        for (const auto& je : ja.at("edges")) {
            if (je.size() != 3) throw SystemParseError("edges must be [src, dst, label] triples");
            edges.push_back(Edge{je[0].get<int>(), je[1].get<int>(), je[2].get<int>()});
        }
        Automaton automaton(nodes, std::move(edges), static_cast<int>(matrices.size()));
        return make_system(n, std::move(matrices), std::move(automaton));
    } catch (const nlohmann::json::exception& e) {
        throw SystemParseError(std::string("system JSON: ") + e.what());
    }
}

SystemSpec load_system(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SystemParseError("cannot open system file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str());
}

std::string system_to_json(const SystemSpec& system) {
    nlohmann::json j;
    j["n"] = system.dim;
    auto& mats = j["matrices"] = nlohmann::json::array();
    for (const Matrix& m : system.matrices) {
        nlohmann::json flat = nlohmann::json::array();
        for (int i = 0; i < m.dim(); ++i)
            for (int k = 0; k < m.dim(); ++k) flat.push_back(m(i, k));
        mats.push_back(std::move(flat));
    }
    j["automaton"]["nodes"] = system.automaton.node_count();
    auto& edges = j["automaton"]["edges"] = nlohmann::json::array();
    for (const Edge& e : system.automaton.edges()) edges.push_back({e.src, e.dst, e.label});
    return j.dump(2);
}

}  // namespace cjsr
