#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "cjsr/automaton.hpp"
#include "cjsr/numerics.hpp"

namespace cjsr {

class SystemParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The model: mode matrices plus the constraining automaton. Only used for
// synthesis, ground truth and variant context; the certification path sees
// trajectories alone.
struct SystemSpec {
    int dim;                       // state dimension n
    std::vector<Matrix> matrices;  // one per mode, alphabet_size many
    Automaton automaton;

    int mode_count() const { return static_cast<int>(matrices.size()); }
};

SystemSpec make_system(int dim, std::vector<Matrix> matrices, Automaton automaton);

// JSON schema:
//   {"n": int,
//    "matrices": [[row-major n*n doubles], ...],
//    "automaton": {"nodes": int, "edges": [[src, dst, label], ...]}}
// with 0-based node indices and 1-based labels.
SystemSpec parse_system(const std::string& json_text);
SystemSpec load_system(const std::filesystem::path& path);
std::string system_to_json(const SystemSpec& system);

}  // namespace cjsr
