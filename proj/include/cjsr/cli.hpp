#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cjsr/bounds.hpp"

namespace cjsr {

inline constexpr const char* kToolVersion = "0.1.0";

// exit codes shared by every subcommand
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNonInformative = 3;
inline constexpr int kExitTooFewSamples = 4;
inline constexpr int kExitSolverFailure = 5;

struct GenerateOptions {
    std::string system_path;
    int samples = 0;
    int length = 1;
    std::uint64_t seed = 0;
    std::string out;
};

struct CertifyOptions {
    std::string trajectories_path;
    double beta = 0.9;
    int length = 1;
    std::string variant = "exact";
    std::optional<std::string> system_path;
    std::optional<double> entropy;
    std::optional<double> lambda_max;
    std::optional<int> nodes;
    double box_upper = 1e6;
    double gamma_tol = 1e-6;
    std::string out;
};

struct InspectOptions {
    std::string system_path;
    int length = 1;
    std::string out;
};

struct SweepOptions {
    std::string system_path;
    double beta = 0.95;
    int length = 1;
    std::vector<int> sample_grid;
    int seeds = 1;
    std::uint64_t base_seed = 0;
    std::string variant = "entropy";
    double box_upper = 1e6;
    double gamma_tol = 1e-6;
    std::string out;
};

int cmd_generate(const GenerateOptions& options);
int cmd_certify(const CertifyOptions& options);
int cmd_inspect(const InspectOptions& options);
int cmd_sweep(const SweepOptions& options);

int run_cli(int argc, const char* const* argv);

}  // namespace cjsr
