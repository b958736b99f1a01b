#include "cjsr/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cjsr/automaton.hpp"
#include "cjsr/baseline.hpp"
#include "cjsr/products.hpp"
#include "cjsr/sampling.hpp"
#include "cjsr/scenario.hpp"
#include "cjsr/system.hpp"

namespace cjsr {

namespace {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "missing";
    std::ostringstream buf;
    buf << in.rdbuf();
    char hex[32];
    std::snprintf(hex, sizeof hex, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(buf.str())));
    return hex;
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

json make_manifest(const std::string& command, json parameters,
                   const std::vector<std::string>& input_paths) {
    json digests = json::object();
    for (const std::string& p : input_paths) digests[p] = file_digest(p);
    return json{{"command", command},
                {"parameters", std::move(parameters)},
                {"input_digests", std::move(digests)},
                {"version", kToolVersion},
                {"timestamp_utc", timestamp_utc()}};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

json matrix_to_json(const SymMatrix& p) {
    json rows = json::array();
    for (int i = 0; i < p.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < p.dim(); ++j) row.push_back(p(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json certificate_to_json(const Certificate& c, json manifest) {
    json j;
    j["beta"] = c.beta;
    j["N"] = c.sample_count;
    j["l"] = c.length;
    j["n"] = c.dim;
    j["d"] = c.packed;
    j["gamma_star"] = c.gamma_star;
    j["P_star"] = matrix_to_json(c.p_star);
    j["epsilon"] = c.epsilon;
    j["kappa"] = c.kappa;
    j["mass_term"] = std::isfinite(c.mass_term) ? json(c.mass_term) : json("inf");
    j["variant"] = to_string(c.variant);
    j["delta"] = c.delta;
    j["bound"] = c.informative ? json(c.bound) : json();  // null when non-informative
    j["informative"] = c.informative;
    j["warnings"] = c.warnings;
    j["tolerances"] = {{"gamma_tol", c.gamma_tol}, {"feas_tol", c.feas_tol}, {"C", c.box_upper}};
    j["manifest"] = std::move(manifest);
    return j;
}

int usage_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return kExitUsage;
}

}  // namespace

int cmd_generate(const GenerateOptions& options) {
    if (options.samples < 1) return usage_error("N must be >= 1");
    if (options.length < 1) return usage_error("l must be >= 1");
    SystemSpec system = load_system(options.system_path);

    const SamplingConfig config{options.samples, options.length, options.seed};
    ObservationSet observations = synthesize(system, config);

    std::ostringstream csv;
    write_csv(observations, csv);
    write_text(options.out, csv.str());

    json params{{"system", options.system_path}, {"N", options.samples},
                {"l", options.length},           {"seed", options.seed},
                {"out", options.out}};
    const json manifest = make_manifest("generate", params, {options.system_path});
    write_text(options.out + ".manifest.json", manifest.dump(2) + "\n");
    return kExitOk;
}

int cmd_certify(const CertifyOptions& options) {
    if (!(options.beta > 0.0 && options.beta < 1.0))
        return usage_error("beta must lie strictly inside (0,1)");
    if (options.length < 1) return usage_error("l must be >= 1");
    const auto variant = variant_from_string(options.variant);
    if (!variant) return usage_error("unknown variant '" + options.variant + "'");

    ObservationSet observations = ingest(std::filesystem::path(options.trajectories_path));
    observations.strip_words();
    const int n = observations.dim;
    const int d = n * (n + 1) / 2;
    if (observations.count() <= d) {
        std::cerr << "error: N = " << observations.count() << " samples with n = " << n
                  << " violates N >= d := n(n+1)/2 (d = " << d
                  << "; the epsilon closed form needs N >= d+1)\n";
        return kExitTooFewSamples;
    }

    // variant context: from the model when given, from flags otherwise
    BoundContext context;
    std::optional<SystemSpec> system;
    if (options.system_path) {
        system = load_system(*options.system_path);
        if (system->dim != n)
            return usage_error("system dimension does not match the trajectory file");
        context.from_model = true;
    }

    ScenarioConfig config;
    config.C = options.box_upper;
    config.gamma_tol = options.gamma_tol;

    try {
        if (*variant == BoundVariant::exact || *variant == BoundVariant::uniform) {
            if (!system)
                return usage_error("variant '" + options.variant + "' needs --system to enumerate products");
            const ProductSet products = enumerate_products(*system, options.length);
            context.p_min = products.p_min;
            context.product_count = static_cast<double>(products.distinct_count());
            for (const BarabanovFinding& f : barabanov_flag(products))
                context.warnings.push_back("product '" +
                                           [&] {
                                               std::string w;
                                               for (int s : products.entries[f.entry_index].word)
                                                   w += std::to_string(s);
                                               return w;
                                           }() +
                                           "' looks Barabanov (common modulus " + std::to_string(f.modulus) +
                                           "); the confidence guarantee assumes none");
            if (*variant == BoundVariant::uniform)
                context.warnings.push_back(
                    "uniform variant: the walk measure is assumed uniform over products");
        } else if (system) {
            const AutomatonStats stats = automaton_stats(system->automaton);
            context.entropy = stats.entropy;
            context.lambda_max = stats.lambda_max;
            context.node_count = stats.node_count;
            if (*variant == BoundVariant::eigen && !stats.diagonalizable)
                return usage_error(
                    "eigen variant requires a diagonalizable adjacency matrix (condition estimate " +
                    std::to_string(stats.eigenvector_condition) + "); pick another variant");
        } else {
            context.entropy = options.entropy;
            context.lambda_max = options.lambda_max;
            context.node_count = options.nodes;
            if (*variant == BoundVariant::entropy && !context.entropy)
                return usage_error("entropy variant needs --system or --entropy");
            if (*variant == BoundVariant::eigen && (!context.lambda_max || !context.node_count))
                return usage_error("eigen variant needs --system or both --eig and --nodes");
            if (*variant == BoundVariant::eigen)
                context.warnings.push_back("eigen variant: diagonalizability supplied by flags, unverified");
        }
        if (*variant == BoundVariant::entropy)
            context.warnings.push_back(
                "entropy variant substitutes 2^{l h} for the product count; approximation at finite l");
        if (!context.from_model)
            context.warnings.push_back("no model given: the Barabanov assumption is unverified");

        const ScenarioSolution solution = solve(observations, options.length, config);
        const Certificate cert = certify(solution, *variant, options.beta, context, config);

        json params{{"trajectories", options.trajectories_path},
                    {"beta", options.beta},
                    {"l", options.length},
                    {"variant", options.variant},
                    {"C", options.box_upper},
                    {"gamma_tol", options.gamma_tol}};
        std::vector<std::string> inputs{options.trajectories_path};
        if (options.system_path) {
            params["system"] = *options.system_path;
            inputs.push_back(*options.system_path);
        }
        params["context_source"] = context.from_model ? "model" : "flags";
        const json out = certificate_to_json(cert, make_manifest("certify", params, inputs));
        if (options.out.empty())
            std::cout << out.dump(2) << "\n";
        else
            write_text(options.out, out.dump(2) + "\n");
        return cert.informative ? kExitOk : kExitNonInformative;
    } catch (const TooFewSamples& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTooFewSamples;
    } catch (const IterationLimit& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolverFailure;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolverFailure;
    }
}

int cmd_inspect(const InspectOptions& options) {
    if (options.length < 1) return usage_error("l must be >= 1");
    const SystemSpec system = load_system(options.system_path);

    json report;
    report["l"] = options.length;
    const AutomatonStats stats = automaton_stats(system.automaton);
    report["nodes"] = stats.node_count;
    report["entropy"] = stats.entropy;
    report["lambda_max"] = stats.lambda_max;
    report["diagonalizable"] = stats.diagonalizable;
    const double eigen_mass =
        stats.node_count * std::pow(stats.lambda_max, static_cast<double>(options.length));
    report["eigen_mass"] = eigen_mass;

    bool counted = true;
    try {
        const std::uint64_t words = count_words(system.automaton, options.length);
        const ProductSet products = enumerate_products(system, options.length);
        report["word_count"] = words;
        report["product_count"] = products.distinct_count();
        report["p_min"] = products.p_min;
        report["p_min_word"] = products.p_min_word;
        json barabanov = json::array();
        for (const BarabanovFinding& f : barabanov_flag(products)) {
            std::string w;
            for (int s : products.entries[f.entry_index].word) w += std::to_string(s);
            barabanov.push_back({{"word", w}, {"modulus", f.modulus}});
        }
        report["barabanov"] = std::move(barabanov);
        if (stats.diagonalizable) {
            const bool ok = static_cast<double>(products.distinct_count()) <= eigen_mass * (1.0 + 1e-12);
            report["product_count_le_eigen_mass"] = ok;
            if (!ok) {
                std::cerr << "error: |Pi_l| exceeds |V| lambda_max^l on a diagonalizable adjacency\n";
                return kExitSolverFailure;
            }
        }
    } catch (const TooManyWords&) {
        counted = false;  // counting fields omitted, spectral fields kept
    } catch (const WordCountOverflow& e) {
        counted = false;
        report["word_count_log2"] = e.log2_estimate();
    }
    report["counts_enumerated"] = counted;

    const CjsrBracket bracket = cjsr_bracket(system, options.length);
    report["bracket"] = {{"lower", bracket.lower}, {"upper", bracket.upper}, {"l", bracket.upper_l}};

    json params{{"system", options.system_path}, {"l", options.length}};
    report["manifest"] = make_manifest("inspect", params, {options.system_path});
    if (options.out.empty())
        std::cout << report.dump(2) << "\n";
    else
        write_text(options.out, report.dump(2) + "\n");
    return kExitOk;
}

int cmd_sweep(const SweepOptions& options) {
    if (options.sample_grid.empty()) return usage_error("the N grid must be nonempty");
    if (!(options.beta > 0.0 && options.beta < 1.0))
        return usage_error("beta must lie strictly inside (0,1)");
    if (options.seeds < 1) return usage_error("need at least one seed");
    const auto variant = variant_from_string(options.variant);
    if (!variant) return usage_error("unknown variant '" + options.variant + "'");
    for (int n : options.sample_grid)
        if (n < 1) return usage_error("every N in the grid must be >= 1");

    const SystemSpec system = load_system(options.system_path);
    const AutomatonStats stats = automaton_stats(system.automaton);

    BoundContext base_context;
    base_context.from_model = true;
    base_context.entropy = stats.entropy;
    base_context.lambda_max = stats.lambda_max;
    base_context.node_count = stats.node_count;
    if (*variant == BoundVariant::exact || *variant == BoundVariant::uniform) {
        const ProductSet products = enumerate_products(system, options.length);
        base_context.p_min = products.p_min;
        base_context.product_count = static_cast<double>(products.distinct_count());
    }
    if (*variant == BoundVariant::eigen && !stats.diagonalizable)
        return usage_error("eigen variant requires a diagonalizable adjacency matrix");

    ScenarioConfig config;
    config.C = options.box_upper;
    config.gamma_tol = options.gamma_tol;

    json params{{"system", options.system_path},
                {"beta", options.beta},
                {"l", options.length},
                {"N_grid", options.sample_grid},
                {"seeds", options.seeds},
                {"seed", options.base_seed},
                {"variant", options.variant},
                {"C", options.box_upper},
                {"gamma_tol", options.gamma_tol}};
    const json manifest = make_manifest("sweep", params, {options.system_path});

    std::ofstream out(options.out, std::ios::binary);
    if (!out) return usage_error("cannot write " + options.out);
    out << "# manifest: " << manifest.dump() << "\n";
    out << "N,seed,gamma_star,kappa,delta,factor,bound,informative\n";
    out.flush();

    struct Row {
        double gamma_star, kappa_v, delta, factor, bound;
        bool informative;
    };

    try {
        // chunked over the grid so partial results are already on disk if a
        // long sweep is interrupted
        for (int grid_n : options.sample_grid) {
            std::vector<Row> rows(options.seeds);
            std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
            for (int s = 0; s < options.seeds; ++s) {
                try {
                    const SamplingConfig sampling{grid_n, options.length,
                                                  options.base_seed + static_cast<std::uint64_t>(s)};
                    ObservationSet obs = synthesize(system, sampling, Exec::serial);
                    obs.strip_words();
                    const ScenarioSolution sol = solve(obs, options.length, config, Exec::serial);
                    const Certificate cert = certify(sol, *variant, options.beta, base_context, config);
                    const double factor = cert.informative
                                              ? std::exp(-std::log(cert.delta) / options.length)
                                              : std::numeric_limits<double>::infinity();
                    rows[s] = Row{cert.gamma_star, cert.kappa, cert.delta, factor, cert.bound,
                                  cert.informative};
                } catch (...) {
#pragma omp critical(cjsr_sweep_failure)
                    failure = std::current_exception();
                }
            }
            if (failure) std::rethrow_exception(failure);
            for (int s = 0; s < options.seeds; ++s) {
                const Row& r = rows[s];
                char line[256];
                std::snprintf(line, sizeof line, "%d,%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", grid_n,
                              static_cast<unsigned long long>(options.base_seed + s), r.gamma_star,
                              r.kappa_v, r.delta, r.factor, r.bound, r.informative ? 1 : 0);
                out << line;
            }
            out.flush();
        }
    } catch (const TooFewSamples& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTooFewSamples;
    } catch (const IterationLimit& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolverFailure;
    }
    return kExitOk;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Probabilistic stability certificates for constrained switching linear systems"};
    app.require_subcommand(1);

    GenerateOptions gen;
    auto* cgen = app.add_subcommand("generate", "synthesize a trajectory CSV from a system file");
    cgen->add_option("--system", gen.system_path, "system JSON file")->required();
    cgen->add_option("--samples,-N", gen.samples, "number of trajectories")->required();
    cgen->add_option("--length,-l", gen.length, "trajectory length")->required();
    cgen->add_option("--seed", gen.seed, "RNG seed");
    cgen->add_option("--out", gen.out, "output CSV path")->required();

    CertifyOptions cert;
    auto* ccert = app.add_subcommand("certify", "certify stability from a trajectory CSV");
    ccert->add_option("trajectories", cert.trajectories_path, "trajectory CSV")->required();
    ccert->add_option("--beta", cert.beta, "confidence level in (0,1)")->required();
    ccert->add_option("--length,-l", cert.length, "trajectory length l")->required();
    ccert->add_option("--variant", cert.variant, "exact|uniform|entropy|eigen");
    std::string cert_system;
    auto* sys_opt = ccert->add_option("--system", cert_system, "system JSON for variant context");
    double cert_entropy = 0.0, cert_eig = 0.0;
    int cert_nodes = 0;
    auto* ent_opt = ccert->add_option("--entropy", cert_entropy, "entropy h(G) in bits");
    auto* eig_opt = ccert->add_option("--eig", cert_eig, "adjacency Perron eigenvalue");
    auto* nodes_opt = ccert->add_option("--nodes", cert_nodes, "automaton node count");
    ccert->add_option("--C", cert.box_upper, "spectral box upper constant");
    ccert->add_option("--gamma-tol", cert.gamma_tol, "bisection tolerance");
    ccert->add_option("--out", cert.out, "certificate JSON path (stdout when omitted)");

    InspectOptions ins;
    auto* cins = app.add_subcommand("inspect", "report model analytics and the CJSR bracket");
    cins->add_option("--system", ins.system_path, "system JSON file")->required();
    cins->add_option("--length,-l", ins.length, "product length l")->required();
    cins->add_option("--out", ins.out, "report JSON path (stdout when omitted)");

    SweepOptions sweep;
    auto* csweep = app.add_subcommand("sweep", "synthesize-solve-certify over an N grid");
    csweep->add_option("--system", sweep.system_path, "system JSON file")->required();
    csweep->add_option("--beta", sweep.beta, "confidence level in (0,1)")->required();
    csweep->add_option("--length,-l", sweep.length, "trajectory length l")->required();
    csweep->add_option("--samples,-N", sweep.sample_grid, "N grid (repeatable)")->required();
    csweep->add_option("--seeds", sweep.seeds, "number of seeds per N");
    csweep->add_option("--seed", sweep.base_seed, "base seed");
    csweep->add_option("--variant", sweep.variant, "exact|uniform|entropy|eigen");
    csweep->add_option("--C", sweep.box_upper, "spectral box upper constant");
    csweep->add_option("--gamma-tol", sweep.gamma_tol, "bisection tolerance");
    csweep->add_option("--out", sweep.out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cgen->parsed()) return cmd_generate(gen);
        if (ccert->parsed()) {
            if (*sys_opt) cert.system_path = cert_system;
            if (*ent_opt) cert.entropy = cert_entropy;
            if (*eig_opt) cert.lambda_max = cert_eig;
            if (*nodes_opt) cert.nodes = cert_nodes;
            return cmd_certify(cert);
        }
        if (cins->parsed()) return cmd_inspect(ins);
        if (csweep->parsed()) return cmd_sweep(sweep);
    } catch (const SystemParseError& e) {
        return usage_error(e.what());
    } catch (const AutomatonError& e) {
        return usage_error(e.what());
    } catch (const SamplingError& e) {
        return usage_error(e.what());
    } catch (const TooManyWords& e) {
        return usage_error(e.what());
    } catch (const IterationLimit& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolverFailure;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolverFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverFailure;
    }
    return kExitUsage;
}

}  // namespace cjsr
