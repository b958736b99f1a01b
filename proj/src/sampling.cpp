#include "cjsr/sampling.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cjsr {

std::vector<double> sample_sphere(int dim, SplitMix64& rng) {
    std::vector<double> x(dim);
    while (true) {
        for (int i = 0; i < dim; i += 2) {
            const auto [g0, g1] = rng.next_normal_pair();
            x[i] = g0;
            if (i + 1 < dim) x[i + 1] = g1;
        }
        double nrm = 0.0;
        for (double v : x) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (nrm > 0.0) {
            for (double& v : x) v /= nrm;
            return x;
        }
        // measure-zero zero vector: redraw
    }
}

std::vector<int> sample_walk(const Automaton& g, int length, SplitMix64& rng) {
    std::vector<int> word(length);
    int node = static_cast<int>(rng.next_below(g.node_count()));
    for (int j = 0; j < length; ++j) {
        const auto edges = g.out_edges(node);
        const Edge& e = edges[rng.next_below(edges.size())];
        word[j] = e.label;
        node = e.dst;
    }
    return word;
}

ObservationSet synthesize(const SystemSpec& system, const SamplingConfig& config, Exec exec) {
    if (config.count < 1) throw SamplingError("sampling needs N >= 1");
    if (config.length < 1) throw SamplingError("sampling needs l >= 1");
    ObservationSet out;
    out.dim = system.dim;
    out.length = config.length;
    out.items.resize(config.count);

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int i = 0; i < config.count; ++i) {
        SplitMix64 rng = SplitMix64::for_stream(config.seed, static_cast<std::uint64_t>(i));
        Observation& o = out.items[i];
        o.x0 = sample_sphere(system.dim, rng);
        o.word = sample_walk(system.automaton, config.length, rng);
        o.xl = o.x0;
        for (int label : o.word) o.xl = system.matrices[label - 1].apply(o.xl);
    }
    return out;
}

namespace {

void append_double(std::string& row, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    row += ',';
    row += buf;
}

double parse_double(std::string_view field, int row_number) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw ParseError("row " + std::to_string(row_number) + ": cannot parse number '" +
                         std::string(field) + "'");
    return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

}  // namespace

void write_csv(const ObservationSet& observations, std::ostream& out) {
    std::string header = "id";
    for (int i = 1; i <= observations.dim; ++i) header += ",x0_" + std::to_string(i);
    for (int i = 1; i <= observations.dim; ++i) header += ",xl_" + std::to_string(i);
    out << header << '\n';
    for (int i = 0; i < observations.count(); ++i) {
        std::string row = std::to_string(i);
        for (double v : observations.items[i].x0) append_double(row, v);
        for (double v : observations.items[i].xl) append_double(row, v);
        out << row << '\n';
    }
}

ObservationSet ingest(std::istream& in) {
    std::string line;
    int row_number = 0;

    // header (comment lines starting with '#' are permitted above it)
    do {
        if (!std::getline(in, line)) throw ParseError("empty trajectory file");
        ++row_number;
    } while (!line.empty() && line[0] == '#');

    const auto header = split_csv(line);
    if (header.empty() || split_csv(line)[0] != "id")
        throw ParseError("header must start with 'id'");
    int n = 0;
    std::size_t idx = 1;
    while (idx < header.size() && header[idx].starts_with("x0_")) {
        ++n;
        ++idx;
    }
    if (n == 0) throw ParseError("header has no x0_* columns");
    int nl = 0;
    while (idx < header.size()) {
        std::string_view h = header[idx];
        while (!h.empty() && (h.back() == '\r' || h.back() == ' ')) h.remove_suffix(1);
        if (!h.starts_with("xl_")) throw ParseError("header has unexpected column '" + std::string(h) + "'");
        ++nl;
        ++idx;
    }
    if (nl != n) throw DimensionMismatch("header declares " + std::to_string(n) + " x0 columns but " +
                                         std::to_string(nl) + " xl columns");

    ObservationSet out;
    out.dim = n;
    while (std::getline(in, line)) {
        ++row_number;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv(line);
        if (static_cast<int>(fields.size()) != 1 + 2 * n)
            throw DimensionMismatch("row " + std::to_string(row_number) + ": expected " +
                                    std::to_string(1 + 2 * n) + " fields, found " +
                                    std::to_string(fields.size()));
        Observation o;
        o.x0.resize(n);
        o.xl.resize(n);
        for (int i = 0; i < n; ++i) o.x0[i] = parse_double(fields[1 + i], row_number);
        for (int i = 0; i < n; ++i) o.xl[i] = parse_double(fields[1 + n + i], row_number);
        double nrm = 0.0;
        for (double v : o.x0) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (std::fabs(nrm - 1.0) > 1e-6)
            throw NormError("row " + std::to_string(row_number) + ": |x0| = " + std::to_string(nrm) +
                            " is not on the unit sphere");
        // renormalize both endpoints so xl stays consistent with xl = A x0
        for (double& v : o.x0) v /= nrm;
        for (double& v : o.xl) v /= nrm;
        out.items.push_back(std::move(o));
    }
    return out;
}

ObservationSet ingest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open trajectory file: " + path.string());
    return ingest(in);
}

}  // namespace cjsr
