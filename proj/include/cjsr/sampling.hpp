#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "cjsr/parallel.hpp"
#include "cjsr/rng.hpp"
#include "cjsr/system.hpp"

namespace cjsr {

class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class ParseError : public SamplingError {
public:
    using SamplingError::SamplingError;
};
class NormError : public SamplingError {
public:
    using SamplingError::SamplingError;
};
class DimensionMismatch : public SamplingError {
public:
    using SamplingError::SamplingError;
};

// One sampled trajectory, reduced to its endpoints. The word is metadata
// kept only by the synthesizer; certification never reads it.
struct Observation {
    std::vector<double> x0;  // unit norm
    std::vector<double> xl;
    std::vector<int> word;   // empty when ingested from file
};

struct ObservationSet {
    int dim = 0;
    int length = 0;  // trajectory length l; 0 when unknown (ingested data)
    std::vector<Observation> items;

    int count() const { return static_cast<int>(items.size()); }
    void strip_words() {
        for (Observation& o : items) o.word.clear();
    }
};

struct SamplingConfig {
    int count;           // N
    int length;          // l
    std::uint64_t seed;
};

// Rotationally invariant unit vector (normalized Box-Muller normals).
std::vector<double> sample_sphere(int dim, SplitMix64& rng);

// Uniform initial node, then uniform choice among outgoing edges at each
// step; returns the l labels in walk order.
std::vector<int> sample_walk(const Automaton& g, int length, SplitMix64& rng);

// N independent trajectories; observation i draws from its own RNG stream,
// so the output is identical for both execution policies and any N prefix
// of a longer run is bitwise stable.
ObservationSet synthesize(const SystemSpec& system, const SamplingConfig& config,
                          Exec exec = Exec::parallel);

// Trajectory CSV: header `id,x0_1..x0_n,xl_1..xl_n`, round-trip floats.
void write_csv(const ObservationSet& observations, std::ostream& out);
ObservationSet ingest(std::istream& in);
ObservationSet ingest(const std::filesystem::path& path);

}  // namespace cjsr
