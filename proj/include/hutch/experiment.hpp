#pragma once

#include "hutch/serialize.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hutch {

inline constexpr const char* kToolVersion = "0.1.0";

/// Where the system under study comes from: a built-in construction, an IFS
/// file, or an inline IFS object.
struct SystemSource {
    std::string kind;  // "theorem1" | "theorem2" | "identity" | "rotation" | "file" | "inline"
    Theorem1Params theorem1;
    bool backward = false;  // theorem1 only
    Rational alpha{34, 55}; // theorem2 / rotation
    std::string path;       // file
    Json inline_ifs;        // inline
};

IFS resolve_system(const SystemSource& source);

struct PrecisionSettings {
    std::optional<Integer> denominator_limit;
    std::optional<Rational> coarsen;
    std::size_t arc_cap = std::size_t{1} << 16;
    Rational slack = 0;
    bool cover_coarsen = false;  // apply coarsening (and slack) to covering runs too
};

struct AttractorSpec {
    ArcSet start;
    std::size_t max_iter = 64;
    Rational tol{1, 256};
};
struct TrajectorySpec {
    ArcSet start;
    std::size_t max_iter = 16;
};
struct OrbitSpec {
    CirclePoint point;
    std::size_t depth = 12;
    Rational epsilon{1, 64};
};
struct InvarianceSpec {
    ArcSet set;
    Rational tol = 0;
};
struct DFSpec {
    CirclePoint x1, x2;
    std::size_t max_iter = 32;
};
struct EquicontinuitySpec {
    std::vector<CirclePoint> points;
    std::vector<Rational> deltas;
    std::size_t max_iter = 32;
    std::size_t samples = 3;
    std::size_t random_samples = 0;
};
struct CoveringSpec {
    std::vector<Arc> arcs;
    std::size_t max_iter = 64;
};
struct SensitivitySpec {
    std::vector<Rational> lengths;
    std::vector<CirclePoint> centers;
    std::size_t max_iter = 64;
    std::size_t samples = 3;
};

using ProbeParams = std::variant<AttractorSpec, TrajectorySpec, OrbitSpec, InvarianceSpec, DFSpec,
                                 EquicontinuitySpec, CoveringSpec, SensitivitySpec>;

struct ProbeSpec {
    std::string name;
    ProbeParams params;
};

const char* probe_type(const ProbeParams& p);

struct ExperimentConfig {
    SystemSource system;
    PrecisionSettings precision;
    std::vector<ProbeSpec> probes;
    std::uint64_t seed = 0;
    std::string out = "hutch-out";
};

/// Flag values that take precedence over the config file.
struct ConfigOverrides {
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> max_iter;
    std::optional<Rational> tol;
    std::optional<Integer> denominator_limit;
    std::optional<Rational> coarsen;
};

/// Validates and fills defaults. Throws ParseError naming the offending field.
ExperimentConfig parse_config(const Json& j, const ConfigOverrides& overrides = {});

/// Canonical (fully resolved) form of a config; parse_config(to_json(c)) == c.
Json to_json(const ExperimentConfig& c);

struct CsvFile {
    std::string name;
    std::string content;
};

struct ReportBundle {
    Json bundle;   // deterministic: config echo, reports, tool version
    Json timings;  // wall-clock seconds per probe, kept out of the bundle
    std::vector<CsvFile> csv;
    bool partial = false;
};

/// Runs every probe in order. A ResourceError inside a probe marks that probe
/// (and the bundle) partial; later probes still run.
ReportBundle run(const ExperimentConfig& config, unsigned threads = 1);

/// Writes bundle.json, timings.json and the CSV files into dir, each via a
/// temporary file and rename.
void write_bundle(const ReportBundle& bundle, const std::filesystem::path& dir);

/// Generator count, breakpoints, fixed-point sets, diagonal containment and
/// symmetry (is the family closed under inversion).
Json describe(const IFS& system);

/// Reads HUTCH_THREADS; 1 when unset or invalid.
unsigned threads_from_env();

}  // namespace hutch
