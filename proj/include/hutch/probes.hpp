#pragma once

#include "hutch/ifs.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hutch {

struct ProbeOptions {
    /// Controls for iterating singletons (d_F estimates).
    IterateOptions iterate;
    /// Controls for iterating arcs in covering_time; exact by default.
    IterateOptions cover;
    /// With coarsening on in `cover`, a set counts as the circle once its gap
    /// radius is at most this.
    Rational exactness_slack = 0;
    /// Worker threads for independent base points / arcs.
    unsigned threads = 1;
    /// Extra uniformly random samples per delta in equicontinuity_probe.
    std::size_t random_samples = 0;
    std::uint64_t seed = 0;
};

/// max over 0 <= n <= N of d_H(F^n{x1}, F^n{x2}); a lower bound for d_F that
/// is non-decreasing in N. The n = 0 term is circle_dist(x1, x2).
Rational dF_estimate(const IFS& system, const CirclePoint& x1, const CirclePoint& x2, std::size_t truncation,
                     const IterateOptions& options = {});

struct ModulusEntry {
    Rational delta;
    Rational modulus;
};

struct ModulusReport {
    CirclePoint base;
    std::size_t truncation = 0;
    std::size_t samples = 0;
    std::vector<ModulusEntry> entries;  // in the order of the delta grid
};

/// For each delta, the max of dF_estimate(x, y) over m stratified y with
/// d(x, y) <= delta (endpoints x +- delta included), plus any seeded random
/// samples requested in the options. Samples from smaller
/// deltas also count towards larger ones, so the modulus is monotone in delta.
ModulusReport equicontinuity_probe(const IFS& system, const CirclePoint& x, const std::vector<Rational>& deltas,
                                   std::size_t truncation, std::size_t samples, const ProbeOptions& options = {});

/// Least n <= budget with F^n(U) = S^1, or nullopt.
std::optional<std::size_t> covering_time(const IFS& system, const Arc& u, std::size_t budget,
                                         const ProbeOptions& options = {});

struct ArcProbe {
    Rational length;
    CirclePoint center;
    Rational pair_estimate;                 // max dF_estimate over sampled pairs of U
    std::optional<std::size_t> covering_time;
    std::optional<Rational> covering_bound; // certificate from covering, see sensitivity_probe
    Rational diameter;                      // max of the two lower bounds
};

struct SensitivityReport {
    std::vector<Rational> lengths;
    std::size_t truncation = 0;
    std::vector<ArcProbe> arcs;
    Rational lower_bound;  // min diameter over all tested arcs
    bool sensitive = false;
    std::string verdict() const;
};

/// Estimates the d_F-diameter of every arc U of the given lengths centred at
/// the given points.
///
/// Two lower bounds are combined. The direct one is the max of dF_estimate
/// over pairs of stratified points of U. The covering one applies when
/// F^n(U) = S^1: for any x in U the midpoint of the largest gap of F^n{x} is
/// the image of some y in U, hence d_F(x, y) >= gap_radius(F^n{x}).
///
/// The verdict is "sensitive" iff every tested arc is covered within the
/// truncation and the lower bound exceeds the largest tested length (so the
/// diameters cannot be explained by the base metric alone).
SensitivityReport sensitivity_probe(const IFS& system, const std::vector<Rational>& lengths,
                                    const std::vector<CirclePoint>& centers, std::size_t truncation,
                                    std::size_t samples_per_arc = 3, const ProbeOptions& options = {});

/// n points (i + 1/2)/n, i = 0..n-1.
std::vector<CirclePoint> stratified_points(std::size_t n);

}  // namespace hutch
