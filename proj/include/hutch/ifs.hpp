#pragma once

#include "hutch/homeo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hutch {

/// Finite ordered family of circle homeomorphisms. Generator i (1-based in
/// words, 0-based in code) keeps its position under inverse_system.
class IFS {
public:
    IFS(std::string label, std::vector<PLHomeo> generators);

    const std::string& label() const { return label_; }
    const std::vector<PLHomeo>& generators() const { return generators_; }
    std::size_t size() const { return generators_.size(); }
    const PLHomeo& operator[](std::size_t i) const { return generators_[i]; }

private:
    std::string label_;
    std::vector<PLHomeo> generators_;
};

IFS inverse_system(const IFS& system);

/// F(A) = union over generators of f_i(A).
ArcSet hutchinson(const IFS& system, const ArcSet& a);

/// Precision and size controls applied after every Hutchinson step.
struct IterateOptions {
    std::size_t arc_cap = std::size_t{1} << 16;
    /// Fill gaps shorter than this (off when unset).
    std::optional<Rational> coarsen;
    /// Round endpoints to denominators at most this (off when unset).
    std::optional<Integer> denominator_limit;
};

struct Step {
    ArcSet set;
    bool coarsened = false;
};

/// One Hutchinson step followed by the optional precision passes. Throws
/// ResourceError when the result exceeds the arc cap.
Step advance(const IFS& system, const ArcSet& a, const IterateOptions& options = {});

/// [A, F(A), ..., F^n(A)].
std::vector<Step> iterate(const IFS& system, const ArcSet& a, std::size_t n, const IterateOptions& options = {});

/// f_{w_n} o ... o f_{w_1}(x): the first symbol acts first. Throws
/// std::out_of_range for a symbol outside 1..k.
CirclePoint word_map(const IFS& system, const Word& word, const CirclePoint& x);

struct MinimalityReport {
    CirclePoint base;
    std::size_t depth = 0;          // requested
    std::size_t depth_reached = 0;  // BFS level at which the search stopped
    Rational epsilon;
    bool verdict = false;
    Rational largest_gap;           // largest arc of S^1 free of orbit points
    std::size_t orbit_size = 0;
};

/// Breadth-first orbit enumeration; the verdict is true once the orbit is an
/// epsilon-net (largest gap < 2 epsilon). Stops at the first level that
/// achieves it.
MinimalityReport orbit_density_probe(const IFS& system, const CirclePoint& x, std::size_t depth,
                                     const Rational& epsilon, std::size_t point_cap = std::size_t{1} << 21);

struct InvarianceReport {
    bool invariant = false;
    std::vector<Rational> distances;  // d_H(f_i(K), K) per generator
};

InvarianceReport invariance_check(const IFS& system, const ArcSet& k, const Rational& tol);

struct ConvergenceStep {
    std::size_t n = 0;
    Rational gap_radius;
    std::size_t arc_count = 0;
    bool coarsened = false;
};

struct ConvergenceReport {
    std::vector<ConvergenceStep> steps;
    bool converged = false;
    std::size_t budget = 0;
    Rational tol;
    bool any_coarsened() const;
};

/// Iterates F from k, recording gap_radius each step, until gap_radius <= tol
/// or the budget runs out.
ConvergenceReport attractor_probe(const IFS& system, const ArcSet& k, std::size_t budget, const Rational& tol,
                                  const IterateOptions& options = {});

}  // namespace hutch
