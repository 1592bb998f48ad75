#include "hutch/ifs.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hutch {

IFS::IFS(std::string label, std::vector<PLHomeo> generators)
    : label_(std::move(label)), generators_(std::move(generators)) {
    if (generators_.empty()) throw std::invalid_argument("an IFS needs at least one generator");
}

IFS inverse_system(const IFS& system) {
    std::vector<PLHomeo> inv;
    inv.reserve(system.size());
    for (const auto& f : system.generators()) inv.push_back(invert(f));
    return IFS(system.label() + "^-", std::move(inv));
}

ArcSet hutchinson(const IFS& system, const ArcSet& a) {
    std::vector<Arc> arcs;
    arcs.reserve(a.size() * system.size());
    for (const auto& f : system.generators()) {
        for (const auto& arc : a.arcs()) arcs.push_back(image_arc(f, arc));
    }
    return normalize(std::move(arcs));
}

Step advance(const IFS& system, const ArcSet& a, const IterateOptions& options) {
    Step step{hutchinson(system, a), false};
    if (options.denominator_limit) step.set = limit_denominator(step.set, *options.denominator_limit);
    if (options.coarsen) {
        auto c = coarsen(step.set, *options.coarsen);
        step.set = std::move(c.set);
        step.coarsened = c.fired;
    }
    if (step.set.size() > options.arc_cap) {
        throw ResourceError("arc count " + std::to_string(step.set.size()) + " exceeds cap " +
                            std::to_string(options.arc_cap));
    }
    return step;
}

std::vector<Step> iterate(const IFS& system, const ArcSet& a, std::size_t n, const IterateOptions& options) {
    std::vector<Step> steps;
    steps.reserve(n + 1);
    steps.push_back({a, false});
    for (std::size_t i = 0; i < n; ++i) steps.push_back(advance(system, steps.back().set, options));
    return steps;
}

CirclePoint word_map(const IFS& system, const Word& word, const CirclePoint& x) {
    CirclePoint y = x;
    for (std::size_t s : word.symbols()) {
        if (s < 1 || s > system.size()) {
            throw std::out_of_range("word symbol " + std::to_string(s) + " outside 1.." +
                                    std::to_string(system.size()));
        }
        y = system[s - 1](y);
    }
    return y;
}

namespace {

Rational largest_cyclic_gap(const std::set<Rational>& pts) {
    if (pts.size() <= 1) return 1;
    Rational best = *pts.begin() + 1 - *pts.rbegin();
    auto prev = pts.begin();
    for (auto it = std::next(prev); it != pts.end(); ++it, ++prev) {
        Rational g = *it - *prev;
        if (g > best) best = g;
    }
    return best;
}

}  // namespace

MinimalityReport orbit_density_probe(const IFS& system, const CirclePoint& x, std::size_t depth,
                                     const Rational& epsilon, std::size_t point_cap) {
    if (depth < 1) throw std::invalid_argument("orbit depth must be >= 1");
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    MinimalityReport report;
    report.base = x;
    report.depth = depth;
    report.epsilon = epsilon;

    // Each point enters at its minimal word length, so revisiting it later can
    // only explore a subset of what the first visit explores.
    std::set<Rational> visited{x.value()};
    std::vector<CirclePoint> frontier{x};
    std::size_t level = 0;
    while (true) {
        report.largest_gap = largest_cyclic_gap(visited);
        report.depth_reached = level;
        if (report.largest_gap < 2 * epsilon) {
            report.verdict = true;
            break;
        }
        if (level == depth || frontier.empty()) break;
        std::vector<CirclePoint> next;
        for (const auto& p : frontier) {
            for (const auto& f : system.generators()) {
                CirclePoint q = f(p);
                if (visited.insert(q.value()).second) next.push_back(std::move(q));
            }
        }
        if (visited.size() > point_cap) {
            throw ResourceError("orbit size " + std::to_string(visited.size()) + " exceeds cap " +
                                std::to_string(point_cap));
        }
        frontier = std::move(next);
        ++level;
    }
    report.orbit_size = visited.size();
    return report;
}

InvarianceReport invariance_check(const IFS& system, const ArcSet& k, const Rational& tol) {
    InvarianceReport report;
    Rational worst = 0;
    for (const auto& f : system.generators()) {
        Rational d = hausdorff(image(f, k), k);
        if (d > worst) worst = d;
        report.distances.push_back(std::move(d));
    }
    report.invariant = worst <= tol;
    return report;
}

bool ConvergenceReport::any_coarsened() const {
    return std::any_of(steps.begin(), steps.end(), [](const ConvergenceStep& s) { return s.coarsened; });
}

ConvergenceReport attractor_probe(const IFS& system, const ArcSet& k, std::size_t budget, const Rational& tol,
                                  const IterateOptions& options) {
    if (budget < 1) throw std::invalid_argument("attractor budget must be >= 1");
    if (tol <= 0) throw std::invalid_argument("attractor tolerance must be positive");
    ConvergenceReport report;
    report.budget = budget;
    report.tol = tol;
    ArcSet current = k;
    bool coarsened = false;
    for (std::size_t n = 0;; ++n) {
        Rational r = gap_radius(current);
        report.steps.push_back({n, r, current.size(), coarsened});
        if (r <= tol) {
            report.converged = true;
            break;
        }
        if (n == budget) break;
        Step s = advance(system, current, options);
        current = std::move(s.set);
        coarsened = s.coarsened;
    }
    return report;
}

}  // namespace hutch
