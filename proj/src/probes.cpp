#include "hutch/probes.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <stdexcept>
#include <thread>

namespace hutch {

namespace {

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    for (unsigned t = 0; t < count; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n && !failed; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

struct LockstepResult {
    Rational max_pairwise;
    std::vector<Rational> gap_radius_at;  // per sample, at the recorded step
};

// Iterates the singletons of every sample together for n = 0..truncation,
// tracking the max pairwise Hausdorff distance. Stops early once all sets
// coincide (their futures then coincide too).
LockstepResult lockstep(const IFS& system, const std::vector<CirclePoint>& samples, std::size_t truncation,
                        const IterateOptions& options, std::optional<std::size_t> record_step) {
    std::vector<ArcSet> sets;
    sets.reserve(samples.size());
    for (const auto& p : samples) sets.push_back(ArcSet::point(p));
    LockstepResult out;
    out.max_pairwise = 0;
    auto record = [&](std::size_t n) {
        if (record_step && *record_step == n) {
            out.gap_radius_at.clear();
            for (const auto& s : sets) out.gap_radius_at.push_back(gap_radius(s));
        }
    };
    for (std::size_t n = 0;; ++n) {
        bool all_equal = true;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                if (sets[i] == sets[j]) continue;
                all_equal = false;
                Rational d = hausdorff(sets[i], sets[j]);
                if (d > out.max_pairwise) out.max_pairwise = d;
            }
        }
        record(n);
        const bool need_more_for_record = record_step && *record_step > n;
        if (n == truncation || (all_equal && !need_more_for_record)) break;
        for (auto& s : sets) s = advance(system, s, options).set;
    }
    return out;
}

}  // namespace

std::vector<CirclePoint> stratified_points(std::size_t n) {
    std::vector<CirclePoint> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.emplace_back(ratio(static_cast<long>(2 * i + 1), static_cast<long>(2 * n)));
    return pts;
}

Rational dF_estimate(const IFS& system, const CirclePoint& x1, const CirclePoint& x2, std::size_t truncation,
                     const IterateOptions& options) {
    return lockstep(system, {x1, x2}, truncation, options, std::nullopt).max_pairwise;
}

ModulusReport equicontinuity_probe(const IFS& system, const CirclePoint& x, const std::vector<Rational>& deltas,
                                   std::size_t truncation, std::size_t samples, const ProbeOptions& options) {
    if (samples < 2) throw std::invalid_argument("equicontinuity probe needs at least 2 samples per delta");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (deltas[i] <= 0 || deltas[i] > Rational(1, 2)) throw std::invalid_argument("delta outside (0, 1/2]");
        if (i > 0 && !(deltas[i] < deltas[i - 1])) throw std::invalid_argument("delta grid must be decreasing");
    }
    ModulusReport report;
    report.base = x;
    report.truncation = truncation;
    report.samples = samples;

    // Random offsets are drawn up front so results do not depend on scheduling.
    constexpr long kRandomResolution = 1L << 30;
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<long> pick(-kRandomResolution, kRandomResolution);
    std::vector<std::vector<Rational>> offsets(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        for (std::size_t s = 0; s < samples; ++s) {
            offsets[i].push_back(deltas[i] * ratio(2 * static_cast<long>(s) - static_cast<long>(samples - 1),
                                                      static_cast<long>(samples - 1)));
        }
        for (std::size_t s = 0; s < options.random_samples; ++s) {
            offsets[i].push_back(deltas[i] * ratio(pick(rng), kRandomResolution));
        }
    }

    std::vector<Rational> raw(deltas.size());
    parallel_for(deltas.size(), options.threads, [&](std::size_t i) {
        Rational best = 0;
        for (const auto& offset : offsets[i]) {
            CirclePoint y(x.value() + offset);
            Rational d = dF_estimate(system, x, y, truncation, options.iterate);
            if (d > best) best = d;
        }
        raw[i] = best;
    });
    Rational running = 0;
    std::vector<Rational> modulus(deltas.size());
    for (std::size_t i = deltas.size(); i-- > 0;) {
        if (raw[i] > running) running = raw[i];
        modulus[i] = running;
    }
    for (std::size_t i = 0; i < deltas.size(); ++i) report.entries.push_back({deltas[i], modulus[i]});
    return report;
}

std::optional<std::size_t> covering_time(const IFS& system, const Arc& u, std::size_t budget,
                                         const ProbeOptions& options) {
    if (u.length <= 0) throw std::invalid_argument("covering_time needs an arc of positive length");
    if (budget < 1) throw std::invalid_argument("covering budget must be >= 1");
    const bool slack = options.cover.coarsen.has_value();
    auto covered = [&](const ArcSet& a) {
        return a.is_full() || (slack && gap_radius(a) <= options.exactness_slack);
    };
    ArcSet current = normalize({u});
    if (covered(current)) return 0;
    for (std::size_t n = 1; n <= budget; ++n) {
        current = advance(system, current, options.cover).set;
        if (covered(current)) return n;
    }
    return std::nullopt;
}

std::string SensitivityReport::verdict() const {
    if (sensitive) return "sensitive with eps >= " + to_string(lower_bound) + " empirically";
    return "not sensitive at tested scales";
}

SensitivityReport sensitivity_probe(const IFS& system, const std::vector<Rational>& lengths,
                                    const std::vector<CirclePoint>& centers, std::size_t truncation,
                                    std::size_t samples_per_arc, const ProbeOptions& options) {
    if (centers.empty()) throw std::invalid_argument("sensitivity probe needs at least one center");
    if (samples_per_arc < 2) throw std::invalid_argument("sensitivity probe needs at least 2 samples per arc");
    for (const auto& l : lengths) {
        if (l <= 0 || l >= 1) throw std::invalid_argument("arc length outside (0, 1)");
    }
    SensitivityReport report;
    report.lengths = lengths;
    report.truncation = truncation;
    report.arcs.resize(lengths.size() * centers.size());

    parallel_for(report.arcs.size(), options.threads, [&](std::size_t idx) {
        const Rational& len = lengths[idx / centers.size()];
        const CirclePoint& c = centers[idx % centers.size()];
        ArcProbe probe;
        probe.length = len;
        probe.center = c;
        const Arc u(CirclePoint(c.value() - len / 2), len);

        std::vector<CirclePoint> samples;
        for (std::size_t s = 0; s < samples_per_arc; ++s) {
            samples.emplace_back(u.start.value() +
                                 len * ratio(static_cast<long>(s), static_cast<long>(samples_per_arc - 1)));
        }
        probe.covering_time = covering_time(system, u, truncation, options);
        auto lock = lockstep(system, samples, truncation, options.iterate, probe.covering_time);
        probe.pair_estimate = lock.max_pairwise;
        probe.diameter = probe.pair_estimate;
        if (probe.covering_time) {
            Rational bound = *std::max_element(lock.gap_radius_at.begin(), lock.gap_radius_at.end());
            if (bound > probe.diameter) probe.diameter = bound;
            probe.covering_bound = std::move(bound);
        }
        report.arcs[idx] = std::move(probe);
    });

    report.lower_bound = report.arcs.empty() ? Rational(0) : report.arcs.front().diameter;
    bool all_covered = true;
    for (const auto& a : report.arcs) {
        if (a.diameter < report.lower_bound) report.lower_bound = a.diameter;
        if (!a.covering_time) all_covered = false;
    }
    Rational longest = 0;
    for (const auto& l : lengths) longest = max(longest, l);
    report.sensitive = !report.arcs.empty() && all_covered && report.lower_bound > longest;
    return report;
}

}  // namespace hutch
