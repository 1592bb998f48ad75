#pragma once

#include "hutch/experiment.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace testing {

using namespace hutch;

inline Rational random_rational(std::mt19937_64& rng, long max_den = 997) {
    const long q = std::uniform_int_distribution<long>(1, max_den)(rng);
    const long p = std::uniform_int_distribution<long>(0, q - 1)(rng);
    return ratio(p, q);
}

inline CirclePoint random_point(std::mt19937_64& rng, long max_den = 997) {
    return CirclePoint(random_rational(rng, max_den));
}

/// Up to max_arcs arcs with endpoints on the 1/den grid (den a power of two).
inline std::vector<Arc> random_raw_arcs(std::mt19937_64& rng, long den = 64, int max_arcs = 4) {
    const int k = std::uniform_int_distribution<int>(1, max_arcs)(rng);
    std::vector<Arc> arcs;
    for (int i = 0; i < k; ++i) {
        const long s = std::uniform_int_distribution<long>(0, den - 1)(rng);
        const long l = std::uniform_int_distribution<long>(0, den / 3)(rng);
        arcs.emplace_back(CirclePoint(ratio(s, den)), ratio(l, den));
    }
    return arcs;
}

inline ArcSet random_arcset(std::mt19937_64& rng, long den = 64, int max_arcs = 4) {
    return normalize(random_raw_arcs(rng, den, max_arcs));
}

/// Membership on the raw arc list, independent of ArcSet.
inline bool raw_contains(const std::vector<Arc>& arcs, const Rational& x) {
    for (const auto& a : arcs) {
        if (frac(x - a.start.value()) <= a.length) return true;
    }
    return false;
}

/// Brute-force Hausdorff distance over the grid {i / res}: membership by direct
/// test, distances by exhaustive scan of the grid points of the other set.
class GridOracle {
public:
    explicit GridOracle(long resolution) : res_(resolution) {}

    std::vector<long> cells(const std::vector<Arc>& arcs) const {
        std::vector<long> out;
        for (long i = 0; i < res_; ++i) {
            if (raw_contains(arcs, ratio(i, res_))) out.push_back(i);
        }
        return out;
    }

    Rational directed(const std::vector<long>& a, const std::vector<long>& b) const {
        // b is sorted; the nearest grid point of b lies next to the insertion
        // position of i (cyclically), so a sorted scan gives the exact grid min.
        long worst = 0;
        for (long i : a) {
            auto it = std::lower_bound(b.begin(), b.end(), i);
            long best = res_;
            for (auto j : {it == b.end() ? b.front() : *it, it == b.begin() ? b.back() : *std::prev(it)}) {
                long d = std::abs(i - j);
                best = std::min(best, std::min(d, res_ - d));
            }
            worst = std::max(worst, best);
        }
        return ratio(worst, res_);
    }

    Rational hausdorff(const std::vector<Arc>& a, const std::vector<Arc>& b) const {
        auto ca = cells(a), cb = cells(b);
        return max(directed(ca, cb), directed(cb, ca));
    }

    long resolution() const { return res_; }

private:
    long res_;
};

}  // namespace testing
