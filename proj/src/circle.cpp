#include "hutch/circle.hpp"

#include <algorithm>
#include <stdexcept>

namespace hutch {

Rational circle_dist(const CirclePoint& a, const CirclePoint& b) {
    Rational d = abs(a.value() - b.value());
    Rational other = 1 - d;
    return min(d, other);
}

Arc::Arc(CirclePoint s, Rational len) : start(std::move(s)), length(std::move(len)) {
    length.canonicalize();
    if (length < 0 || length > 1) {
        throw std::invalid_argument("arc length " + to_string(length) + " outside [0, 1]");
    }
    if (length == 1) start = CirclePoint();
}

bool Arc::contains(const CirclePoint& p) const {
    if (is_full()) return true;
    return frac(p.value() - start.value()) <= length;
}

namespace {

struct Interval {
    Rational lo;
    Rational hi;
};

// Index of the arc of a containing p, or npos.
std::size_t locate(const ArcSet& a, const CirclePoint& p) {
    const auto& arcs = a.arcs();
    auto it = std::upper_bound(arcs.begin(), arcs.end(), p,
                               [](const CirclePoint& x, const Arc& arc) { return x < arc.start; });
    if (it != arcs.begin()) {
        auto idx = static_cast<std::size_t>(std::prev(it) - arcs.begin());
        if (arcs[idx].contains(p)) return idx;
    }
    // Only the last arc can wrap past 1 and cover points before the first start.
    if (arcs.back().contains(p)) return arcs.size() - 1;
    return std::string::npos;
}

}  // namespace

ArcSet ArcSet::normalize(std::vector<Arc> raw) {
    if (raw.empty()) throw std::invalid_argument("empty set not in hyperspace");
    std::vector<Interval> ivs;
    ivs.reserve(raw.size());
    for (auto& arc : raw) {
        if (arc.is_full()) return full();
        ivs.push_back({arc.start.value(), arc.end_lift()});
    }
    std::sort(ivs.begin(), ivs.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });

    std::vector<Interval> merged;
    merged.reserve(ivs.size());
    for (auto& iv : ivs) {
        if (!merged.empty() && iv.lo <= merged.back().hi) {
            if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
        } else {
            merged.push_back(std::move(iv));
        }
    }
    // The last interval may run past 1 and swallow leading ones.
    std::size_t first = 0;
    while (merged.size() - first > 1 && merged.back().hi >= merged[first].lo + 1) {
        Rational shifted = merged[first].hi + 1;
        if (shifted > merged.back().hi) merged.back().hi = shifted;
        ++first;
    }
    if (merged.back().hi - merged.back().lo >= 1) return full();

    std::vector<Arc> arcs;
    arcs.reserve(merged.size() - first);
    for (std::size_t i = first; i < merged.size(); ++i) {
        arcs.emplace_back(CirclePoint(merged[i].lo), merged[i].hi - merged[i].lo);
    }
    return ArcSet(std::move(arcs), canonical_tag{});
}

ArcSet ArcSet::points(const std::vector<CirclePoint>& pts) {
    std::vector<Arc> arcs;
    arcs.reserve(pts.size());
    for (const auto& p : pts) arcs.push_back(Arc::point(p));
    return normalize(std::move(arcs));
}

Rational ArcSet::measure() const {
    Rational total = 0;
    for (const auto& a : arcs_) total += a.length;
    return total;
}

bool ArcSet::contains(const CirclePoint& p) const { return locate(*this, p) != std::string::npos; }

ArcSet unite(const ArcSet& a, const ArcSet& b) {
    std::vector<Arc> all = a.arcs();
    all.insert(all.end(), b.arcs().begin(), b.arcs().end());
    return normalize(std::move(all));
}

std::vector<Gap> complement_gaps(const ArcSet& a) {
    std::vector<Gap> gaps;
    if (a.is_full()) return gaps;
    const auto& arcs = a.arcs();
    const std::size_t n = arcs.size();
    gaps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational end = arcs[i].end_lift();
        Rational next = arcs[(i + 1) % n].start.value();
        if (i + 1 == n) next += 1;
        gaps.push_back({CirclePoint(end), next - end});
    }
    std::sort(gaps.begin(), gaps.end(), [](const Gap& x, const Gap& y) { return x.start < y.start; });
    return gaps;
}

bool is_subset(const ArcSet& a, const ArcSet& b) {
    if (b.is_full()) return true;
    for (const auto& arc : a.arcs()) {
        if (arc.is_full()) return false;
        const auto idx = locate(b, arc.start);
        if (idx == std::string::npos) return false;
        const Arc& host = b.arcs()[idx];
        if (frac(arc.start.value() - host.start.value()) + arc.length > host.length) return false;
    }
    return true;
}

// Every point of a lying in a gap G of b is at distance min(t, L - t) from b,
// t being its offset into G. The sup over a closed sub-interval of G of that
// tent function is L/2 if the interval straddles the midpoint, otherwise its
// value at the endpoint nearer the midpoint.
Rational directed_hausdorff(const ArcSet& a, const ArcSet& b) {
    if (b.is_full()) return 0;
    std::vector<Interval> lifted;
    lifted.reserve(3 * a.size());
    for (int shift = -1; shift <= 1; ++shift) {
        for (const auto& arc : a.arcs()) {
            Rational lo = arc.start.value() + shift;
            lifted.push_back({lo, lo + arc.length});
        }
    }
    Rational best = 0;
    for (const auto& gap : complement_gaps(b)) {
        const Rational& gs = gap.start.value();
        const Rational& len = gap.length;
        const Rational ge = gs + len;
        const Rational mid = len / 2;
        auto it = std::upper_bound(lifted.begin(), lifted.end(), gs,
                                   [](const Rational& x, const Interval& iv) { return x < iv.hi; });
        for (; it != lifted.end() && it->lo < ge; ++it) {
            Rational tu = max(it->lo, gs) - gs;
            Rational tv = min(it->hi, ge) - gs;
            Rational value;
            if (tu <= mid && mid <= tv) {
                value = mid;
            } else {
                Rational du = min(tu, Rational(len - tu));
                Rational dv = min(tv, Rational(len - tv));
                value = max(du, dv);
            }
            if (value > best) best = value;
            if (best == mid && mid == Rational(1, 2)) return best;
        }
    }
    return best;
}

Rational hausdorff(const ArcSet& a, const ArcSet& b) {
    if (a == b) return 0;
    return max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

Rational gap_radius(const ArcSet& a) {
    Rational largest = 0;
    for (const auto& g : complement_gaps(a)) {
        if (g.length > largest) largest = g.length;
    }
    return largest / 2;
}

CoarsenResult coarsen(const ArcSet& a, const Rational& eta) {
    if (eta <= 0) return {a, false};
    std::vector<Arc> arcs = a.arcs();
    bool fired = false;
    for (const auto& g : complement_gaps(a)) {
        if (g.length < eta) {
            arcs.emplace_back(g.start, g.length);
            fired = true;
        }
    }
    if (!fired) return {a, false};
    return {normalize(std::move(arcs)), true};
}

ArcSet limit_denominator(const ArcSet& a, const Integer& max_denominator) {
    if (a.is_full()) return a;
    std::vector<Arc> arcs;
    arcs.reserve(a.size());
    for (const auto& arc : a.arcs()) {
        Rational lo = limit_denominator(arc.start.value(), max_denominator);
        Rational hi = limit_denominator(arc.end_lift(), max_denominator);
        Rational len = hi - lo;
        if (len < 0) len = 0;
        if (len > 1) len = 1;
        arcs.emplace_back(CirclePoint(lo), len);
    }
    return normalize(std::move(arcs));
}

}  // namespace hutch
