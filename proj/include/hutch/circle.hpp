#pragma once

#include "hutch/rational.hpp"

#include <optional>
#include <vector>

namespace hutch {

/// A point of S^1 = R/Z, stored as its canonical representative in [0, 1).
class CirclePoint {
public:
    CirclePoint() = default;
    CirclePoint(const Rational& lift) : value_(frac(lift)) {}  // NOLINT(implicit)
    CirclePoint(long num, unsigned long den) : CirclePoint(ratio(num, static_cast<long>(den))) {}

    const Rational& value() const { return value_; }

    friend bool operator==(const CirclePoint& a, const CirclePoint& b) { return a.value_ == b.value_; }
    friend bool operator<(const CirclePoint& a, const CirclePoint& b) { return a.value_ < b.value_; }

private:
    Rational value_ = 0;
};

/// Arc-length distance on the unit-circumference circle; lies in [0, 1/2].
Rational circle_dist(const CirclePoint& a, const CirclePoint& b);

/// Closed arc {start + t mod 1 : 0 <= t <= length}. length = 1 is the whole
/// circle, length = 0 a singleton.
struct Arc {
    CirclePoint start;
    Rational length = 0;

    Arc() = default;
    Arc(CirclePoint s, Rational len);

    static Arc full() { return Arc(CirclePoint(), 1); }
    static Arc point(const CirclePoint& p) { return Arc(p, 0); }

    bool is_full() const { return length == 1; }
    /// Lift of the end point: start.value() + length (may exceed 1).
    Rational end_lift() const { return start.value() + length; }
    CirclePoint end() const { return CirclePoint(end_lift()); }
    bool contains(const CirclePoint& p) const;

    friend bool operator==(const Arc& a, const Arc& b) { return a.start == b.start && a.length == b.length; }
};

/// Maximal open arc of the complement of an ArcSet.
struct Gap {
    CirclePoint start;
    Rational length;
};

/// Non-empty finite union of closed arcs in canonical form: sorted by start,
/// closures pairwise disjoint, full circle stored as the single arc [0, 1].
class ArcSet {
public:
    /// The full circle.
    ArcSet() : arcs_{Arc::full()} {}

    /// Merges overlapping and touching arcs. Throws std::invalid_argument on
    /// empty input.
    static ArcSet normalize(std::vector<Arc> raw);
    static ArcSet full() { return ArcSet({Arc::full()}, canonical_tag{}); }
    static ArcSet point(const CirclePoint& p) { return ArcSet({Arc::point(p)}, canonical_tag{}); }
    static ArcSet points(const std::vector<CirclePoint>& pts);

    const std::vector<Arc>& arcs() const { return arcs_; }
    std::size_t size() const { return arcs_.size(); }
    bool is_full() const { return arcs_.size() == 1 && arcs_.front().is_full(); }
    /// Total length of the arcs.
    Rational measure() const;
    bool contains(const CirclePoint& p) const;

    friend bool operator==(const ArcSet& a, const ArcSet& b) { return a.arcs_ == b.arcs_; }

private:
    struct canonical_tag {};
    ArcSet(std::vector<Arc> arcs, canonical_tag) : arcs_(std::move(arcs)) {}

    std::vector<Arc> arcs_;
};

inline ArcSet normalize(std::vector<Arc> raw) { return ArcSet::normalize(std::move(raw)); }

ArcSet unite(const ArcSet& a, const ArcSet& b);

/// The open gaps of S^1 \ a, sorted by start; empty iff a is the circle.
std::vector<Gap> complement_gaps(const ArcSet& a);

bool is_subset(const ArcSet& a, const ArcSet& b);

/// sup over x in a of the distance from x to b.
Rational directed_hausdorff(const ArcSet& a, const ArcSet& b);

/// Exact Hausdorff distance under circle_dist.
Rational hausdorff(const ArcSet& a, const ArcSet& b);

/// hausdorff(a, S^1): half the length of the largest gap.
Rational gap_radius(const ArcSet& a);

struct CoarsenResult {
    ArcSet set;
    bool fired = false;
};

/// Fills every gap strictly shorter than eta.
CoarsenResult coarsen(const ArcSet& a, const Rational& eta);

/// Rounds every arc endpoint to the nearest rational with bounded denominator.
ArcSet limit_denominator(const ArcSet& a, const Integer& max_denominator);

}  // namespace hutch
