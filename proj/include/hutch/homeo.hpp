#pragma once

#include "hutch/circle.hpp"

#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

namespace hutch {

/// A breakpoint of a degree-one lift: x in [0, 1), y the lift value at x.
struct Knot {
    Rational x;
    Rational y;

    friend bool operator==(const Knot& a, const Knot& b) { return a.x == b.x && a.y == b.y; }
};

/// Orientation-preserving piecewise-linear homeomorphism of the circle.
///
/// The lift on [0, 1) interpolates the knots linearly, closing up with the
/// segment from the last knot to (x_0 + 1, y_0 + 1), and satisfies
/// F(x + 1) = F(x) + 1. A map with no knots is the rotation x -> x + offset.
/// Every constructor checks that all slopes are positive, so an instance is
/// always a homeomorphism.
class PLHomeo {
public:
    PLHomeo() = default;  // identity

    static PLHomeo identity() { return {}; }
    static PLHomeo rotation(const Rational& alpha);

    /// Builds the map from lift breakpoints over [0, 1]. A closing point at
    /// x = 1 (e.g. the (1, 1) of a graph drawn on the unit square) is accepted
    /// and must agree with degree one. The offset is added to every y.
    static PLHomeo from_breakpoints(std::vector<std::pair<Rational, Rational>> points,
                                    const Rational& offset = 0);

    bool is_rotation() const { return knots_.empty(); }
    /// Rotation amount; only meaningful when is_rotation().
    const Rational& offset() const { return offset_; }
    const std::vector<Knot>& knots() const { return knots_; }

    /// Value of the lift at an arbitrary real (rational) argument.
    Rational lift(const Rational& x) const;
    CirclePoint operator()(const CirclePoint& p) const { return CirclePoint(lift(p.value())); }

    /// One-sided slopes of the lift at x.
    Rational left_slope(const Rational& x) const;
    Rational right_slope(const Rational& x) const;

    /// Drops collinear knots; an all-slope-one map becomes a rotation.
    PLHomeo simplified() const;

private:
    struct Segment {
        Rational x0, y0, x1, y1;
        Rational slope() const { return (y1 - y0) / (x1 - x0); }
    };
    // Segment of the lift containing t in [0,1): [t, t+eps) if !left, (t-eps, t] if left.
    Segment segment_at(const Rational& t, bool left) const;
    void validate() const;

    std::vector<Knot> knots_;
    Rational offset_ = 0;
};

inline CirclePoint eval(const PLHomeo& f, const CirclePoint& x) { return f(x); }

PLHomeo invert(const PLHomeo& f);

/// f o g.
PLHomeo compose(const PLHomeo& f, const PLHomeo& g);

/// True iff f and g agree at every knot of both maps and at segment midpoints
/// of the common refinement, which for PL maps means they are equal.
bool same_map(const PLHomeo& f, const PLHomeo& g);

Arc image_arc(const PLHomeo& f, const Arc& a);
ArcSet image(const PLHomeo& f, const ArcSet& a);

/// The exact set {x : f(x) = x}, or nullopt when f has no fixed point.
std::optional<ArcSet> fixed_points(const PLHomeo& f);

/// PL attraction test: both one-sided slopes at p are below 1. Throws
/// std::invalid_argument when p is not fixed.
bool is_attracting(const PLHomeo& f, const CirclePoint& p);

struct RationalInterval {
    Rational lo;
    Rational hi;
    bool contains(const Rational& r) const { return lo <= r && r <= hi; }
};

/// Interval [(F^n(0) - 1)/n, (F^n(0) + 1)/n] containing the rotation number of
/// the stored lift.
RationalInterval rotation_number_estimate(const PLHomeo& f, unsigned n);

/// Finite word over the 1-based generator alphabet; symbols()[0] acts first.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<std::size_t> s) : symbols_(s) {}
    explicit Word(std::vector<std::size_t> s) : symbols_(std::move(s)) {}

    const std::vector<std::size_t>& symbols() const { return symbols_; }
    std::size_t length() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }

private:
    std::vector<std::size_t> symbols_;
};

}  // namespace hutch
