#include "hutch/homeo.hpp"

#include <algorithm>
#include <stdexcept>

namespace hutch {

PLHomeo PLHomeo::rotation(const Rational& alpha) {
    PLHomeo f;
    f.offset_ = alpha;
    return f;
}

PLHomeo PLHomeo::from_breakpoints(std::vector<std::pair<Rational, Rational>> points, const Rational& offset) {
    PLHomeo f;
    if (points.empty()) {
        f.offset_ = offset;
        return f;
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& x = points[i].first;
        if (x < 0 || x > 1) throw std::invalid_argument("breakpoint x = " + to_string(x) + " outside [0, 1]");
        if (i > 0 && !(points[i - 1].first < x)) {
            throw std::invalid_argument("breakpoint x coordinates must be strictly increasing");
        }
    }
    if (points.size() > 1 && points.back().first == 1) {
        auto closing = points.back();
        points.pop_back();
        if (points.front().first == 0) {
            if (closing.second != points.front().second + 1) {
                throw std::invalid_argument("closing breakpoint at x = 1 violates degree one");
            }
        } else {
            points.insert(points.begin(), {Rational(0), Rational(closing.second - 1)});
        }
    } else if (points.back().first == 1) {
        points.back() = {Rational(0), Rational(points.back().second - 1)};
    }
    for (auto& [x, y] : points) f.knots_.push_back({x, y + offset});
    f.validate();
    return f;
}

void PLHomeo::validate() const {
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (!(knots_[i - 1].x < knots_[i].x)) throw std::invalid_argument("knot x not strictly increasing");
        if (!(knots_[i - 1].y < knots_[i].y)) throw std::invalid_argument("lift not strictly increasing");
    }
    if (!knots_.empty()) {
        if (knots_.front().x < 0 || knots_.back().x >= 1) throw std::invalid_argument("knot x outside [0, 1)");
        if (!(knots_.back().y < knots_.front().y + 1)) {
            throw std::invalid_argument("lift not strictly increasing across the wrap segment");
        }
    }
}

PLHomeo::Segment PLHomeo::segment_at(const Rational& t, bool left) const {
    const std::size_t n = knots_.size();
    // Index of the last knot with x <= t (or x < t when approaching from the left).
    auto it = left ? std::lower_bound(knots_.begin(), knots_.end(), t,
                                      [](const Knot& k, const Rational& v) { return k.x < v; })
                   : std::upper_bound(knots_.begin(), knots_.end(), t,
                                      [](const Rational& v, const Knot& k) { return v < k.x; });
    if (it == knots_.begin()) {
        const Knot& last = knots_.back();
        const Knot& first = knots_.front();
        return {last.x - 1, last.y - 1, first.x, first.y};
    }
    auto idx = static_cast<std::size_t>(std::prev(it) - knots_.begin());
    const Knot& a = knots_[idx];
    if (idx + 1 == n) {
        const Knot& first = knots_.front();
        return {a.x, a.y, first.x + 1, first.y + 1};
    }
    const Knot& b = knots_[idx + 1];
    return {a.x, a.y, b.x, b.y};
}

Rational PLHomeo::lift(const Rational& x) const {
    if (knots_.empty()) return x + offset_;
    const Integer k = floor(x);
    const Rational t = x - Rational(k);
    const Segment s = segment_at(t, false);
    Rational value = s.y0 + (t - s.x0) * (s.y1 - s.y0) / (s.x1 - s.x0);
    value += Rational(k);
    return value;
}

Rational PLHomeo::left_slope(const Rational& x) const {
    if (knots_.empty()) return 1;
    return segment_at(frac(x), true).slope();
}

Rational PLHomeo::right_slope(const Rational& x) const {
    if (knots_.empty()) return 1;
    return segment_at(frac(x), false).slope();
}

PLHomeo PLHomeo::simplified() const {
    if (knots_.empty()) return *this;
    const std::size_t n = knots_.size();
    std::vector<Knot> kept;
    for (std::size_t i = 0; i < n; ++i) {
        if (left_slope(knots_[i].x) != right_slope(knots_[i].x)) kept.push_back(knots_[i]);
    }
    PLHomeo out;
    if (kept.empty()) {
        out.offset_ = knots_.front().y - knots_.front().x;
        return out;
    }
    out.knots_ = std::move(kept);
    return out;
}

PLHomeo invert(const PLHomeo& f) {
    if (f.is_rotation()) return PLHomeo::rotation(-f.offset());
    std::vector<std::pair<Rational, Rational>> swapped;
    swapped.reserve(f.knots().size());
    for (const auto& k : f.knots()) {
        const Rational shift(floor(k.y));
        swapped.emplace_back(k.y - shift, k.x - shift);
    }
    std::sort(swapped.begin(), swapped.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return PLHomeo::from_breakpoints(std::move(swapped));
}

PLHomeo compose(const PLHomeo& f, const PLHomeo& g) {
    if (f.is_rotation() && g.is_rotation()) return PLHomeo::rotation(f.offset() + g.offset());
    std::vector<Rational> xs;
    for (const auto& k : g.knots()) xs.push_back(k.x);
    if (!f.is_rotation()) {
        const PLHomeo g_inv = invert(g);
        for (const auto& k : f.knots()) xs.push_back(frac(g_inv.lift(k.x)));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<std::pair<Rational, Rational>> pts;
    pts.reserve(xs.size());
    for (auto& x : xs) {
        Rational y = f.lift(g.lift(x));
        pts.emplace_back(std::move(x), std::move(y));
    }
    return PLHomeo::from_breakpoints(std::move(pts)).simplified();
}

bool same_map(const PLHomeo& f, const PLHomeo& g) {
    std::vector<Rational> xs{0};
    for (const auto& k : f.knots()) xs.push_back(k.x);
    for (const auto& k : g.knots()) xs.push_back(k.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    // Lifts of the same circle map differ by an integer.
    const Rational shift = f.lift(0) - g.lift(0);
    if (shift.get_den() != 1) return false;
    const std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i) {
        Rational next = i + 1 < n ? xs[i + 1] : Rational(xs.front() + 1);
        Rational mid = (xs[i] + next) / 2;
        if (f.lift(xs[i]) - g.lift(xs[i]) != shift || f.lift(mid) - g.lift(mid) != shift) return false;
    }
    return true;
}

Arc image_arc(const PLHomeo& f, const Arc& a) {
    if (a.is_full()) return Arc::full();
    const Rational lo = f.lift(a.start.value());
    const Rational hi = f.lift(a.end_lift());
    return Arc(CirclePoint(lo), hi - lo);
}

ArcSet image(const PLHomeo& f, const ArcSet& a) {
    std::vector<Arc> arcs;
    arcs.reserve(a.size());
    for (const auto& arc : a.arcs()) arcs.push_back(image_arc(f, arc));
    return normalize(std::move(arcs));
}

std::optional<ArcSet> fixed_points(const PLHomeo& f) {
    if (f.is_rotation()) {
        if (f.offset() == Rational(floor(f.offset()))) return ArcSet::full();
        return std::nullopt;
    }
    std::vector<Arc> found;
    const auto& ks = f.knots();
    const std::size_t n = ks.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Rational& xa = ks[i].x;
        const Rational& ya = ks[i].y;
        const Rational xb = i + 1 < n ? ks[i + 1].x : Rational(ks.front().x + 1);
        const Rational yb = i + 1 < n ? ks[i + 1].y : Rational(ks.front().y + 1);
        // Displacement y - x is linear on the segment; fixed points are where it is an integer.
        const Rational da = ya - xa;
        const Rational db = yb - xb;
        if (da == db) {
            if (da == Rational(floor(da))) found.emplace_back(CirclePoint(xa), xb - xa);
            continue;
        }
        const Rational& lo = min(da, db);
        const Rational& hi = max(da, db);
        Integer k = floor(lo);
        if (Rational(k) < lo) k += 1;
        for (; Rational(k) <= hi; k += 1) {
            Rational x = xa + (Rational(k) - da) * (xb - xa) / (db - da);
            found.push_back(Arc::point(CirclePoint(x)));
        }
    }
    if (found.empty()) return std::nullopt;
    return normalize(std::move(found));
}

bool is_attracting(const PLHomeo& f, const CirclePoint& p) {
    if (!(f(p) == p)) throw std::invalid_argument("point " + to_string(p.value()) + " is not fixed");
    return f.left_slope(p.value()) < 1 && f.right_slope(p.value()) < 1;
}

RationalInterval rotation_number_estimate(const PLHomeo& f, unsigned n) {
    if (n == 0) throw std::invalid_argument("rotation number estimate needs n >= 1");
    Rational x = 0;
    for (unsigned i = 0; i < n; ++i) x = f.lift(x);
    return {(x - 1) / n, (x + 1) / n};
}

}  // namespace hutch
