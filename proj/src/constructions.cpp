#include "hutch/constructions.hpp"

#include <algorithm>
#include <stdexcept>

namespace hutch {

namespace {

using Point = std::pair<Rational, Rational>;

Point rp(long x_num, long x_den, long y_num, long y_den) {
    return {ratio(x_num, x_den), ratio(y_num, y_den)};
}

// Knots given on a continuous lift, possibly outside [0, 1): shift each into
// the fundamental domain together with its value.
std::vector<Point> reduce_lifted(std::vector<Point> pts) {
    for (auto& [x, y] : pts) {
        const Rational k(floor(x));
        x -= k;
        y -= k;
    }
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.first < b.first; });
    return pts;
}

// Knots whose values are only known mod 1: choose the lift with displacement
// in [0, 1) at the first knot and increments in (0, 1) afterwards.
std::vector<Point> unwrap_values(std::vector<Point> pts) {
    pts = reduce_lifted(std::move(pts));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto& [x, y] = pts[i];
        const Rational& anchor = i == 0 ? x : pts[i - 1].second;
        y = anchor + frac(y - anchor);
    }
    return pts;
}

}  // namespace

IFS theorem2_ifs(const Rational& alpha) {
    if (alpha <= 0 || alpha >= 1) throw std::invalid_argument("rotation angle must lie in (0, 1)");
    auto f2 = PLHomeo::from_breakpoints({rp(0, 1, 0, 1), rp(1, 4, 1, 8), rp(1, 2, 1, 2), rp(1, 1, 1, 1)});
    auto f3 = PLHomeo::from_breakpoints({rp(0, 1, 0, 1), rp(5, 8, 5, 8), rp(6, 8, 7, 8), rp(1, 1, 1, 1)});
    auto f4 = PLHomeo::from_breakpoints(
        {rp(0, 1, 0, 1), rp(1, 2, 1, 2), rp(5, 8, 3, 4), rp(7, 8, 7, 8), rp(1, 1, 1, 1)});
    return IFS("theorem2", {PLHomeo::rotation(alpha), std::move(f2), std::move(f3), std::move(f4)});
}

DiagonalReport diagonal_containment_check(const IFS& system) {
    DiagonalReport report;
    std::vector<Arc> cover;
    for (std::size_t i = 0; i < system.size(); ++i) {
        if (auto fixed = fixed_points(system[i])) {
            cover.insert(cover.end(), fixed->arcs().begin(), fixed->arcs().end());
            report.witness.emplace_back(i, std::move(*fixed));
        }
    }
    report.contained = !cover.empty() && normalize(std::move(cover)).is_full();
    return report;
}

const Arc& DenjoyApproximant::gap(int index) const {
    for (const auto& g : gaps) {
        if (g.index == index) return g.arc;
    }
    throw std::out_of_range("no gap with index " + std::to_string(index));
}

DenjoyApproximant denjoy_approximant(const DenjoyParams& params) {
    const auto& alpha = params.alpha;
    const auto& lambda = params.lambda;
    const auto& s = params.mass;
    const int n_max = static_cast<int>(params.stage);
    if (alpha <= 0 || alpha >= 1) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (alpha.get_den() <= 2 * n_max + 2) {
        throw std::invalid_argument("denominator of alpha must exceed 2N + 2 so the orbit points are distinct");
    }
    if (lambda <= 0 || lambda >= 1) throw std::invalid_argument("lambda must lie in (0, 1)");
    if (s <= 0 || s >= 1) throw std::invalid_argument("gap mass must lie in (0, 1)");
    if (params.generators < 1) throw std::invalid_argument("need at least one Denjoy map");

    Rational z = 0;
    for (int n = -n_max; n <= n_max; ++n) z += pow(lambda, static_cast<unsigned>(std::abs(n)));
    auto length = [&](int n) {
        return Rational(s * pow(lambda, static_cast<unsigned>(std::abs(n))) / z);
    };
    auto theta = [&](int n) { return frac(params.x0 + n * alpha); };
    const Rational seam = length(n_max + 1);
    if (!(seam < (1 - s) / Rational(alpha.get_den()))) {
        throw std::invalid_argument("seam intervals do not fit inside K_N; lower lambda or raise the stage");
    }
    auto phi = [&](const Rational& t) {
        Rational x = (1 - s) * t;
        for (int m = -n_max; m <= n_max; ++m) {
            if (theta(m) < t) x += length(m);
        }
        return x;
    };

    DenjoyApproximant d;
    d.params = params;
    std::vector<Rational> starts;  // landmark starts for n = -N-1 .. N+1
    for (int n = -n_max - 1; n <= n_max + 1; ++n) starts.push_back(phi(theta(n)));
    auto start = [&](int n) -> const Rational& { return starts[static_cast<std::size_t>(n + n_max + 1)]; };

    std::vector<Arc> gap_arcs;
    for (int n = -n_max; n <= n_max; ++n) {
        d.gaps.push_back({n, Arc(CirclePoint(start(n)), length(n))});
        gap_arcs.push_back(d.gaps.back().arc);
    }
    d.seams.push_back({-n_max - 1, Arc(CirclePoint(start(-n_max - 1)), seam)});
    d.seams.push_back({n_max + 1, Arc(CirclePoint(start(n_max + 1)), seam)});

    std::vector<Arc> k_arcs;
    for (const auto& g : complement_gaps(normalize(gap_arcs))) k_arcs.emplace_back(g.start, g.length);
    d.k = normalize(std::move(k_arcs));

    for (unsigned i = 0; i < params.generators; ++i) {
        std::vector<Point> pts;
        const Rational r = i == 0 ? Rational(0) : Rational(1, i + 2);
        for (int n = -n_max - 1; n <= n_max; ++n) {
            const Rational& a = start(n);
            const Rational& b = start(n + 1);
            const Rational la = length(n);
            const Rational lb = length(n + 1);
            pts.emplace_back(a, b);
            if (i > 0) pts.emplace_back(a + r * la, b + (1 - r) * lb);
            pts.emplace_back(a + la, b + lb);
        }
        d.maps.push_back(PLHomeo::from_breakpoints(unwrap_values(std::move(pts))));
    }

    d.residual = 0;
    for (const auto& f : d.maps) d.residual = max(d.residual, hausdorff(image(f, d.k), d.k));
    return d;
}

BlowupMap blowup_map(const DenjoyApproximant& d, int gap_index, const Rational& sigma) {
    if (sigma <= 0 || sigma >= 1) throw std::invalid_argument("contraction sigma must lie in (0, 1)");
    const Arc& target = d.gap(gap_index);
    if (target.length <= 0) throw std::invalid_argument("target gap has zero length");

    std::vector<Arc> sorted;
    for (const auto& g : d.gaps) sorted.push_back(g.arc);
    std::sort(sorted.begin(), sorted.end(), [](const Arc& x, const Arc& y) { return x.start < y.start; });
    const auto pos = static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), target) - sorted.begin());
    const std::size_t m = sorted.size();

    const Rational a = target.start.value();
    const Rational len = target.length;
    const Rational b = a + len;
    const Rational p = a + len / 2;
    Rational c, e;  // anchors: ends of the K components adjacent to the gap
    if (m == 1) {
        e = (b + a + 1) / 2;
        c = e - 1;
    } else {
        c = sorted[(pos + m - 1) % m].end_lift();
        while (c > a) c -= 1;
        e = sorted[(pos + 1) % m].start.value();
        while (e < b) e += 1;
    }
    const Rational push = len / 4;
    const Rational ml = (a + p) / 2;
    const Rational mr = (p + b) / 2;
    std::vector<Point> pts{{c, c},
                           {a, a + push},
                           {ml, p - sigma * (p - ml)},
                           {p, p},
                           {mr, p + sigma * (mr - p)},
                           {b, b - push}};
    if (m > 1) pts.emplace_back(e, e);

    BlowupMap out{PLHomeo::from_breakpoints(reduce_lifted(std::move(pts))),
                  CirclePoint(p),
                  target,
                  gap_index,
                  sigma,
                  Arc(CirclePoint(c), min(Rational(e - c), Rational(1)))};

    if (!(out.h(out.p) == out.p)) throw std::logic_error("blowup map does not fix p");
    if (!is_attracting(out.h, out.p)) throw std::logic_error("blowup fixed point is not attracting");
    if (d.k.contains(out.p)) throw std::logic_error("blowup fixed point lies in K_N");
    const ArcSet hk = image(out.h, d.k);
    if (!is_subset(d.k, hk) || !(hk.measure() > d.k.measure())) {
        throw std::logic_error("h(K_N) does not strictly contain K_N");
    }
    return out;
}

Theorem1System theorem1_system(const DenjoyApproximant& d, const BlowupMap& b) {
    bool matches = false;
    for (const auto& g : d.gaps) matches |= g.index == b.gap_index && g.arc == b.target_gap;
    if (!matches) throw std::invalid_argument("blowup map was not built from this approximant");
    std::vector<PLHomeo> gens;
    for (const auto& f : d.maps) {
        gens.push_back(f);
        gens.push_back(invert(f));
    }
    gens.push_back(b.h);
    IFS forward("theorem1", std::move(gens));
    IFS backward = inverse_system(forward);
    return {std::move(forward), std::move(backward)};
}

Theorem1System theorem1_system(const Theorem1Params& params) {
    auto d = denjoy_approximant(params.denjoy);
    auto b = blowup_map(d, params.gap_index, params.sigma);
    return theorem1_system(d, b);
}

}  // namespace hutch
