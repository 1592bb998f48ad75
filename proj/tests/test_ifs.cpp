#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace hutch;

namespace {
Rational q(long p, long d) { return ratio(p, d); }
CirclePoint pt(long p, long d) { return CirclePoint(ratio(p, d)); }
const Rational alpha = ratio(34, 55);

IFS rotation(const Rational& a) { return IFS("rotation", {PLHomeo::rotation(a)}); }

std::vector<IFS> sample_systems() {
    return {theorem2_ifs(alpha), inverse_system(theorem2_ifs(alpha)), rotation(q(1, 3)),
            IFS("mixed", {PLHomeo::rotation(q(1, 5)), theorem2_ifs(alpha)[1]})};
}
}  // namespace

TEST_CASE("empty IFS is rejected") { CHECK_THROWS_AS(IFS("none", {}), std::invalid_argument); }

TEST_CASE("inverse_system examples") {
    auto r = inverse_system(rotation(q(1, 3)));
    CHECK(r[0].is_rotation());
    CHECK(frac(r[0].offset()) == q(2, 3));
    CHECK(eval(inverse_system(theorem2_ifs(alpha))[1], pt(1, 8)) == pt(1, 4));
    std::mt19937_64 rng(9);
    for (const auto& sys : sample_systems()) {
        auto back = inverse_system(inverse_system(sys));
        REQUIRE(back.size() == sys.size());
        for (int i = 0; i < 256; ++i) {
            auto x = testing::random_point(rng);
            for (std::size_t g = 0; g < sys.size(); ++g) CHECK(eval(back[g], x) == eval(sys[g], x));
        }
    }
}

TEST_CASE("hutchinson examples") {
    std::mt19937_64 rng(10);
    IFS id("identity", {PLHomeo::identity()});
    for (int i = 0; i < 32; ++i) {
        auto a = testing::random_arcset(rng);
        CHECK(hutchinson(id, a) == a);
    }
    CHECK(hutchinson(theorem2_ifs(alpha), ArcSet::point(pt(0, 1))) == ArcSet::points({pt(0, 1), CirclePoint(alpha)}));
    for (const auto& sys : sample_systems()) CHECK(hutchinson(sys, ArcSet::full()).is_full());
}

TEST_CASE("iterate examples") {
    auto zero = iterate(rotation(q(1, 4)), ArcSet::point(pt(0, 1)), 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].set == ArcSet::point(pt(0, 1)));
    // the union with the start set: {R} alone would just move the point
    IFS r("rot+id", {PLHomeo::rotation(q(1, 4)), PLHomeo::identity()});
    auto steps = iterate(r, ArcSet::point(pt(0, 1)), 4);
    std::vector<std::size_t> sizes;
    for (const auto& s : steps) sizes.push_back(s.set.size());
    CHECK(sizes == std::vector<std::size_t>{1, 2, 3, 4, 4});
    auto single = iterate(rotation(q(1, 4)), ArcSet::point(pt(0, 1)), 4);
    CHECK(single[4].set == ArcSet::point(pt(0, 1)));
    auto nested = iterate(theorem2_ifs(alpha), ArcSet::point(pt(0, 1)), 6);
    for (std::size_t n = 1; n < nested.size(); ++n) CHECK(is_subset(nested[n - 1].set, nested[n].set));
}

TEST_CASE("arc cap raises ResourceError") {
    IterateOptions opts;
    opts.arc_cap = 50;
    CHECK_THROWS_AS(iterate(theorem2_ifs(alpha), ArcSet::point(pt(1, 3)), 10, opts), ResourceError);
}

TEST_CASE("precision passes are reported") {
    IterateOptions opts;
    opts.coarsen = q(1, 16);
    auto steps = iterate(theorem2_ifs(alpha), ArcSet::point(pt(1, 3)), 6, opts);
    bool fired = false;
    for (const auto& s : steps) fired = fired || s.coarsened;
    CHECK(fired);
    IterateOptions lim;
    lim.denominator_limit = Integer(64);
    for (const auto& s : iterate(theorem2_ifs(alpha), ArcSet::point(pt(1, 3)), 4, lim)) {
        for (const auto& a : s.set.arcs()) {
            CHECK(a.start.value().get_den() <= 64);
            CHECK(a.length.get_den() <= 64);
        }
    }
}

TEST_CASE("orbit_density_probe examples") {
    auto id = orbit_density_probe(IFS("identity", {PLHomeo::identity()}), pt(1, 3), 8, q(1, 64));
    CHECK_FALSE(id.verdict);
    CHECK(id.largest_gap == 1);
    CHECK(orbit_density_probe(rotation(q(13, 21)), pt(0, 1), 21, q(1, 21)).verdict);
    auto t2 = orbit_density_probe(theorem2_ifs(alpha), pt(1, 3), 12, q(1, 64));
    CHECK(t2.verdict);
    CHECK(t2.largest_gap < q(1, 32));
    CHECK(t2.depth_reached <= 12);
}

TEST_CASE("invariance_check examples") {
    for (const auto& sys : sample_systems()) CHECK(invariance_check(sys, ArcSet::full(), 0).invariant);
    CHECK(invariance_check(rotation(q(1, 3)), ArcSet::points({pt(0, 1), pt(1, 3), pt(2, 3)}), 0).invariant);
    auto d = denjoy_approximant(DenjoyParams{});
    IFS g("g", {d.g()});
    CHECK(d.residual > 0);
    CHECK(invariance_check(g, d.k, d.residual).invariant);
    CHECK_FALSE(invariance_check(g, d.k, 0).invariant);
}

TEST_CASE("attractor_probe examples") {
    auto full = attractor_probe(theorem2_ifs(alpha), ArcSet::full(), 10, q(1, 256));
    CHECK(full.converged);
    CHECK(full.steps.back().n == 0);
    auto stuck = attractor_probe(rotation(q(1, 2)), ArcSet::point(pt(0, 1)), 16, q(1, 256));
    CHECK_FALSE(stuck.converged);
    IFS half("half", {PLHomeo::rotation(q(1, 2)), PLHomeo::identity()});
    auto pair = attractor_probe(half, ArcSet::point(pt(0, 1)), 16, q(1, 256));
    CHECK_FALSE(pair.converged);
    CHECK(pair.steps.back().gap_radius == q(1, 4));
    auto t2 = attractor_probe(theorem2_ifs(alpha), ArcSet::point(pt(1, 3)), 64, q(1, 256));
    CHECK(t2.converged);
    CHECK(t2.steps.back().n == 9);
}

TEST_CASE("property: monotonicity and union morphism") {
    std::mt19937_64 rng(11);
    for (const auto& sys : sample_systems()) {
        for (int i = 0; i < 64; ++i) {
            auto a = testing::random_arcset(rng), b = testing::random_arcset(rng);
            auto ab = unite(a, b);
            CHECK(is_subset(hutchinson(sys, a), hutchinson(sys, ab)));
            CHECK(hutchinson(sys, ab) == unite(hutchinson(sys, a), hutchinson(sys, b)));
        }
    }
}

TEST_CASE("property: inverse duality and singleton coherence") {
    std::mt19937_64 rng(12);
    for (const auto& sys : sample_systems()) {
        const auto inv = inverse_system(sys);
        for (int i = 0; i < 64; ++i) {
            auto a = testing::random_arcset(rng);
            CHECK(is_subset(a, hutchinson(sys, hutchinson(inv, a))));
            auto x = testing::random_point(rng);
            std::vector<CirclePoint> images;
            for (const auto& f : sys.generators()) images.push_back(eval(f, x));
            CHECK(hutchinson(sys, ArcSet::point(x)) == ArcSet::points(images));
        }
    }
}

TEST_CASE("property: gap radius non-increasing for nested iteration") {
    std::mt19937_64 rng(13);
    const auto sys = theorem2_ifs(alpha);
    for (int i = 0; i < 16; ++i) {
        auto steps = iterate(sys, testing::random_arcset(rng, 64, 2), 5);
        for (std::size_t n = 1; n < steps.size(); ++n) {
            CHECK(is_subset(steps[n - 1].set, steps[n].set));
            CHECK(gap_radius(steps[n].set) <= gap_radius(steps[n - 1].set));
        }
    }
}
