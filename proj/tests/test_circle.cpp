#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace hutch;
using testing::GridOracle;

namespace {
ArcSet arcs(std::initializer_list<std::pair<Rational, Rational>> list) {
    std::vector<Arc> raw;
    for (const auto& [s, l] : list) raw.emplace_back(CirclePoint(s), l);
    return normalize(raw);
}
Rational q(long p, long d) { return ratio(p, d); }
}  // namespace

TEST_CASE("rational parsing and rendering") {
    CHECK(parse_rational("3/4") == q(3, 4));
    CHECK(parse_rational("-6/8") == q(-3, 4));
    CHECK(parse_rational("5") == 5);
    CHECK_THROWS_AS(parse_rational("0.3"), ParseError);
    CHECK_THROWS_AS(parse_rational("1e3"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK(to_string(Rational(2)) == "2/1");
    CHECK(to_string(q(-1, 3)) == "-1/3");
    CHECK(to_decimal(q(1, 3)) == "0.333333333333");
    CHECK(limit_denominator(q(314159, 100000), 7) == q(22, 7));
    CHECK(frac(q(-1, 4)) == q(3, 4));
}

TEST_CASE("circle points are canonical") {
    CHECK(CirclePoint(q(5, 4)).value() == q(1, 4));
    CHECK(CirclePoint(q(-1, 8)).value() == q(7, 8));
    CHECK(CirclePoint(Rational(1)).value() == 0);
}

TEST_CASE("circle_dist examples") {
    CHECK(circle_dist(CirclePoint(0, 1), CirclePoint(0, 1)) == 0);
    CHECK(circle_dist(CirclePoint(0, 1), CirclePoint(1, 2)) == q(1, 2));
    CHECK(circle_dist(CirclePoint(1, 8), CirclePoint(7, 8)) == q(1, 4));
}

TEST_CASE("arc validation") {
    CHECK_THROWS_AS(Arc(CirclePoint(0, 1), q(-1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(Arc(CirclePoint(0, 1), q(3, 2)), std::invalid_argument);
    CHECK_THROWS_AS(normalize({}), std::invalid_argument);
}

TEST_CASE("normalize examples") {
    CHECK(arcs({{0, q(1, 4)}, {q(1, 4), q(1, 4)}}) == arcs({{0, q(1, 2)}}));
    CHECK(arcs({{0, q(1, 4)}, {q(1, 4), q(1, 4)}}).size() == 1);
    CHECK(arcs({{0, q(3, 4)}, {q(1, 2), q(3, 4)}}).is_full());
    auto wrap = arcs({{q(7, 8), q(1, 4)}, {q(1, 8), q(1, 8)}});
    REQUIRE(wrap.size() == 1);
    CHECK(wrap.arcs()[0].start.value() == q(7, 8));
    CHECK(wrap.arcs()[0].length == q(3, 8));
    std::vector<Arc> raw{Arc(CirclePoint(7, 8), q(1, 4)), Arc(CirclePoint(1, 8), q(1, 8))};
    for (long i = 0; i < 4096; ++i) {
        CHECK(wrap.contains(CirclePoint(q(i, 4096))) == testing::raw_contains(raw, q(i, 4096)));
    }
}

TEST_CASE("union examples") {
    auto a = arcs({{0, q(1, 4)}, {q(1, 2), q(1, 8)}});
    CHECK(unite(a, a) == a);
    auto two = unite(ArcSet::point(CirclePoint(0, 1)), ArcSet::point(CirclePoint(1, 2)));
    CHECK(two.size() == 2);
    CHECK(two.measure() == 0);
    CHECK(unite(arcs({{0, q(1, 4)}}), arcs({{q(1, 8), q(3, 8)}})) == arcs({{0, q(1, 2)}}));
}

TEST_CASE("complement_gaps examples") {
    CHECK(complement_gaps(ArcSet::full()).empty());
    auto g = complement_gaps(ArcSet::point(CirclePoint(0, 1)));
    REQUIRE(g.size() == 1);
    CHECK(g[0].length == 1);
    auto g2 = complement_gaps(arcs({{0, q(1, 4)}, {q(1, 2), q(1, 4)}}));
    REQUIRE(g2.size() == 2);
    CHECK(g2[0].start.value() == q(1, 4));
    CHECK(g2[0].length == q(1, 4));
    CHECK(g2[1].start.value() == q(3, 4));
    CHECK(g2[1].length == q(1, 4));
}

TEST_CASE("is_subset examples") {
    auto a = arcs({{0, q(1, 4)}});
    CHECK(is_subset(a, a));
    CHECK(is_subset(ArcSet::point(CirclePoint(1, 8)), a));
    CHECK_FALSE(is_subset(a, arcs({{q(1, 8), q(3, 8)}})));
    CHECK(is_subset(arcs({{q(15, 16), q(1, 8)}}), arcs({{q(7, 8), q(1, 4)}})));
}

TEST_CASE("hausdorff and gap_radius examples") {
    auto a = arcs({{0, q(1, 4)}});
    CHECK(hausdorff(a, a) == 0);
    CHECK(hausdorff(ArcSet::point(CirclePoint(0, 1)), ArcSet::point(CirclePoint(1, 2))) == q(1, 2));
    CHECK(hausdorff(a, arcs({{0, q(1, 2)}})) == q(1, 4));
    CHECK(gap_radius(ArcSet::full()) == 0);
    CHECK(gap_radius(ArcSet::point(CirclePoint(0, 1))) == q(1, 2));
    CHECK(gap_radius(arcs({{0, q(1, 4)}, {q(1, 2), q(1, 4)}})) == q(1, 8));
}

TEST_CASE("coarsen and limit_denominator") {
    auto a = arcs({{0, q(1, 4)}, {q(5, 16), q(1, 4)}});
    auto c = coarsen(a, q(1, 8));
    CHECK(c.fired);
    CHECK(c.set == arcs({{0, q(9, 16)}}));
    CHECK_FALSE(coarsen(a, q(1, 16)).fired);
    auto l = limit_denominator(arcs({{q(1, 3), q(1, 7)}}), 4);
    CHECK(l == arcs({{q(1, 3), q(1, 6)}}));
}

TEST_CASE("property: metric axioms on random triples") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        auto x = testing::random_point(rng), y = testing::random_point(rng), z = testing::random_point(rng);
        CHECK(circle_dist(x, y) == circle_dist(y, x));
        CHECK(circle_dist(x, z) <= circle_dist(x, y) + circle_dist(y, z));
        auto a = testing::random_arcset(rng), b = testing::random_arcset(rng), c = testing::random_arcset(rng);
        CHECK(hausdorff(a, b) == hausdorff(b, a));
        CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c));
        CHECK(hausdorff(a, b) <= q(1, 2));
    }
}

TEST_CASE("property: canonical form and idempotence") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 300; ++i) {
        auto raw = testing::random_raw_arcs(rng, 64, 6);
        auto a = normalize(raw);
        CHECK(normalize(a.arcs()) == a);
        CHECK(a.measure() <= 1);
        CHECK((a.measure() == 1) == a.is_full());
        for (std::size_t k = 0; k + 1 < a.size(); ++k) {
            CHECK(a.arcs()[k].start < a.arcs()[k + 1].start);
            CHECK(a.arcs()[k].end_lift() < a.arcs()[k + 1].start.value());
        }
        for (const auto& g : complement_gaps(a)) CHECK(g.length > 0);
        if (!a.is_full()) CHECK(complement_gaps(a).size() == a.size());
        for (long g = 0; g < 256; ++g) {
            CHECK(a.contains(CirclePoint(q(g, 256))) == testing::raw_contains(raw, q(g, 256)));
        }
    }
}

TEST_CASE("property: hausdorff zero iff equal, gap radius is distance to the circle") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        auto a = testing::random_arcset(rng), b = testing::random_arcset(rng);
        CHECK((hausdorff(a, b) == 0) == (a == b));
        CHECK(gap_radius(a) == hausdorff(a, ArcSet::full()));
        CHECK(is_subset(a, unite(a, b)));
        CHECK(is_subset(a, b) == (unite(a, b) == b));
    }
}

TEST_CASE("property: hausdorff agrees with the grid oracle") {
    std::mt19937_64 rng(4);
    GridOracle oracle(4096);
    for (int i = 0; i < 100; ++i) {
        auto ra = testing::random_raw_arcs(rng), rb = testing::random_raw_arcs(rng);
        Rational exact = hausdorff(normalize(ra), normalize(rb));
        Rational grid = oracle.hausdorff(ra, rb);
        CHECK(abs(exact - grid) <= q(1, 4096));
    }
}
