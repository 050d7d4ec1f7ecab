#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "swl/geometry.hpp"
#include "swl/rng.hpp"

using namespace swl;

TEST_CASE("distance basics") {
    CHECK(dist({0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK(dist({1, 1}, {1, 1}) == 0.0);
    CHECK(dist({0, 0}, {0.6, 0.5}) == doctest::Approx(std::sqrt(0.61)));
    CHECK(squared_dist({0, 0}, {3, 4}) == doctest::Approx(25.0));
    CHECK(squared_dist({0, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(squared_dist({0, 0}, {0.6, 0.5}) == doctest::Approx(0.61));
}

TEST_CASE("distance symmetry and square consistency on random points") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        Point2 p{rng.uniform(-1e4, 1e4), rng.uniform(-1e4, 1e4)};
        Point2 q{rng.uniform(-1e4, 1e4), rng.uniform(-1e4, 1e4)};
        CHECK(dist(p, q) == dist(q, p));
        const double d = dist(p, q);
        CHECK(d * d == doctest::Approx(squared_dist(p, q)).epsilon(1e-12));
        CHECK(d >= 0.0);
    }
}

TEST_CASE("midpoint") {
    CHECK(midpoint({0, 0}, {2, 2}) == Point2{1, 1});
    CHECK(midpoint({3.5, -1}, {3.5, -1}) == Point2{3.5, -1});
    CHECK(midpoint({1, 0}, {0, 1}) == Point2{0.5, 0.5});

    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        Point2 p{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        Point2 q{rng.uniform(-100, 100), rng.uniform(-100, 100)};
        const Point2 m = midpoint(p, q);
        CHECK(std::abs(dist(m, p) - dist(m, q)) < 1e-9);
    }
}

TEST_CASE("normalized") {
    const Point2 u = normalized({3, 4});
    CHECK(u.x == doctest::Approx(0.6));
    CHECK(u.y == doctest::Approx(0.8));
    CHECK(norm(u) == doctest::Approx(1.0));
    CHECK_THROWS_AS(normalized({0, 0}), std::invalid_argument);
}

TEST_CASE("segment construction rejects degenerate input") {
    CHECK_THROWS_AS(Segment2({1, 2}, {1, 2}), std::invalid_argument);
    CHECK_NOTHROW(Segment2({1, 2}, {1, 2.0000001}));
}

TEST_CASE("proper intersection: fixed cases") {
    CHECK(segments_properly_intersect({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}));
    CHECK_FALSE(segments_properly_intersect({{0, 0}, {1, 0}}, {{2, 0}, {3, 0}}));
    // shared endpoint only
    CHECK_FALSE(segments_properly_intersect({{0, 0}, {1, 1}}, {{1, 1}, {2, 0}}));
    // T-junction: endpoint of one on the interior of the other is not a
    // proper (interior-interior) crossing
    CHECK_FALSE(segments_properly_intersect({{0, 0}, {2, 0}}, {{1, 0}, {1, 1}}));
    // collinear overlap is excluded by the strict orientation test
    CHECK_FALSE(segments_properly_intersect({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}}));
    // parallel, disjoint
    CHECK_FALSE(segments_properly_intersect({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}));
}

namespace {

// Independent predicate: parameterize both segments and solve the 2x2 system;
// a proper crossing needs both parameters strictly inside (0, 1).
bool crosses_parametric(Point2 a, Point2 b, Point2 c, Point2 d) {
    const double rx = b.x - a.x, ry = b.y - a.y;
    const double sx = d.x - c.x, sy = d.y - c.y;
    const double denom = rx * sy - ry * sx;
    if (denom == 0.0) return false;  // parallel or collinear
    const double t = ((c.x - a.x) * sy - (c.y - a.y) * sx) / denom;
    const double u = ((c.x - a.x) * ry - (c.y - a.y) * rx) / denom;
    return t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0;
}

}  // namespace

TEST_CASE("proper intersection agrees with the parametric oracle") {
    Rng rng(42);
    long crossings = 0;
    for (int i = 0; i < 100000; ++i) {
        Point2 a{rng.uniform(0, 10), rng.uniform(0, 10)};
        Point2 b{rng.uniform(0, 10), rng.uniform(0, 10)};
        Point2 c{rng.uniform(0, 10), rng.uniform(0, 10)};
        Point2 d{rng.uniform(0, 10), rng.uniform(0, 10)};
        if (a == b || c == d) continue;
        const bool got = segments_properly_intersect({a, b}, {c, d});
        REQUIRE(got == crosses_parametric(a, b, c, d));
        crossings += got;
    }
    // sanity: the sample exercises both outcomes
    CHECK(crossings > 1000);
    CHECK(crossings < 99000);
}

TEST_CASE("monotone_along is strict") {
    const Point2 dir{1, 0};
    CHECK(monotone_along({{0, 0}, {1, 0}}, dir));
    CHECK_FALSE(monotone_along({{0, 0}, {-1, 0.2}}, dir));
    CHECK_FALSE(monotone_along({{0, 0}, {0, 1}}, dir));  // zero projection
    CHECK(monotone_along({{0, 0}, {0.001, -5}}, dir));
}

TEST_CASE("orientation sign convention") {
    CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);   // left turn
    CHECK(orientation({0, 0}, {1, 0}, {0, -1}) == -1); // right turn
    CHECK(orientation({0, 0}, {1, 0}, {2, 0}) == 0);   // collinear
}
