#include <gtest/gtest.h>

#include <cmath>

#include "genvor/geometry.hpp"
#include "genvor/rational.hpp"
#include "genvor/rng.hpp"

using namespace genvor;

namespace {

WeightedSite ws(int id, Rational x, Rational y, Rational w = 1) { return {id, {std::move(x), std::move(y)}, std::move(w)}; }

Point2 pt(double x, double y) { return {exact_rational(x), exact_rational(y)}; }

} // namespace

TEST(Rational, ParseAndFormatRoundTrip) {
    EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
    EXPECT_EQ(parse_rational("-3"), Rational(-3));
    EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
    EXPECT_EQ(parse_rational("2/6"), Rational(1, 3));
    EXPECT_EQ(format_rational(Rational(1, 4)), "0.25");
    EXPECT_EQ(format_rational(Rational(-7, 2)), "-3.5");
    EXPECT_EQ(format_rational(Rational(1, 3)), "1/3");
    for (const char* s : {"0.120256862282", "1048576", "-0.5", "17/9"})
        EXPECT_EQ(parse_rational(format_rational(parse_rational(s))), parse_rational(s));
}

TEST(Rational, RejectsGarbage) {
    EXPECT_THROW(parse_rational("abc"), Error);
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational(""), Error);
}

TEST(Rational, ExactFromDouble) {
    EXPECT_EQ(exact_rational(0.5), Rational(1, 2));
    EXPECT_EQ(to_double(exact_rational(0.1)), 0.1);
}

TEST(Rng, CounterBasedAndReproducible) {
    CounterRng a(42, 7), b(42, 7), c(42, 8);
    for (int i = 0; i < 100; ++i) {
        auto va = a.next();
        EXPECT_EQ(va, b.next());
        EXPECT_EQ(va, a.at(i));
    }
    EXPECT_NE(CounterRng(42, 7).at(0), c.at(0));
    for (int i = 0; i < 1000; ++i) {
        double u = a.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        EXPECT_LT(a.below(7), 7u);
    }
}

TEST(Bisector, EqualWeightsGiveLines) {
    auto b1 = bisector(ws(0, 0, 0), ws(1, 2, 0));
    EXPECT_EQ(b1.kind, BisectorCurve::Kind::Line);
    EXPECT_EQ(b1.a, 1);
    EXPECT_EQ(b1.b, 0);
    EXPECT_EQ(b1.c, 1);  // x = 1

    auto b2 = bisector(ws(0, 0, 0), ws(1, 0, 4));
    EXPECT_EQ(b2.kind, BisectorCurve::Kind::Line);
    EXPECT_EQ(b2.a, 0);
    EXPECT_EQ(b2.b, 1);
    EXPECT_EQ(b2.c, 2);  // y = 2
}

TEST(Bisector, ApolloniusCircle) {
    auto si = ws(0, 0, 0, 1), sj = ws(1, 3, 0, 2);
    auto b = bisector(si, sj);
    ASSERT_EQ(b.kind, BisectorCurve::Kind::Circle);
    EXPECT_EQ(b.center, (Point2{4, 0}));
    EXPECT_EQ(b.radius2, 4);
    for (int i = 0; i < 8; ++i) {
        double t = i * kTwoPi / 8;
        Vec2 x{4 + 2 * std::cos(t), 2 * std::sin(t)};
        EXPECT_NEAR(1 * norm(x), 2 * norm(x - Vec2{3, 0}), 1e-12);
    }
}

TEST(Bisector, NearlyEqualWeightsStayCircles) {
    auto b = bisector(ws(0, 0, 0, 1), ws(1, 1, 0, Rational(1000001, 1000000)));
    EXPECT_EQ(b.kind, BisectorCurve::Kind::Circle);
    EXPECT_GT(to_double(b.radius2), 1e10);
}

TEST(Bisector, CoincidentSitesThrow) {
    try {
        bisector(ws(0, 1, 1), ws(1, 1, 1, 3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CoincidentSites);
    }
}

TEST(Bisector, SymmetricAndSatisfiesDefinitionOnRandomPairs) {
    CounterRng rng(11, 0);
    for (int trial = 0; trial < 100; ++trial) {
        auto si = WeightedSite{0, pt(rng.uniform(), rng.uniform()), exact_rational(1 + 3 * rng.uniform())};
        auto sj = WeightedSite{1, pt(rng.uniform(), rng.uniform()), exact_rational(1 + 3 * rng.uniform())};
        auto b = bisector(si, sj);
        EXPECT_EQ(b, bisector(sj, si));
        Curve c = b.approx();
        for (int k = 0; k < 8; ++k) {
            Vec2 x = c.is_circle ? c.at(k * kTwoPi / 8) : c.at(k - 4.0);
            double fi = to_double(si.weight) * norm(x - si.pos.approx());
            double fj = to_double(sj.weight) * norm(x - sj.pos.approx());
            EXPECT_NEAR(fi, fj, 1e-9 * std::max(1.0, fi));
        }
    }
}

TEST(Intersect, LineLine) {
    BisectorCurve x1{BisectorCurve::Kind::Line, 1, 0, 1, {}, 0};
    BisectorCurve y2{BisectorCurve::Kind::Line, 0, 1, 2, {}, 0};
    auto r = intersect(x1, y2);
    ASSERT_EQ(r.points.size(), 1u);
    ASSERT_TRUE(r.points[0].exact);
    EXPECT_EQ(*r.points[0].exact, (Point2{1, 2}));
    EXPECT_FALSE(r.overlap);
}

TEST(Intersect, DisjointCircleAndLine) {
    BisectorCurve c{BisectorCurve::Kind::Circle, 0, 0, 0, {0, 0}, 1};
    BisectorCurve x2{BisectorCurve::Kind::Line, 1, 0, 2, {}, 0};
    EXPECT_TRUE(intersect(c, x2).points.empty());
}

TEST(Intersect, TwoUnitCircles) {
    BisectorCurve c1{BisectorCurve::Kind::Circle, 0, 0, 0, {0, 0}, 1};
    BisectorCurve c2{BisectorCurve::Kind::Circle, 0, 0, 0, {1, 0}, 1};
    auto r = intersect(c1, c2);
    ASSERT_EQ(r.points.size(), 2u);
    EXPECT_NEAR(r.points[0].value.x, 0.5, 1e-12);
    EXPECT_NEAR(r.points[0].value.y, -std::sqrt(3.0) / 2, 1e-12);
    EXPECT_NEAR(r.points[1].value.y, std::sqrt(3.0) / 2, 1e-12);
    for (const auto& p : r.points) {
        EXPECT_LE(std::abs(c1.residual(p.value)), 1e-12);
        EXPECT_LE(std::abs(c2.residual(p.value)), 1e-12);
        EXPECT_LE(p.width, 1e-12);
    }
}

TEST(Intersect, IdenticalCurvesOverlap) {
    auto b = bisector(ws(0, 0, 0, 1), ws(1, 3, 0, 2));
    auto r = intersect(b, b);
    EXPECT_TRUE(r.overlap);
    EXPECT_TRUE(r.points.empty());
}

TEST(Intersect, RandomBisectorsAgreeWithSignChangeScan) {
    CounterRng rng(5, 1);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        WeightedSite s[3];
        for (int i = 0; i < 3; ++i) s[i] = {i, pt(rng.uniform(), rng.uniform()), exact_rational(1 + rng.uniform())};
        auto b1 = bisector(s[0], s[1]);
        auto b2 = bisector(s[0], s[2]);
        auto r = intersect(b1, b2);
        for (const auto& p : r.points) {
            EXPECT_LE(std::abs(b1.residual(p.value)), 1e-9);
            EXPECT_LE(std::abs(b2.residual(p.value)), 1e-9);
        }
        // Walk along b1 and count sign changes of b2's residual.
        Curve c = b1.approx();
        if (!c.is_circle) continue;
        int changes = 0;
        const int steps = 20000;
        double prev = b2.residual(c.at(0));
        for (int k = 1; k <= steps; ++k) {
            double cur = b2.residual(c.at(k * kTwoPi / steps));
            if ((cur < 0) != (prev < 0)) ++changes;
            prev = cur;
        }
        EXPECT_EQ(changes, static_cast<int>(r.points.size()));
        ++checked;
    }
    EXPECT_GT(checked, 10);
}

TEST(WeightedDistance, Examples) {
    EXPECT_DOUBLE_EQ(weighted_distance(pt(0.6, 0), ws(0, 0, 0, 1)), 0.6);
    EXPECT_DOUBLE_EQ(weighted_distance(pt(0.6, 0), ws(0, 1, 0, 10)), 4.0);
    EXPECT_DOUBLE_EQ(weighted_distance(pt(0.3, 0.7), ws(0, exact_rational(0.3), exact_rational(0.7), 5)), 0.0);
}

TEST(Visible, ClosedUpperHalfPlane) {
    auto s = ws(0, 0, 0);
    VisibilityConstraint upper{0, Side::Left};
    EXPECT_TRUE(visible(pt(5, 0.1), s, upper));
    EXPECT_FALSE(visible(pt(5, -0.1), s, upper));
    EXPECT_TRUE(visible(pt(5, 0), s, upper));
    VisibilityConstraint lower{0, Side::Right};
    EXPECT_FALSE(visible(pt(5, 0.1), s, lower));
    EXPECT_TRUE(visible(pt(5, 0), s, lower));
}

TEST(Curve, ParametersRoundTrip) {
    Curve c = Curve::circle({1, 2}, 3);
    for (double t : {0.1, 1.0, 3.0, 6.0}) EXPECT_NEAR(c.param_of(c.at(t)), t, 1e-12);
    Curve l = Curve::line({0, 0}, {3, 4});
    EXPECT_NEAR(l.param_of(l.at(2.5)), 2.5, 1e-12);
    // Left of increasing parameter is the circle's inside.
    EXPECT_GT(c.side_distance({1, 2}), 0);
}
