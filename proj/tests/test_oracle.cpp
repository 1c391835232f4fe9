#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "genvor/oracle.hpp"
#include "genvor/rng.hpp"

using namespace genvor;

namespace {

SiteSet random_sites(int n, std::uint64_t seed, bool weighted = false) {
    CounterRng rng(seed, 3);
    std::vector<Vec2> pts;
    std::vector<double> w;
    for (int i = 0; i < n; ++i) {
        pts.push_back({rng.uniform(), rng.uniform()});
        if (weighted) w.push_back(1 + 3 * rng.uniform());
    }
    return SiteSet::from_doubles(pts, w);
}

// Plain linear scans written independently of the library.
int scan_nearest(Vec2 x, const SiteSet& s, bool weighted) {
    int best = 0;
    double bd = 1e300;
    for (int i = 0; i < s.size(); ++i) {
        double dx = x.x - s.pos(i).x, dy = x.y - s.pos(i).y;
        double d = std::sqrt(dx * dx + dy * dy) * (weighted ? s.weight(i) : 1.0);
        if (d < bd) {
            bd = d;
            best = i;
        }
    }
    return best;
}

} // namespace

TEST(NearestSite, LowestIdWinsTies) {
    std::vector<Vec2> pts(8, Vec2{5, 5});
    for (int i = 0; i < 8; ++i) pts[i] = {10.0 + i, 10.0 + i};
    pts[2] = {0, 0};
    pts[7] = {2, 0};
    auto s = SiteSet::from_doubles(pts);
    EXPECT_EQ(oracle::nearest_site(Vec2{1, 0}, s), 2);
    EXPECT_EQ(oracle::nearest_site(Vec2{1.5, 0}, s), 7);
}

TEST(NearestSite, MatchesLinearScan) {
    auto s = random_sites(40, 1);
    CounterRng rng(2, 0);
    for (int i = 0; i < 1000; ++i) {
        Vec2 x{rng.uniform(), rng.uniform()};
        EXPECT_EQ(oracle::nearest_site(x, s), scan_nearest(x, s, false));
    }
}

TEST(NearestVisible, NoneWhenNothingVisible) {
    auto s = SiteSet::from_doubles({{0, 0}, {1, 0}}).with_constraints({{0, Side::Left}, {0, Side::Left}});
    EXPECT_FALSE(oracle::nearest_visible_site(Vec2{0.5, -1}, s).has_value());
}

TEST(NearestVisible, SoleVisibleSiteWinsRegardlessOfDistance) {
    auto s = SiteSet::from_doubles({{0, 0}, {10, 0}}).with_constraints({{0, Side::Right}, {0, Side::Left}});
    EXPECT_EQ(oracle::nearest_visible_site(Vec2{0.1, 1}, s), 1);
}

TEST(NearestVisible, HandTableOverAllSideCombos) {
    // s0 sees y >= 0 (Left) or y <= 0; s1 sees x <= 2 (Left) or x >= 2;
    // s2 sees y >= 2 (Left) or y <= 2.
    const Rational vertical = exact_rational(std::numbers::pi / 2);
    const std::vector<Vec2> probes{{0.4, 0.5}, {3, 0.5}, {0.5, 3}, {-1, -0.5}, {1.5, 1.9}};
    // winners[probe][combo], combo bit i set means site i uses Side::Left.
    const int winners[5][8] = {
        {2, 0, 2, 0, -1, 0, 1, 0},
        {1, 1, 2, 0, 1, 1, -1, 0},
        {-1, 0, 1, 0, 2, 2, 2, 2},
        {0, 2, 0, 2, 0, -1, 0, 1},
        {2, 2, 2, 2, -1, 0, 1, 1},
    };
    auto base = SiteSet::from_doubles({{0, 0}, {2, 0}, {0, 2}});
    for (int combo = 0; combo < 8; ++combo) {
        auto side = [&](int i) { return (combo >> i) & 1 ? Side::Left : Side::Right; };
        auto s = base.with_constraints({{0, side(0)}, {vertical, side(1)}, {0, side(2)}});
        for (int p = 0; p < 5; ++p) {
            auto got = oracle::nearest_visible_site(probes[p], s);
            SCOPED_TRACE("combo " + std::to_string(combo) + " probe " + std::to_string(p));
            if (winners[p][combo] < 0)
                EXPECT_FALSE(got.has_value());
            else
                EXPECT_EQ(got, winners[p][combo]);
        }
    }
}

TEST(NearestVisible, FullVisibilityReducesToNearest) {
    auto s = random_sites(20, 4);
    CounterRng rng(9, 0);
    for (int i = 0; i < 300; ++i) {
        Vec2 x{rng.uniform(), rng.uniform()};
        EXPECT_EQ(oracle::nearest_visible_site(x, s.without_constraints()), oracle::nearest_site(x, s));
    }
}

TEST(NearestWeighted, Examples) {
    auto s = SiteSet::from_doubles({{0, 0}, {1, 0}}, {1, 10});
    EXPECT_EQ(oracle::nearest_weighted_site(Vec2{0.6, 0}, s), 0);
    EXPECT_EQ(oracle::nearest_weighted_site(Vec2{0.95, 0}, s), 1);
}

TEST(NearestWeighted, UnitWeightsMatchNearestSite) {
    auto s = random_sites(30, 5);
    CounterRng rng(6, 0);
    for (int i = 0; i < 1000; ++i) {
        Vec2 x{rng.uniform(), rng.uniform()};
        EXPECT_EQ(oracle::nearest_weighted_site(x, s), oracle::nearest_site(x, s));
    }
}

TEST(NearestWeighted, MatchesLinearScan) {
    auto s = random_sites(30, 7, true);
    CounterRng rng(8, 0);
    for (int i = 0; i < 1000; ++i) {
        Vec2 x{rng.uniform(), rng.uniform()};
        EXPECT_EQ(oracle::nearest_weighted_site(x, s), scan_nearest(x, s, true));
    }
}

TEST(KNearest, SmallCases) {
    auto s = SiteSet::from_doubles({{0, 0}, {1, 0}});
    EXPECT_EQ(oracle::k_nearest_sequence(Vec2{0.9, 0}, s, 2), (std::vector<int>{1, 0}));
    auto r = random_sites(10, 10);
    CounterRng rng(1, 0);
    for (int i = 0; i < 50; ++i) {
        Vec2 x{rng.uniform(), rng.uniform()};
        EXPECT_EQ(oracle::k_nearest_sequence(x, r, 1), std::vector<int>{oracle::nearest_site(x, r)});
    }
}

TEST(KNearest, MatchesFullSort) {
    auto s = random_sites(6, 12);
    CounterRng rng(13, 0);
    for (int i = 0; i < 100; ++i) {
        Vec2 x{rng.uniform(), rng.uniform()};
        std::vector<int> ids(6);
        std::iota(ids.begin(), ids.end(), 0);
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            double da = norm2(x - s.pos(a)), db = norm2(x - s.pos(b));
            return da != db ? da < db : a < b;
        });
        ids.resize(3);
        EXPECT_EQ(oracle::k_nearest_sequence(x, s, 3), ids);
    }
}

TEST(KNearest, RejectsBadK) {
    auto s = random_sites(3, 1);
    for (int k : {0, 4}) {
        try {
            oracle::k_nearest_sequence(Vec2{0, 0}, s, k);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::KOutOfRange);
        }
    }
}
