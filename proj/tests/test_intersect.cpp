#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hypervis/intersect.hpp"
#include "oracles.hpp"

using namespace hypervis;

namespace {

constexpr double pi = std::numbers::pi;

HPoint<2> polar(double t, double phi) {
    return HPoint<2>::from_coords({std::cosh(t), std::sinh(t) * std::cos(phi), std::sinh(t) * std::sin(phi)});
}

} // namespace

TEST(CircleIntersection, DisjointNestedConcentric) {
    const auto a = BallGrain<2>::make(HPoint<2>(), 0.5);
    EXPECT_TRUE(circle_intersection(a, BallGrain<2>::make(polar(2.0, 0.3), 0.5)).empty());
    EXPECT_TRUE(circle_intersection(a, BallGrain<2>::make(polar(0.1, 0.3), 0.2)).empty());
    EXPECT_TRUE(circle_intersection(a, BallGrain<2>::make(HPoint<2>(), 0.5)).empty());
    EXPECT_TRUE(circle_intersection(a, BallGrain<2>::make(HPoint<2>(), 0.9)).empty());
}

TEST(CircleIntersection, LawOfCosinesExample) {
    const HPoint<2> c1;
    const auto u = axis_direction<2>(1);
    const auto c2 = exp_map(c1, u, 1.0);
    const auto pts = circle_intersection(BallGrain<2>::make(c1, 0.6), BallGrain<2>::make(c2, 0.6));
    ASSERT_EQ(pts.size(), 2u);
    const double cos_a = std::cosh(0.6) * (std::cosh(1.0) - 1.0) / (std::sinh(0.6) * std::sinh(1.0));
    EXPECT_NEAR(cos_a, 0.860473940688794, 1e-14);
    for (const auto& x : pts) {
        EXPECT_NEAR(dist(c1, x), 0.6, 1e-12);
        EXPECT_NEAR(dist(c2, x), 0.6, 1e-12);
        EXPECT_NEAR(std::cos(angle(c1, u, direction_to(c1, x))), cos_a, 1e-12);
    }
    // Mirror images across the line of centers.
    EXPECT_NEAR(pts[0][2], -pts[1][2], 1e-14);
    EXPECT_NEAR(pts[0][1], pts[1][1], 1e-14);
}

TEST(CircleIntersection, DistancePropertyRandomPairs) {
    Stream rng(51, 0, StreamRole::Aux);
    int pairs = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto c1 = polar(3.0 * rng.uniform(), 2 * pi * rng.uniform());
        const auto c2 = polar(3.0 * rng.uniform(), 2 * pi * rng.uniform());
        const double r1 = 0.1 + 2.0 * rng.uniform(), r2 = 0.1 + 2.0 * rng.uniform();
        const double dd = oracle::hdist({c1.coords().begin(), c1.coords().end()}, {c2.coords().begin(), c2.coords().end()});
        const auto pts = circle_intersection(BallGrain<2>::make(c1, r1), BallGrain<2>::make(c2, r2));
        const bool crossing = dd < r1 + r2 && dd > std::abs(r1 - r2);
        if (std::min(std::abs(dd - r1 - r2), std::abs(dd - std::abs(r1 - r2))) < 1e-9) {
            continue;
        }
        ASSERT_EQ(pts.size(), crossing ? 2u : 0u) << i;
        pairs += crossing;
        for (const auto& x : pts) {
            EXPECT_NEAR(dist(c1, x), r1, 1e-9 * std::cosh(r1));
            EXPECT_NEAR(dist(c2, x), r2, 1e-9 * std::cosh(r2));
        }
    }
    EXPECT_GT(pairs, 300);
}

TEST(CircleIntersection, Tangency) {
    const HPoint<2> c1;
    const auto c2 = exp_map(c1, axis_direction<2>(2), 1.0);
    const auto pts = circle_intersection(BallGrain<2>::make(c1, 0.4), BallGrain<2>::make(c2, 0.6));
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_NEAR(dist(c1, pts[0]), 0.4, 1e-12);
    EXPECT_NEAR(dist(c2, pts[0]), 0.6, 1e-12);
}

TEST(CircleIntersection, Symmetric) {
    const auto a = BallGrain<2>::make(polar(0.7, 0.2), 0.8);
    const auto b = BallGrain<2>::make(polar(1.1, 1.9), 0.9);
    const auto ab = circle_intersection(a, b), ba = circle_intersection(b, a);
    ASSERT_EQ(ab.size(), 2u);
    ASSERT_EQ(ba.size(), 2u);
    for (const auto& x : ab) {
        const double m = std::min(dist(x, ba[0]), dist(x, ba[1]));
        EXPECT_LT(m, 1e-7);
    }
}

TEST(CircleIntersection, RotationInvariant) {
    const double phi = 0.9;
    const std::array<double, 4> rot{std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi)};
    const auto a = BallGrain<2>::make(polar(0.7, 0.2), 0.8);
    const auto b = BallGrain<2>::make(polar(1.1, 1.9), 0.9);
    auto rotate = [&](const HPoint<2>& x) { return HPoint<2>::lifted(rotate_about_base<2>(rot, x.coords())); };
    const auto p = circle_intersection(a, b);
    const auto q = circle_intersection(BallGrain<2>::make(rotate(a.center), 0.8), BallGrain<2>::make(rotate(b.center), 0.9));
    ASSERT_EQ(p.size(), q.size());
    for (const auto& x : p) {
        const auto rx = rotate(x);
        EXPECT_LT(std::min(dist(rx, q[0]), dist(rx, q[1])), 1e-7);
    }
}

TEST(CountInWindow, ThreeCirclesSixPoints) {
    std::vector<BallGrain<2>> g;
    for (int k = 0; k < 3; ++k) {
        g.push_back(BallGrain<2>::make(polar(0.5, 2 * pi * k / 3.0), 0.6));
    }
    const auto c = count_intersections_in_window(g, 5.0);
    EXPECT_EQ(c.count, 6u);
    EXPECT_EQ(c.near_tangencies, 0u);
    EXPECT_NEAR(c.window_area, 2 * pi * (std::cosh(5.0) - 1.0), 1e-9);

    // Points lie at two distinct radii; a window between them keeps only the inner three.
    std::vector<double> radii;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            for (const auto& x : circle_intersection(g[i], g[j])) {
                radii.push_back(dist(HPoint<2>(), x));
            }
        }
    }
    std::sort(radii.begin(), radii.end());
    ASSERT_LT(radii[2] + 1e-6, radii[3]);
    EXPECT_EQ(count_intersections_in_window(g, 0.5 * (radii[2] + radii[3])).count, 3u);
    EXPECT_EQ(count_intersections_in_window(g, radii[0] * 0.5).count, 0u);
    EXPECT_THROW(count_intersections_in_window(g, 0.0), DomainError);
}

TEST(IntersectionDensity, SmallRunMatches) {
    const auto law = GrainLaw::uniform(0.3, 0.7);
    const auto rec = estimate_intersection_density(1.0, law, 2.5, 600, 52, 2);
    ASSERT_TRUE(rec.z_score);
    EXPECT_NEAR(*rec.closed_form, intersection_density(2, 1.0, law), 1e-12);
    EXPECT_LT(std::abs(*rec.z_score), 4.0);
    EXPECT_THROW(estimate_intersection_density(1.0, law, 2.5, 1, 1), UsageError);
}
