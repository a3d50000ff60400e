#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hypervis/closedform.hpp"
#include "oracles.hpp"

using namespace hypervis;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(Constants, KappaOmega) {
    EXPECT_NEAR(kappa(2), pi, 1e-15);
    EXPECT_NEAR(kappa(3), 4.0 * pi / 3.0, 1e-14);
    EXPECT_NEAR(omega(2), 2.0 * pi, 1e-14);
    EXPECT_NEAR(omega(3), 4.0 * pi, 1e-14);
    for (int d = 0; d <= 12; ++d) {
        EXPECT_NEAR(kappa(d), oracle::kappa(d), 1e-13 * oracle::kappa(d)) << d;
    }
    EXPECT_THROW(Constants::of(1), DomainError);
    EXPECT_EQ(Constants::of(4).d, 4);
}

TEST(Ell, MatchesSimpson) {
    for (int d = 2; d <= 5; ++d) {
        for (int j = 0; j < d; ++j) {
            for (const double r : {0.1, 0.7, 1.0, 2.5}) {
                const double o = oracle::ell(d, j, r);
                EXPECT_NEAR(ell(d, j, r), o, 1e-10 * o) << d << " " << j << " " << r;
            }
        }
    }
}

TEST(Ell, Examples) {
    EXPECT_NEAR(ell(2, 0, 1.0), 2.0 * pi * (std::cosh(1.0) - 1.0), 1e-12);
    EXPECT_NEAR(ell(2, 0, 1.0), 3.4122762652849, 1e-12);
    EXPECT_NEAR(ell(3, 0, 1.0), 2.0 * pi * (std::sinh(1.0) * std::cosh(1.0) - 1.0), 1e-12);
    EXPECT_NEAR(ell(3, 0, 1.0), 5.1109327057083, 1e-12);
    EXPECT_NEAR(ell(2, 1, 1.0), 2.0 * std::sinh(1.0), 1e-13);
    EXPECT_EQ(ell(3, 1, 0.0), 0.0);
    EXPECT_THROW(ell(2, 2, 1.0), DomainError);
    EXPECT_THROW(ell(2, -1, 1.0), DomainError);
    EXPECT_THROW(ell(2, 0, -1.0), DomainError);
}

TEST(Ell, PrimeIsDerivative) {
    for (int d = 2; d <= 4; ++d) {
        for (int j = 0; j < d; ++j) {
            const double h = 1e-5, r = 1.3;
            const double fd = (ell(d, j, r + h) - ell(d, j, r - h)) / (2 * h);
            EXPECT_NEAR(ell_prime(d, j, r), fd, 1e-7 * std::abs(fd));
        }
    }
}

TEST(Ball, VolumeAndSurface) {
    EXPECT_NEAR(ball_volume(2, 1.0), 3.4122762652849, 1e-12);
    EXPECT_NEAR(ball_volume(3, 1.0), 5.1109327057083, 1e-12);
    EXPECT_NEAR(ball_surface(3, 1.0), 4.0 * pi * std::sinh(1.0) * std::sinh(1.0), 1e-12);
    EXPECT_NEAR(ball_surface(3, 1.0), 17.3553873817714, 1e-10);
    for (int d = 2; d <= 5; ++d) {
        const double o = oracle::ball_volume(d, 1.7);
        EXPECT_NEAR(ball_volume(d, 1.7), o, 1e-10 * o);
        const double h = 1e-5;
        const double fd = (ball_volume(d, 1.7 + h) - ball_volume(d, 1.7 - h)) / (2 * h);
        EXPECT_NEAR(ball_surface(d, 1.7), fd, 1e-7 * fd);
    }
}

TEST(GrainLaw, Validation) {
    EXPECT_THROW(GrainLaw::fixed(0.0), DomainError);
    EXPECT_THROW(GrainLaw::fixed(-1.0), DomainError);
    EXPECT_THROW(GrainLaw::uniform(1.0, 1.0), DomainError);
    EXPECT_THROW(GrainLaw::uniform(-0.1, 1.0), DomainError);
    EXPECT_THROW(GrainLaw::fixed(std::nan("")), DomainError);
    EXPECT_EQ(GrainLaw::uniform(0.2, 0.8).max_radius(), 0.8);
    EXPECT_EQ(GrainLaw::fixed(0.5).kind_name(), "fixed");
    EXPECT_EQ(GrainLaw::uniform(0.25, 1).params_string(), "0.25,1");
}

TEST(GrainMoments, FixedAndUniform) {
    const auto m = grain_moments(2, GrainLaw::fixed(0.5));
    EXPECT_NEAR(m.v_dm1, 2.0 * pi * std::sinh(0.5), 1e-13);
    EXPECT_NEAR(m.v_dm1_star, 2.0 * std::sinh(0.5), 1e-13);
    EXPECT_NEAR(m.mean_volume, 2.0 * pi * (std::cosh(0.5) - 1.0), 1e-13);

    const auto u = grain_moments(2, GrainLaw::uniform(0.0, 1.0));
    EXPECT_NEAR(u.v_dm1, 2.0 * pi * (std::cosh(1.0) - 1.0), 1e-11);
    EXPECT_NEAR(u.v_dm1_star, u.v_dm1 / pi, 1e-11);

    const auto u3 = grain_moments(3, GrainLaw::uniform(0.5, 1.5));
    const double o = oracle::simpson([](double r) { return 4.0 * pi * std::sinh(r) * std::sinh(r); }, 0.5, 1.5);
    EXPECT_NEAR(u3.v_dm1, o, 1e-10 * o);
    EXPECT_NEAR(u3.v_dm1_star, u3.v_dm1 / 4.0, 1e-10 * o);
}

TEST(SinhExp, GammaFormMatchesQuadrature) {
    for (int d = 2; d <= 5; ++d) {
        for (const double excess : {0.3, 1.0, 2.5, 7.0}) {
            const double a = d - 1 + excess;
            const double o = oracle::sinh_exp(d, a, 40.0 / excess + 5.0);
            const double v = sinh_exp_integral(d, a).value();
            EXPECT_NEAR(v, o, 1e-9 * o) << d << " " << a;
            EXPECT_NEAR(sinh_exp_integral_quadrature(d, a), v, 1e-11 * v);
        }
    }
}

TEST(SinhExp, Threshold) {
    EXPECT_FALSE(sinh_exp_integral(2, 1.0).is_finite());
    EXPECT_FALSE(sinh_exp_integral(3, 1.5).is_finite());
    EXPECT_TRUE(sinh_exp_integral(3, 2.0 + 1e-9).is_finite());
    EXPECT_EQ(sinh_exp_integral(2, 0.5).value_or_inf(), std::numeric_limits<double>::infinity());
    EXPECT_THROW(sinh_exp_integral(2, 0.5).value(), DomainError);
    EXPECT_THROW(sinh_exp_integral_quadrature(2, 1.0), DomainError);
    EXPECT_NEAR(sinh_exp_integral(2, 3.0).value(), 1.0 / 8.0, 1e-15);
}

TEST(MeanVisibleVolume, TableLowDimensions) {
    const auto law = GrainLaw::fixed(0.5);
    const double v1 = 2.0 * pi * std::sinh(0.5);
    const double mv = mean_visible_volume(2, 1.5, law).value();
    EXPECT_NEAR(mv, oracle::table_d2(1.5, v1), 1e-12);
    EXPECT_NEAR(mv, 4.35164965852552, 1e-11);

    for (const double gamma : {1.0, 2.0, 5.0}) {
        const double v2 = 4.0 * pi * std::sinh(1.0) * std::sinh(1.0);
        const double m3 = mean_visible_volume(3, gamma, GrainLaw::fixed(1.0)).value();
        EXPECT_NEAR(m3, oracle::table_d3(gamma, v2), 1e-11 * m3) << gamma;
    }
    for (const double gamma : {2.0, 3.0}) {
        const double m2 = mean_visible_volume(2, gamma, GrainLaw::uniform(0.2, 0.9)).value();
        const double v = grain_moments(2, GrainLaw::uniform(0.2, 0.9)).v_dm1;
        EXPECT_NEAR(m2, oracle::table_d2(gamma, v), 1e-11 * m2);
    }
}

TEST(MeanVisibleVolume, InfiniteAtAndBelowThreshold) {
    const double bc = visibility_threshold(2, 0.5);
    EXPECT_FALSE(mean_visible_volume(2, bc, GrainLaw::fixed(0.5)).is_finite());
    EXPECT_FALSE(mean_visible_volume(2, 0.5 * bc, GrainLaw::fixed(0.5)).is_finite());
    EXPECT_TRUE(mean_visible_volume(2, bc * (1 + 1e-9), GrainLaw::fixed(0.5)).is_finite());
    EXPECT_THROW(mean_visible_volume(2, 0.0, GrainLaw::fixed(0.5)), DomainError);
}

TEST(Threshold, Examples) {
    EXPECT_NEAR(visibility_threshold(3, 1.0), 2.0 / (pi * std::sinh(1.0) * std::sinh(1.0)), 1e-15);
    EXPECT_NEAR(visibility_threshold(3, 1.0), 0.460951969784465, 1e-13);
    EXPECT_NEAR(visibility_threshold(2, 0.5), 1.0 / (2.0 * std::sinh(0.5)), 1e-15);
    EXPECT_THROW(visibility_threshold(2, 0.0), DomainError);
    for (int d = 2; d <= 5; ++d) {
        const double bc = visibility_threshold(d, 0.8);
        EXPECT_TRUE(at_threshold(visibility_rate(d, bc, GrainLaw::fixed(0.8)), d)) << d;
    }
}

TEST(Truncated, AntiderivativeExample) {
    const double expect = 2.0 * pi * (1.0 / 3.0 - std::exp(-1.0) / 2.0 + std::exp(-3.0) / 6.0);
    EXPECT_NEAR(truncated_volume_at_rate(2, 2.0, 1.0), expect, 1e-13);
    EXPECT_NEAR(expect, 0.990804648678358, 1e-13);
    EXPECT_EQ(truncated_volume_at_rate(2, 2.0, 0.0), 0.0);
    EXPECT_THROW(truncated_volume_at_rate(2, 2.0, -1.0), DomainError);
}

TEST(Truncated, MatchesQuadratureAndIsMonotone) {
    const auto law = GrainLaw::fixed(0.5);
    for (int d = 2; d <= 4; ++d) {
        const double a = visibility_rate(d, 1.3, law);
        double prev = 0.0;
        for (const double r : {0.5, 1.0, 3.0, 6.0}) {
            const double v = truncated_visible_volume(d, 1.3, law, r);
            const double o = omega(d) * oracle::sinh_exp(d, a, r);
            EXPECT_NEAR(v, o, 1e-9 * o);
            EXPECT_GT(v, prev);
            prev = v;
        }
    }
    const double full = mean_visible_volume(2, 1.5, law).value();
    EXPECT_NEAR(truncated_visible_volume(2, 1.5, law, 80.0), full, 1e-9 * full);
    EXPECT_LT(truncated_visible_volume(2, 1.5, law, 12.0), full);
}

TEST(Asymptote, Regimes) {
    const auto sub = asymptote_at_rate(2, 0.5, 10.0);
    EXPECT_EQ(sub.regime, Regime::Subcritical);
    EXPECT_NEAR(sub.comparator, 2.0 * pi * std::exp(5.0), 1e-9);
    EXPECT_NEAR(sub.comparator, 932.507380665416, 1e-9);
    const auto crit = asymptote_at_rate(3, 2.0, 10.0);
    EXPECT_EQ(crit.regime, Regime::Critical);
    EXPECT_NEAR(crit.comparator, pi * 10.0, 1e-12);
    const auto sup = asymptote_at_rate(2, 2.0, 10.0);
    EXPECT_EQ(sup.regime, Regime::Supercritical);
    EXPECT_NEAR(sup.comparator, pi * std::exp(-10.0), 1e-18);
    EXPECT_STREQ(regime_name(Regime::Critical), "critical");
}

TEST(Asymptote, RatiosTendToOne) {
    // Subcritical and critical: V(R) / comparator -> 1.
    const double rs = truncated_volume_at_rate(2, 0.5, 40.0) / asymptote_at_rate(2, 0.5, 40.0).comparator;
    EXPECT_NEAR(rs, 1.0, 1e-3);
    const double rc = truncated_volume_at_rate(2, 1.0, 400.0) / asymptote_at_rate(2, 1.0, 400.0).comparator;
    EXPECT_NEAR(rc, 1.0, 1e-2);
    // Supercritical: tail / comparator -> 1.
    const double full = omega(2) * sinh_exp_integral(2, 1.5).value();
    const double tail = full - truncated_volume_at_rate(2, 1.5, 30.0);
    EXPECT_NEAR(tail / asymptote_at_rate(2, 1.5, 30.0).comparator, 1.0, 1e-3);
}

TEST(CriticalScaling, MatchesLeadingTerm) {
    EXPECT_NEAR(critical_scaling(2, 0.01), pi / 0.01, 1e-9);
    EXPECT_THROW(critical_scaling(2, 0.0), DomainError);
    for (int d = 2; d <= 4; ++d) {
        const double delta = 1e-4;
        const double exact = omega(d) * sinh_exp_integral(d, d - 1 + delta).value();
        EXPECT_NEAR(delta * exact / (delta * critical_scaling(d, delta)), 1.0, 1e-2) << d;
    }
}

TEST(IntersectionDensity, Example) {
    EXPECT_NEAR(intersection_density(2, 1.0, GrainLaw::fixed(0.5)), 4.0 * pi * std::sinh(0.5) * std::sinh(0.5), 1e-13);
    EXPECT_NEAR(intersection_density(2, 1.0, GrainLaw::fixed(0.5)), 3.4122762652849, 1e-12);
    EXPECT_EQ(intersection_density(3, 0.0, GrainLaw::fixed(0.5)), 0.0);
    EXPECT_THROW(intersection_density(2, -1.0, GrainLaw::fixed(0.5)), DomainError);
}

TEST(ZeroCell, Examples) {
    EXPECT_NEAR(hyperplane_rate(2, 1.0), 2.0 / pi, 1e-15);
    EXPECT_NEAR(hyperplane_rate(3, 1.0), 0.5, 1e-15);
    const double z = zero_cell_mean_volume(2, 10.0).value();
    EXPECT_NEAR(z, 2.0 * pi * pi * pi / (400.0 - pi * pi), 1e-13);
    EXPECT_NEAR(z, 0.158953401375970, 1e-13);
    EXPECT_FALSE(zero_cell_mean_volume(2, pi / 2).is_finite());
    EXPECT_FALSE(zero_cell_mean_volume(3, 4.0).is_finite());
    EXPECT_TRUE(zero_cell_mean_volume(3, 4.1).is_finite());
    EXPECT_THROW(zero_cell_mean_volume(2, 0.0), DomainError);
}

TEST(EllIdentity, SmallResiduals) {
    for (int d = 2; d <= 5; ++d) {
        for (int k = 1; k <= d - 1; ++k) {
            for (int j = 0; j < k; ++j) {
                for (const double r : {0.3, 1.0, 2.0}) {
                    EXPECT_LT(verify_ell_identity(d, k, j, r), 1e-8 * std::max(1.0, ell(d, j, r)))
                        << d << k << j << " " << r;
                }
            }
        }
    }
    EXPECT_EQ(verify_ell_identity(3, 1, 0, 0.0), 0.0);
    EXPECT_THROW(verify_ell_identity(3, 1, 1, 1.0), DomainError);
    EXPECT_THROW(verify_ell_identity(3, 3, 0, 1.0), DomainError);
}

TEST(EllIdentity, IndependentSimpsonExample) {
    // d=3, k=1, j=0: LHS = int_0^1 pi sinh^2(acosh(cosh 1 / cosh s)) * 2 ds.
    const double lhs = oracle::simpson(
        [](double s) {
            const double c = std::cosh(1.0) / std::cosh(s);
            return pi * (c * c - 1.0) * 2.0;
        },
        0.0, 1.0);
    EXPECT_NEAR(lhs, 5.1109327057083, 1e-9);
}

TEST(Steiner, BallIntrinsicVolumes) {
    for (const double radius : {0.5, 1.0, 2.0}) {
        const auto v = fit_ball_intrinsic_volumes(2, radius);
        ASSERT_EQ(v.size(), 2u);
        EXPECT_NEAR(v[0], std::cosh(radius), 1e-9);
        EXPECT_NEAR(v[1], pi * std::sinh(radius), 1e-9);
    }
    for (int d = 2; d <= 5; ++d) {
        const auto v = fit_ball_intrinsic_volumes(d, 1.0);
        // V_{d-1} is half the surface content.
        EXPECT_NEAR(v.back(), 0.5 * ball_surface(d, 1.0), 1e-8 * ball_surface(d, 1.0)) << d;
        EXPECT_LT(steiner_ball_check(d, 1.0, 0.77), 1e-8 * ball_volume(d, 1.77));
    }
    EXPECT_THROW(fit_ball_intrinsic_volumes(2, 0.0), DomainError);
    EXPECT_THROW(steiner_ball_check(2, 1.0, -0.1), DomainError);
}

TEST(FiniteOrInfinite, Payload) {
    EXPECT_THROW(FiniteOrInfinite::finite(0.0), DomainError);
    EXPECT_THROW(FiniteOrInfinite::finite(std::numeric_limits<double>::infinity()), DomainError);
    EXPECT_EQ(FiniteOrInfinite::finite(2.0).value(), 2.0);
    EXPECT_FALSE(FiniteOrInfinite::infinite().is_finite());
}
