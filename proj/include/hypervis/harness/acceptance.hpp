#pragma once

// The acceptance suite: eleven end-to-end checks of simulation against
// closed forms, each with a pinned seed.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "hypervis/closedform.hpp"
#include "hypervis/intersect.hpp"
#include "hypervis/procsim.hpp"
#include "hypervis/stats.hpp"
#include "hypervis/visibility.hpp"

namespace hypervis::harness {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    /// Wall-clock budget; 0 for none.
    double budget_seconds = 0.0;
};

inline constexpr std::uint64_t kAcceptanceSeed = 42;

namespace detail {

inline std::string format(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

inline bool within_3(const EstimateRecord& r, double target) {
    return r.std_error > 0.0 && std::abs(r.estimate - target) < 3.0 * r.std_error;
}

inline std::string describe(const EstimateRecord& r, double target) {
    return format("estimate %.6f +- %.6f vs %.6f (z = %.3f)", r.estimate, r.std_error, target,
                  r.std_error > 0.0 ? (r.estimate - target) / r.std_error : 0.0);
}

} // namespace detail

inline CriterionResult criterion_exponential_law(std::uint64_t seed) {
    const double gamma = 1.5;
    const auto law = GrainLaw::fixed(0.5);
    const double rate = visibility_rate(2, gamma, law);
    const auto s = sample_ranges<2>(ObstacleKind::Boolean, gamma, law, 10000, 12.0, seed);
    const auto ks = ks_exponential(uncensored_values(s), rate);
    return {1, "exponential visibility law", ks.pass,
            detail::format("KS %.5f vs critical %.5f (n = %zu, rate %.6f)", ks.statistic, ks.critical_1pct, ks.n,
                           rate),
            0.0, 30.0};
}

inline CriterionResult criterion_mean_visible_volume(std::uint64_t seed) {
    const double gamma = 1.5;
    const auto law = GrainLaw::fixed(0.5);
    const double target = mean_visible_volume(2, gamma, law).value();
    auto rec = estimate_visible_volume<2>(gamma, law, 2000, 200, 12.0, 12.0, seed);
    return {2, "mean visible volume", detail::within_3(rec, target),
            detail::describe(rec, target) + detail::format(", censored %.2e", rec.censored_fraction), 0.0, 120.0};
}

inline CriterionResult criterion_finiteness_threshold(std::uint64_t) {
    const auto law = GrainLaw::fixed(0.5);
    const double beta = visibility_threshold(2, 0.5);
    bool ok = std::abs(beta - 0.9595) < 5e-5;
    // Infinite exactly at and below the threshold, finite just above.
    for (const double g : {0.5, 0.9, 0.95, beta * (1 - 1e-9), beta}) {
        ok = ok && !mean_visible_volume(2, g, law).is_finite();
    }
    for (const double g : {beta * (1 + 1e-9), 0.96, 1.0, 1.5}) {
        ok = ok && mean_visible_volume(2, g, law).is_finite();
    }
    return {3, "finiteness threshold", ok, detail::format("beta_c(2, 0.5) = %.6f", beta), 0.0, 0.0};
}

inline CriterionResult criterion_intersection_density(std::uint64_t seed) {
    const auto law = GrainLaw::fixed(0.5);
    const double target = intersection_density(2, 1.0, law);
    const auto rec = estimate_intersection_density(1.0, law, 3.0, 2000, seed);
    return {4, "intersection density", detail::within_3(rec, target), detail::describe(rec, target), 0.0, 120.0};
}

inline CriterionResult criterion_zero_cell(std::uint64_t seed) {
    const double gamma = 2.0;
    const double target = zero_cell_mean_volume(2, gamma).value();
    const auto rec = estimate_zero_cell_volume<2>(gamma, 2000, 200, 12.0, seed);
    const auto s = sample_ranges<2>(ObstacleKind::Hyperplanes, gamma, std::nullopt, 10000, 12.0, seed + 1);
    const auto ks = ks_exponential(uncensored_values(s), hyperplane_rate(2, gamma));
    return {5, "zero cell volume", detail::within_3(rec, target) && ks.pass,
            detail::describe(rec, target) + detail::format("; KS %.5f vs %.5f", ks.statistic, ks.critical_1pct),
            0.0, 120.0};
}

inline CriterionResult criterion_ell_identity(std::uint64_t) {
    const int grid[][3] = {{3, 1, 0}, {3, 2, 0}, {3, 2, 1}, {4, 2, 1}, {4, 3, 1}};
    double worst = 0.0;
    for (const auto& g : grid) {
        for (const double r : {0.3, 1.0, 2.0}) {
            worst = std::max(worst, verify_ell_identity(g[0], g[1], g[2], r));
        }
    }
    return {6, "ell identity", worst < 1e-8, detail::format("max residual %.3e", worst), 0.0, 5.0};
}

inline CriterionResult criterion_integral_identity(std::uint64_t) {
    const double grid[][2] = {{2, 1.5}, {2, 2}, {3, 4}, {4, 6}};
    double worst = 0.0;
    for (const auto& g : grid) {
        const int d = static_cast<int>(g[0]);
        const double closed = sinh_exp_integral(d, g[1]).value();
        worst = std::max(worst, std::abs(sinh_exp_integral_quadrature(d, g[1]) - closed) / closed);
    }
    const double spot = sinh_exp_integral(2, 2.0).value();
    const bool ok = worst < 1e-10 && std::abs(spot - 1.0 / 3.0) < 1e-15;
    return {7, "exponential sinh integral", ok,
            detail::format("max relative error %.3e, (2, 2) -> %.15f", worst, spot), 0.0, 0.0};
}

inline CriterionResult criterion_steiner(std::uint64_t seed) {
    const double v0 = fit_ball_intrinsic_volumes(2, 1.0)[0];
    const auto rec = estimate_ball_volume_hits<2>(1.0, 1.0, 0.7, 10000, seed);
    const double target = ball_volume(2, 1.0);
    const bool ok = std::abs(v0 - std::cosh(1.0)) < 1e-6 && detail::within_3(rec, target);
    return {8, "Steiner and ball volume", ok,
            detail::format("V_0 fit %.9f vs cosh 1 = %.9f; ", v0, std::cosh(1.0)) + detail::describe(rec, target),
            0.0, 0.0};
}

inline CriterionResult criterion_critical_growth(std::uint64_t seed) {
    const auto law = GrainLaw::fixed(0.5);
    const double gamma = visibility_threshold(2, 0.5);
    const auto res = survival_splitting<2>(gamma, law, 20.0, 0.5, 20, 20000, seed);
    const auto v10 = res.at(10.0), v20 = res.at(20.0);
    const auto inc = res.increment(10.0, 20.0);
    const double slope = inc.mean() / 10.0;
    const bool ok = std::abs(slope / std::numbers::pi - 1.0) < 0.05;
    return {9, "critical truncated growth", ok,
            detail::format("V(10) = %.3f +- %.3f, V(20) = %.3f +- %.3f, V(10)/10 = %.4f, V(20)/20 = %.4f, "
                           "increment/10 = %.4f +- %.4f vs pi",
                           v10.mean(), v10.stderr_of_mean(), v20.mean(), v20.stderr_of_mean(), v10.mean() / 10.0,
                           v20.mean() / 20.0, slope, inc.stderr_of_mean() / 10.0),
            0.0, 180.0};
}

inline CriterionResult criterion_near_critical_scaling(std::uint64_t) {
    const auto law = GrainLaw::fixed(0.5);
    double worst = 0.0;
    for (const int d : {2, 3}) {
        const double delta = 1e-3;
        const double a = (d - 1) + delta;
        const double v = omega(d) * sinh_exp_integral(d, a).value();
        worst = std::max(worst, std::abs(v / critical_scaling(d, delta) - 1.0));
        // Same check through a grain law, to exercise the moment route.
        const double gamma = a / grain_moments(d, law).v_dm1_star;
        worst = std::max(worst, std::abs(mean_visible_volume(d, gamma, law).value() / critical_scaling(d, delta) - 1.0));
    }
    return {10, "near-critical scaling", worst < 1e-2, detail::format("max relative deviation %.3e", worst), 0.0,
            0.0};
}

inline CriterionResult criterion_crofton(std::uint64_t seed) {
    const auto rec = estimate_crofton_crossings<2>(1.0, 1.0, 10000, seed);
    const double target = 2.0 / std::numbers::pi;
    return {11, "Crofton crossings", detail::within_3(rec, target), detail::describe(rec, target), 0.0, 0.0};
}

using Criterion = std::function<CriterionResult(std::uint64_t)>;

inline std::vector<Criterion> acceptance_criteria() {
    return {criterion_exponential_law,      criterion_mean_visible_volume, criterion_finiteness_threshold,
            criterion_intersection_density, criterion_zero_cell,           criterion_ell_identity,
            criterion_integral_identity,    criterion_steiner,             criterion_critical_growth,
            criterion_near_critical_scaling, criterion_crofton};
}

/// Runs one criterion, timing it; a blown time budget fails the criterion.
inline CriterionResult run_criterion(const Criterion& c, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    auto r = c(seed);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.budget_seconds > 0.0 && r.seconds > r.budget_seconds) {
        r.pass = false;
        r.detail += detail::format(" [over time budget %.0f s]", r.budget_seconds);
    }
    return r;
}

inline std::string format_line(const CriterionResult& r) {
    return detail::format("[%s] %2d %-28s %7.2f s  ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds) +
           r.detail;
}

} // namespace hypervis::harness
