#pragma once

#include <chrono>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "hypervis/closedform.hpp"
#include "hypervis/harness/config.hpp"
#include "hypervis/intersect.hpp"
#include "hypervis/record.hpp"
#include "hypervis/stats.hpp"
#include "hypervis/visibility.hpp"

namespace hypervis::harness {

struct ResidualCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct FormulaCheckResult {
    std::vector<ResidualCheck> checks;
    double max_residual = 0.0;
    bool pass = false;
};

inline FormulaCheckResult formula_check() {
    FormulaCheckResult res;
    auto add = [&](std::string name, double residual) {
        ResidualCheck c{std::move(name), residual, 1e-8, residual < 1e-8};
        res.max_residual = std::max(res.max_residual, residual);
        res.checks.push_back(std::move(c));
    };
    const int ell_grid[][3] = {{3, 1, 0}, {3, 2, 0}, {3, 2, 1}, {4, 2, 1}, {4, 3, 1}};
    for (const auto& g : ell_grid) {
        for (const double r : {0.3, 1.0, 2.0}) {
            add("ell_identity(" + std::to_string(g[0]) + "," + std::to_string(g[1]) + "," + std::to_string(g[2]) +
                    ",r=" + std::to_string(r) + ")",
                verify_ell_identity(g[0], g[1], g[2], r));
        }
    }
    const double sinh_exp_grid[][2] = {{2, 1.5}, {2, 2}, {3, 4}, {4, 6}};
    for (const auto& g : sinh_exp_grid) {
        const int d = static_cast<int>(g[0]);
        const double closed = sinh_exp_integral(d, g[1]).value();
        add("sinh_exp_integral(" + std::to_string(d) + ",a=" + std::to_string(g[1]) + ") relative",
            std::abs(sinh_exp_integral_quadrature(d, g[1]) - closed) / closed);
    }
    add("steiner_ball_check(2,R=1,r=0.9)", steiner_ball_check(2, 1.0, 0.9));
    add("steiner_ball_check(3,R=0.5,r=0.9)", steiner_ball_check(3, 0.5, 0.9));
    add("steiner V_0(ball R=1) - cosh 1", std::abs(fit_ball_intrinsic_volumes(2, 1.0)[0] - std::cosh(1.0)));
    res.pass = std::all_of(res.checks.begin(), res.checks.end(), [](const ResidualCheck& c) { return c.pass; });
    return res;
}

using RunResult = std::variant<EstimateRecord, KsResult, FormulaCheckResult>;

/// Deterministic given config.seed.
inline RunResult run(const ExperimentConfig& cfg) {
    cfg.validate();
    switch (cfg.quantity) {
    case Quantity::FormulaCheck:
        return formula_check();
    case Quantity::Visvol:
        return dispatch_dim(cfg.d, [&](auto dim) -> RunResult {
            return estimate_visible_volume<dim()>(cfg.gamma, *cfg.law, cfg.n_reps, cfg.n_rays, std::nullopt,
                                                  cfg.cutoff, cfg.seed, cfg.threads);
        });
    case Quantity::VisvolTruncated:
        return dispatch_dim(cfg.d, [&](auto dim) -> RunResult {
            return estimate_visible_volume<dim()>(cfg.gamma, *cfg.law, cfg.n_reps, cfg.n_rays, cfg.truncate_at,
                                                  cfg.cutoff, cfg.seed, cfg.threads);
        });
    case Quantity::ZeroCell:
        return dispatch_dim(cfg.d, [&](auto dim) -> RunResult {
            return estimate_zero_cell_volume<dim()>(cfg.gamma, cfg.n_reps, cfg.n_rays, cfg.cutoff, cfg.seed,
                                                    cfg.threads, cfg.truncate_at);
        });
    case Quantity::CdfBoolean:
        return dispatch_dim(cfg.d, [&](auto dim) -> RunResult {
            const auto s = sample_ranges<dim()>(ObstacleKind::Boolean, cfg.gamma, cfg.law, cfg.n_reps, cfg.cutoff,
                                                cfg.seed, std::nullopt, cfg.threads);
            const auto v = uncensored_values(s);
            return ks_exponential(v, visibility_rate(dim(), cfg.gamma, *cfg.law));
        });
    case Quantity::CdfTessellation:
        return dispatch_dim(cfg.d, [&](auto dim) -> RunResult {
            const auto s = sample_ranges<dim()>(ObstacleKind::Hyperplanes, cfg.gamma, std::nullopt, cfg.n_reps,
                                                cfg.cutoff, cfg.seed, std::nullopt, cfg.threads);
            const auto v = uncensored_values(s);
            return ks_exponential(v, hyperplane_rate(dim(), cfg.gamma));
        });
    case Quantity::IntersectionDensity:
        return estimate_intersection_density(cfg.gamma, *cfg.law, *cfg.r_win, cfg.n_reps, cfg.seed, cfg.threads);
    }
    throw UsageError("unhandled quantity");
}

} // namespace hypervis::harness
