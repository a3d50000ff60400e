#pragma once

// Boundary intersections of disc grains in the hyperbolic plane and the
// Monte Carlo intersection density.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <vector>

#include "hypervis/closedform.hpp"
#include "hypervis/hypgeom.hpp"
#include "hypervis/parallel.hpp"
#include "hypervis/procsim.hpp"
#include "hypervis/record.hpp"
#include "hypervis/rng.hpp"
#include "hypervis/stats.hpp"

namespace hypervis {

/// |cos alpha| within this of 1 is treated as tangency.
inline constexpr double kTangencyTol = 1e-12;

namespace detail {

// Unit tangent at c orthogonal to u (D = 2).
inline UnitTangent<2> perpendicular(const UnitTangent<2>& u) {
    const auto& c = u.base().coords();
    const auto& d = u.dir();
    // Minkowski cross product of c and d: the unique (up to sign) vector
    // orthogonal to both.
    const MVec<2> w{c[1] * d[2] - c[2] * d[1], c[0] * d[2] - c[2] * d[0], c[1] * d[0] - c[0] * d[1]};
    return UnitTangent<2>::projected(u.base(), w);
}

} // namespace detail

/// Intersection points of the boundary circles of two discs.
inline std::vector<HPoint<2>> circle_intersection(const BallGrain<2>& g1, const BallGrain<2>& g2) {
    const double dd = dist(g1.center, g2.center);
    if (dd < 1e-12) {
        return {};
    }
    const double r1 = g1.radius, r2 = g2.radius;
    const double cos_a =
        (std::cosh(r1) * std::cosh(dd) - std::cosh(r2)) / (std::sinh(r1) * std::sinh(dd));
    if (std::abs(cos_a) > 1.0 + kTangencyTol) {
        return {};
    }
    const auto u = direction_to(g1.center, g2.center);
    if (std::abs(cos_a) >= 1.0 - kTangencyTol) {
        const double s = cos_a > 0.0 ? 1.0 : -1.0;
        return {exp_map(g1.center, UnitTangent<2>::projected(g1.center, detail::scaled<2>(u.dir(), s)), r1)};
    }
    const auto w = detail::perpendicular(u);
    const double sin_a = std::sqrt(1.0 - cos_a * cos_a);
    std::vector<HPoint<2>> out;
    out.reserve(2);
    for (const double s : {1.0, -1.0}) {
        const auto v = UnitTangent<2>::projected(g1.center, detail::axpy<2>(cos_a, u.dir(), s * sin_a, w.dir()));
        out.push_back(exp_map(g1.center, v, r1));
    }
    return out;
}

struct IntersectionCount {
    double window_radius = 0.0;
    std::size_t count = 0;
    double window_area = 0.0;
    /// Pairs with |D - (r1 + r2)| or |D - |r1 - r2|| below 1e-12.
    std::size_t near_tangencies = 0;
};

/// Counts boundary intersection points of distinct grains inside the open
/// window B(p, window_radius).
inline IntersectionCount count_intersections_in_window(const std::vector<BallGrain<2>>& grains,
                                                       double window_radius) {
    if (!(window_radius > 0.0)) {
        throw DomainError("count_intersections_in_window: window radius must be positive");
    }
    IntersectionCount res;
    res.window_radius = window_radius;
    res.window_area = ball_volume(2, window_radius);
    const HPoint<2> base;
    for (std::size_t i = 0; i < grains.size(); ++i) {
        for (std::size_t j = i + 1; j < grains.size(); ++j) {
            const auto& a = grains[i];
            const auto& b = grains[j];
            // Cheap rejection before computing distances.
            const double ch = -minkowski_dot<2>(a.center.coords(), b.center.coords());
            if (ch > std::cosh(a.radius + b.radius) * (1.0 + 1e-9)) {
                continue;
            }
            const double dd = dist(a.center, b.center);
            if (std::abs(dd - (a.radius + b.radius)) < 1e-12 || std::abs(dd - std::abs(a.radius - b.radius)) < 1e-12) {
                ++res.near_tangencies;
            }
            for (const auto& x : circle_intersection(a, b)) {
                if (dist(x, base) < window_radius) {
                    ++res.count;
                }
            }
        }
    }
    return res;
}

/// Intersection points per unit area in B(p, r_win), from unconditioned
/// realizations with centers in B(p, r_win + max radius).
inline EstimateRecord estimate_intersection_density(double gamma, const GrainLaw& law, double r_win,
                                                    std::size_t n_reps, std::uint64_t seed, unsigned threads = 1) {
    if (!(gamma > 0.0) || !(r_win > 0.0) || n_reps < 2) {
        throw UsageError("estimate_intersection_density: need gamma, r_win > 0 and n_reps >= 2");
    }
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> density(n_reps);
    std::vector<std::size_t> tangencies(n_reps);
    parallel_for(n_reps, threads, [&](std::size_t i) {
        Stream rng(seed, i, StreamRole::Field);
        const auto sample = sample_boolean<2>(gamma, law, r_win, rng, Conditioning::None);
        const auto c = count_intersections_in_window(sample.grains, r_win);
        density[i] = static_cast<double>(c.count) / c.window_area;
        tangencies[i] = c.near_tangencies;
    });
    RunningStats stats;
    for (const double x : density) {
        stats.push(x);
    }
    std::size_t near = 0;
    for (const auto t : tangencies) {
        near += t;
    }
    if (near > 0) {
        std::clog << "intersection_density: " << near << " near-tangent pairs within 1e-12\n";
    }
    EstimateRecord rec;
    rec.quantity = "intersection_density";
    rec.dim = 2;
    rec.gamma = gamma;
    rec.grain_kind = law.kind_name();
    rec.grain_params = law.params_string();
    rec.seed = seed;
    rec.closed_form = intersection_density(2, gamma, law);
    rec.set_from(stats);
    rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

} // namespace hypervis
