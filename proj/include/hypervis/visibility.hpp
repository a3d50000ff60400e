#pragma once

// Ray casting against ball grains and hyperplanes, visibility ranges from
// the base point and Monte Carlo estimators of the (truncated) visible
// volume.
//
// The visible volume of one realization is
//   omega_d * mean_u F(min(s_u, R)),   F(s) = int_0^s sinh^{d-1}(t) dt,
// averaged over uniformly random directions u, which is unbiased by polar
// integration around the base point.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "hypervis/closedform.hpp"
#include "hypervis/hypgeom.hpp"
#include "hypervis/parallel.hpp"
#include "hypervis/procsim.hpp"
#include "hypervis/record.hpp"
#include "hypervis/rng.hpp"
#include "hypervis/stats.hpp"

namespace hypervis {

struct VisibilitySample {
    double value = 0.0;
    /// The ray left the simulated window unobstructed; value is the cutoff.
    bool censored = false;
};

/// First parameter t >= 0 at which the ray enters the closed grain.
///
/// With A = cosh D = -<p, c>, B = <u, c> = sinh D cos(theta), the distance to
/// the center along the ray satisfies cosh dist = C cosh(t - t0) where
/// C = sqrt(A^2 - B^2) and tanh t0 = B / A.
template <int D>
std::optional<double> ray_grain_hit(const GeodesicRay<D>& ray, const BallGrain<D>& grain) {
    const auto& p = ray.origin().coords();
    const auto& u = ray.direction().dir();
    const auto& c = grain.center.coords();
    const double a = std::max(1.0, -minkowski_dot<D>(p, c));
    const double dist_pc = std::acosh(a);
    if (dist_pc <= grain.radius) {
        return 0.0;
    }
    const double b = minkowski_dot<D>(u, c);
    if (b <= 0.0) {
        return std::nullopt;
    }
    // A - B = e^{-D} + sinh D (1 - cos theta); the second term comes from the
    // tangent-space distance |u sinh D - log_p(c)|^2 / (2 sinh D), which has no
    // cancellation when the ray points almost straight at the center.
    const double sinh_d = std::sinh(dist_pc);
    MVec<D> z;
    for (int i = 0; i <= D; ++i) {
        z[i] = u[i] * sinh_d - (c[i] - a * p[i]);
    }
    const double q = std::max(0.0, minkowski_dot<D>(z, z));
    const double a_minus_b = std::exp(-dist_pc) + q / (2.0 * sinh_d);
    const double a_plus_b = a + b;
    const double c_min = std::sqrt(a_minus_b * a_plus_b);
    const double cosh_r = std::cosh(grain.radius);
    if (c_min > cosh_r) {
        return std::nullopt;
    }
    const double t0 = 0.5 * std::log(a_plus_b / a_minus_b);
    const double t = t0 - std::acosh(std::max(1.0, cosh_r / c_min));
    return std::max(0.0, t);
}

/// Parameter t >= 0 at which the ray crosses the hyperplane, if any.
template <int D>
std::optional<double> ray_hyperplane_hit(const GeodesicRay<D>& ray, const Hyperplane<D>& plane) {
    const double pn = minkowski_dot<D>(ray.origin().coords(), plane.normal);
    if (pn == 0.0) {
        return 0.0;
    }
    const double un = minkowski_dot<D>(ray.direction().dir(), plane.normal);
    if (un == 0.0) {
        return std::nullopt;
    }
    const double rho = -pn / un;
    if (rho > 0.0 && rho < 1.0) {
        return std::atanh(rho);
    }
    return std::nullopt;
}

namespace detail {

inline VisibilitySample censor(double best, double cutoff) noexcept {
    return best < cutoff ? VisibilitySample{best, false} : VisibilitySample{cutoff, true};
}

} // namespace detail

template <int D>
VisibilitySample visibility_range(const BooleanModelSample<D>& model, const UnitTangent<D>& u, double cutoff) {
    if (!(cutoff > 0.0)) {
        throw DomainError("visibility_range: cutoff must be positive");
    }
    const double safe = model.window_radius - model.max_grain_radius;
    if (cutoff > safe * (1.0 + 1e-12)) {
        throw WindowError("visibility_range: cutoff " + std::to_string(cutoff) +
                          " exceeds the edge-corrected window radius " + std::to_string(safe));
    }
    const GeodesicRay<D> ray(u);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& g : model.grains) {
        if (const auto t = ray_grain_hit(ray, g); t && *t < best) {
            best = *t;
        }
    }
    return detail::censor(best, cutoff);
}

template <int D>
VisibilitySample visibility_range(const HyperplaneSample<D>& model, const UnitTangent<D>& u, double cutoff) {
    if (!(cutoff > 0.0)) {
        throw DomainError("visibility_range: cutoff must be positive");
    }
    if (cutoff > model.window_radius * (1.0 + 1e-12)) {
        throw WindowError("visibility_range: cutoff " + std::to_string(cutoff) +
                          " exceeds the hyperplane window radius " + std::to_string(model.window_radius));
    }
    const GeodesicRay<D> ray(u);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& h : model.planes) {
        if (const auto t = ray_hyperplane_hit(ray, h); t && *t < best) {
            best = *t;
        }
    }
    return detail::censor(best, cutoff);
}

/// omega_d * mean over n_rays random directions of F(min(s_u, truncate_at)).
template <class Model, class Rng>
double visible_volume_once(const Model& model, std::size_t n_rays, Rng& rng, double truncate_at) {
    constexpr int D = Model::dim;
    if (n_rays == 0) {
        throw DomainError("visible_volume_once: need at least one ray");
    }
    const HPoint<D> base;
    double acc = 0.0;
    for (std::size_t i = 0; i < n_rays; ++i) {
        const auto s = visibility_range(model, random_direction(base, rng), truncate_at);
        acc += sinh_power_integral(D, std::min(s.value, truncate_at));
    }
    return omega(D) * acc / static_cast<double>(n_rays);
}

// ---------------------------------------------------------------------------
// Lazy ray tracing
//
// The obstacle window is drawn shell by shell and a ray is final once no
// undrawn obstacle can reach closer than its current first hit. The result
// equals visibility_range on the full window drawn from the same stream.

struct TraceStats {
    double drawn_radius = 0.0;
    std::size_t obstacles = 0;
};

template <int D, class Rng>
std::vector<VisibilitySample> trace_boolean_rays(double gamma, const GrainLaw& law,
                                                 std::span<const UnitTangent<D>> dirs, double cutoff,
                                                 Rng& field_rng, TraceStats* stats = nullptr) {
    const double r_max = law.max_radius();
    BooleanShellSampler<D> shells(gamma, law, cutoff + r_max, true);
    std::vector<double> best(dirs.size(), std::numeric_limits<double>::infinity());
    std::vector<std::size_t> alive(dirs.size());
    for (std::size_t i = 0; i < alive.size(); ++i) {
        alive[i] = i;
    }
    std::vector<GeodesicRay<D>> rays;
    rays.reserve(dirs.size());
    for (const auto& u : dirs) {
        rays.emplace_back(u);
    }
    std::vector<BallGrain<D>> shell;
    std::size_t total = 0;
    while (!alive.empty() && !shells.exhausted()) {
        shell.clear();
        total += shells.next_shell(shell, field_rng);
        for (const std::size_t i : alive) {
            for (const auto& g : shell) {
                if (const auto t = ray_grain_hit(rays[i], g); t && *t < best[i]) {
                    best[i] = *t;
                }
            }
        }
        const double reach = shells.drawn_radius() - r_max;
        std::erase_if(alive, [&](std::size_t i) { return best[i] <= reach; });
    }
    if (stats) {
        stats->drawn_radius = shells.drawn_radius();
        stats->obstacles = total;
    }
    std::vector<VisibilitySample> out;
    out.reserve(dirs.size());
    for (const double b : best) {
        out.push_back(detail::censor(b, cutoff));
    }
    return out;
}

template <int D, class Rng>
std::vector<VisibilitySample> trace_hyperplane_rays(double gamma, std::span<const UnitTangent<D>> dirs,
                                                    double cutoff, Rng& field_rng, TraceStats* stats = nullptr) {
    HyperplaneShellSampler<D> shells(gamma, cutoff);
    std::vector<double> best(dirs.size(), std::numeric_limits<double>::infinity());
    std::vector<std::size_t> alive(dirs.size());
    for (std::size_t i = 0; i < alive.size(); ++i) {
        alive[i] = i;
    }
    std::vector<GeodesicRay<D>> rays;
    rays.reserve(dirs.size());
    for (const auto& u : dirs) {
        rays.emplace_back(u);
    }
    std::vector<Hyperplane<D>> shell;
    std::size_t total = 0;
    while (!alive.empty() && !shells.exhausted()) {
        shell.clear();
        total += shells.next_shell(shell, field_rng);
        for (const std::size_t i : alive) {
            for (const auto& h : shell) {
                if (const auto t = ray_hyperplane_hit(rays[i], h); t && *t < best[i]) {
                    best[i] = *t;
                }
            }
        }
        // A plane at distance x from the base point meets rays at t >= x.
        const double reach = shells.drawn_radius();
        std::erase_if(alive, [&](std::size_t i) { return best[i] <= reach; });
    }
    if (stats) {
        stats->drawn_radius = shells.drawn_radius();
        stats->obstacles = total;
    }
    std::vector<VisibilitySample> out;
    out.reserve(dirs.size());
    for (const double b : best) {
        out.push_back(detail::censor(b, cutoff));
    }
    return out;
}

template <int D, class Rng>
std::vector<UnitTangent<D>> random_directions(std::size_t n, Rng& rng) {
    const HPoint<D> base;
    std::vector<UnitTangent<D>> dirs;
    dirs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        dirs.push_back(random_direction(base, rng));
    }
    return dirs;
}

// ---------------------------------------------------------------------------
// Range samples for distributional tests (one ray per realization)

enum class ObstacleKind { Boolean, Hyperplanes };

/// n independent visibility ranges, each from its own realization, along
/// `direction` (random when absent).
template <int D>
std::vector<VisibilitySample> sample_ranges(ObstacleKind kind, double gamma, const std::optional<GrainLaw>& law,
                                            std::size_t n, double cutoff, std::uint64_t seed,
                                            const std::optional<UnitTangent<D>>& direction = std::nullopt,
                                            unsigned threads = 1) {
    if (kind == ObstacleKind::Boolean && !law) {
        throw UsageError("sample_ranges: Boolean model needs a grain law");
    }
    std::vector<VisibilitySample> out(n);
    parallel_for(n, threads, [&](std::size_t i) {
        Stream field(seed, i, StreamRole::Field);
        Stream rays(seed, i, StreamRole::Rays);
        const std::vector<UnitTangent<D>> dirs{direction ? *direction : random_direction(HPoint<D>(), rays)};
        out[i] = kind == ObstacleKind::Boolean
                     ? trace_boolean_rays<D>(gamma, *law, dirs, cutoff, field).front()
                     : trace_hyperplane_rays<D>(gamma, dirs, cutoff, field).front();
    });
    return out;
}

inline std::vector<double> uncensored_values(std::span<const VisibilitySample> s) {
    std::vector<double> v;
    v.reserve(s.size());
    for (const auto& x : s) {
        if (!x.censored) {
            v.push_back(x.value);
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Estimators

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

struct RepOutcome {
    double volume = 0.0;
    std::size_t censored = 0;
};

template <class Trace>
EstimateRecord replicate_visible_volume(EstimateRecord rec, int d, std::size_t n_reps, std::size_t n_rays,
                                        double truncate_at, unsigned threads, Trace&& trace) {
    if (n_reps == 0 || n_rays == 0) {
        throw UsageError("estimate: n_reps and n_rays must be at least 1");
    }
    const auto start = std::chrono::steady_clock::now();
    std::vector<RepOutcome> reps(n_reps);
    parallel_for(n_reps, threads, [&](std::size_t i) {
        const auto ranges = trace(i);
        double acc = 0.0;
        std::size_t cens = 0;
        for (const auto& s : ranges) {
            acc += sinh_power_integral(d, std::min(s.value, truncate_at));
            cens += s.censored ? 1 : 0;
        }
        reps[i] = {omega(d) * acc / static_cast<double>(n_rays), cens};
    });
    RunningStats stats;
    std::size_t cens = 0;
    for (const auto& r : reps) {
        stats.push(r.volume);
        cens += r.censored;
    }
    rec.set_from(stats);
    rec.n_rays = n_rays;
    rec.censored_fraction = static_cast<double>(cens) / static_cast<double>(n_reps * n_rays);
    rec.runtime_ms = elapsed_ms(start);
    return rec;
}

} // namespace detail

/// Mean visible volume of the Boolean model seen from an uncovered base point.
///
/// Without `truncate_at` the target is the full mean visible volume, which
/// must be finite; rays are followed up to `cutoff`. With `truncate_at` the
/// target is the mean volume of the visible region inside B(p, truncate_at).
template <int D>
EstimateRecord estimate_visible_volume(double gamma, const GrainLaw& law, std::size_t n_reps, std::size_t n_rays,
                                       std::optional<double> truncate_at, double cutoff, std::uint64_t seed,
                                       unsigned threads = 1) {
    if (!(gamma > 0.0)) {
        throw UsageError("estimate_visible_volume: gamma must be positive");
    }
    if (!(cutoff > 0.0)) {
        throw UsageError("estimate_visible_volume: cutoff must be positive");
    }
    EstimateRecord rec;
    rec.dim = D;
    rec.gamma = gamma;
    rec.grain_kind = law.kind_name();
    rec.grain_params = law.params_string();
    rec.seed = seed;
    double trunc = cutoff;
    if (truncate_at) {
        if (!(*truncate_at > 0.0) || *truncate_at > cutoff) {
            throw UsageError("estimate_visible_volume: truncation radius must lie in (0, cutoff]");
        }
        trunc = *truncate_at;
        rec.quantity = "visvol_truncated";
        rec.closed_form = truncated_visible_volume(D, gamma, law, trunc);
    } else {
        const double a = visibility_rate(D, gamma, law);
        const auto mv = mean_visible_volume(D, gamma, law);
        if (!mv.is_finite()) {
            throw UsageError("estimate_visible_volume: mean visible volume is infinite since gamma * v*_{d-1} = " +
                             std::to_string(a) + " <= d-1 = " + std::to_string(D - 1) +
                             " (finiteness threshold); use a truncated estimate");
        }
        rec.quantity = "visvol";
        rec.closed_form = mv.value();
    }
    return detail::replicate_visible_volume(rec, D, n_reps, n_rays, trunc, threads, [&](std::size_t i) {
        Stream field(seed, i, StreamRole::Field);
        Stream rays(seed, i, StreamRole::Rays);
        const auto dirs = random_directions<D>(n_rays, rays);
        return trace_boolean_rays<D>(gamma, law, dirs, trunc, field);
    });
}

/// Mean volume of the zero cell of the Poisson hyperplane tessellation.
template <int D>
EstimateRecord estimate_zero_cell_volume(double gamma, std::size_t n_reps, std::size_t n_rays, double cutoff,
                                         std::uint64_t seed, unsigned threads = 1,
                                         std::optional<double> truncate_at = std::nullopt) {
    if (!(gamma > 0.0) || !(cutoff > 0.0)) {
        throw UsageError("estimate_zero_cell_volume: gamma and cutoff must be positive");
    }
    EstimateRecord rec;
    rec.quantity = "zero_cell";
    rec.dim = D;
    rec.gamma = gamma;
    rec.seed = seed;
    double trunc = cutoff;
    if (truncate_at) {
        if (!(*truncate_at > 0.0) || *truncate_at > cutoff) {
            throw UsageError("estimate_zero_cell_volume: truncation radius must lie in (0, cutoff]");
        }
        trunc = *truncate_at;
        rec.quantity = "zero_cell_truncated";
        rec.closed_form = truncated_volume_at_rate(D, hyperplane_rate(D, gamma), trunc);
    } else {
        const auto zc = zero_cell_mean_volume(D, gamma);
        if (!zc.is_finite()) {
            throw UsageError("estimate_zero_cell_volume: zero cell mean volume is infinite since gamma*_d = " +
                             std::to_string(hyperplane_rate(D, gamma)) + " <= d-1 (finiteness threshold)");
        }
        rec.closed_form = zc.value();
    }
    return detail::replicate_visible_volume(rec, D, n_reps, n_rays, trunc, threads, [&](std::size_t i) {
        Stream field(seed, i, StreamRole::Field);
        Stream rays(seed, i, StreamRole::Rays);
        const auto dirs = random_directions<D>(n_rays, rays);
        return trace_hyperplane_rays<D>(gamma, dirs, trunc, field);
    });
}

// ---------------------------------------------------------------------------
// Survival-splitting estimator for large truncation radii
//
// Near criticality the per-ray contribution F(min(s, R)) has variance of
// order e^{(d-1) R}, and a window of radius R holds e^{(d-1) R} grains, so
// direct replication is hopeless for R ~ 20. Along a single ray from the
// base point, split [0, R] into steps t_0 < ... < t_K. Given that [p, x_{t_k}]
// is unobstructed, the grains that matter for the next step are those that
// hit [t_k, t_{k+1}] but miss [0, t_k]; by the Poisson property they are
// independent of everything before. Each step is therefore simulated
// independently: draw the grains with centers near the step, discard those
// meeting [0, t_k], and record the first hit. With q_k the fraction of
// trials clearing the step and G_k the mean of int sinh^{d-1} over the
// unobstructed part of the step,
//   V(t_K) = omega_d sum_k (prod_{i<k} q_i) G_k
// is an unbiased estimate of the truncated mean visible volume (products of
// independent unbiased factors). Independent batches give the standard error.

namespace detail {

// Signed parameter at which the line s -> cosh s p + sinh s e_1 enters the
// ball B(c, r). Along the line cosh dist = C cosh(s - s0) with
// C^2 = 1 + sum_{i>=2} c_i^2 and tanh s0 = c_1 / c_0.
template <int D>
std::optional<double> axis_line_entry(const HPoint<D>& c, double r) {
    double perp = 0.0;
    for (int i = 2; i <= D; ++i) {
        perp += c[i] * c[i];
    }
    const double cmin = std::sqrt(1.0 + perp);
    const double cosh_r = std::cosh(r);
    if (cmin > cosh_r) {
        return std::nullopt;
    }
    return std::atanh(c[1] / c[0]) - std::acosh(cosh_r / cmin);
}

} // namespace detail

struct SplittingResult {
    std::vector<double> grid;
    /// batches[b][k]: batch b's estimate of the truncated volume at grid[k].
    std::vector<std::vector<double>> batches;

    std::size_t index_of(double radius) const {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (std::abs(grid[k] - radius) <= 1e-9 * std::max(1.0, radius)) {
                return k;
            }
        }
        throw DomainError("SplittingResult: radius is not a grid point");
    }

    RunningStats at(double radius) const {
        const std::size_t k = index_of(radius);
        RunningStats s;
        for (const auto& b : batches) {
            s.push(b[k]);
        }
        return s;
    }

    /// Statistics of V(r2) - V(r1) across batches.
    RunningStats increment(double r1, double r2) const {
        const std::size_t k1 = index_of(r1), k2 = index_of(r2);
        RunningStats s;
        for (const auto& b : batches) {
            s.push(b[k2] - b[k1]);
        }
        return s;
    }
};

template <int D>
SplittingResult survival_splitting(double gamma, const GrainLaw& law, double truncate_at, double step,
                                   std::size_t n_batches, std::size_t trials_per_step, std::uint64_t seed,
                                   unsigned threads = 1) {
    if (!(gamma > 0.0) || !(truncate_at > 0.0) || !(step > 0.0) || n_batches < 2 || trials_per_step == 0) {
        throw UsageError("survival_splitting: need gamma, R, step > 0, at least two batches and one trial");
    }
    const auto n_steps = static_cast<std::size_t>(std::ceil(truncate_at / step - 1e-9));
    const double h = truncate_at / static_cast<double>(n_steps);
    const double r_max = law.max_radius();
    const double reach = 0.5 * h + r_max;

    SplittingResult res;
    res.grid.resize(n_steps + 1);
    std::vector<double> f_grid(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k) {
        res.grid[k] = h * static_cast<double>(k);
        f_grid[k] = sinh_power_integral(D, res.grid[k]);
    }

    struct StepOutcome {
        double survive = 0.0;
        double mean_gain = 0.0;
    };
    std::vector<StepOutcome> steps(n_batches * n_steps);
    parallel_for(steps.size(), threads, [&](std::size_t idx) {
        const std::size_t k = idx % n_steps;
        Stream rng(seed, idx, StreamRole::Field);
        const double t_lo = res.grid[k], t_hi = res.grid[k + 1];
        // Work in the frame of the step midpoint: the ray becomes the line
        // through p along the first axis, shifted by tau.
        const double tau = 0.5 * (t_lo + t_hi);
        std::size_t survivors = 0;
        double gain = 0.0;
        for (std::size_t trial = 0; trial < trials_per_step; ++trial) {
            const auto centers = sample_poisson_ball<D>(gamma, reach, rng);
            double first = std::numeric_limits<double>::infinity();
            for (const auto& c0 : centers) {
                const auto s_in = detail::axis_line_entry<D>(c0, law.sample_radius(rng));
                if (!s_in || tau + *s_in <= t_lo) {
                    continue;
                }
                first = std::min(first, tau + *s_in);
            }
            if (first < t_hi) {
                gain += sinh_power_integral(D, first) - f_grid[k];
            } else {
                ++survivors;
                gain += f_grid[k + 1] - f_grid[k];
            }
        }
        const double m = static_cast<double>(trials_per_step);
        steps[idx] = {static_cast<double>(survivors) / m, gain / m};
    });

    res.batches.assign(n_batches, std::vector<double>(n_steps + 1, 0.0));
    for (std::size_t b = 0; b < n_batches; ++b) {
        double survival = 1.0;
        for (std::size_t k = 0; k < n_steps; ++k) {
            const auto& s = steps[b * n_steps + k];
            res.batches[b][k + 1] = res.batches[b][k] + omega(D) * survival * s.mean_gain;
            survival *= s.survive;
        }
    }
    return res;
}

/// Truncated visible volume at `truncate_at` from survival splitting.
template <int D>
EstimateRecord estimate_truncated_visible_volume_splitting(double gamma, const GrainLaw& law, double truncate_at,
                                                           double step, std::size_t n_batches,
                                                           std::size_t trials_per_step, std::uint64_t seed,
                                                           unsigned threads = 1) {
    const auto start = std::chrono::steady_clock::now();
    const auto res = survival_splitting<D>(gamma, law, truncate_at, step, n_batches, trials_per_step, seed, threads);
    EstimateRecord rec;
    rec.quantity = "visvol_truncated_splitting";
    rec.dim = D;
    rec.gamma = gamma;
    rec.grain_kind = law.kind_name();
    rec.grain_params = law.params_string();
    rec.seed = seed;
    rec.closed_form = truncated_visible_volume(D, gamma, law, truncate_at);
    rec.set_from(res.at(truncate_at));
    rec.n_rays = trials_per_step;
    rec.runtime_ms = detail::elapsed_ms(start);
    return rec;
}

/// Mean number of hyperplanes crossing the geodesic segment of the given
/// length from the base point along the first axis. Only planes meeting
/// B(p, length) can cross it.
template <int D>
EstimateRecord estimate_crofton_crossings(double gamma, double length, std::size_t n_reps, std::uint64_t seed) {
    if (!(gamma > 0.0) || !(length > 0.0) || n_reps < 2) {
        throw UsageError("estimate_crofton_crossings: need gamma, length > 0 and n_reps >= 2");
    }
    const auto start = std::chrono::steady_clock::now();
    const GeodesicRay<D> ray(axis_direction<D>(1));
    RunningStats stats;
    for (std::size_t i = 0; i < n_reps; ++i) {
        Stream rng(seed, i, StreamRole::Field);
        const auto sample = sample_hyperplanes<D>(gamma, length, rng);
        std::size_t crossings = 0;
        for (const auto& h : sample.planes) {
            if (const auto t = ray_hyperplane_hit(ray, h); t && *t <= length) {
                ++crossings;
            }
        }
        stats.push(static_cast<double>(crossings));
    }
    EstimateRecord rec;
    rec.quantity = "crofton_crossings";
    rec.dim = D;
    rec.gamma = gamma;
    rec.seed = seed;
    rec.closed_form = hyperplane_rate(D, gamma) * length;
    rec.set_from(stats);
    rec.runtime_ms = detail::elapsed_ms(start);
    return rec;
}

} // namespace hypervis
