#pragma once

// Samplers for stationary Poisson processes in H^D restricted to balls
// around the base point: points, ball grains (Boolean model) and
// hyperplanes.
//
// Windows are generated as concentric shells of fixed width. Restrictions
// of a Poisson process to disjoint shells are independent, so the union of
// the first k shells is an exact sample in the ball of the outer radius and
// consumers can stop drawing shells as soon as further obstacles cannot
// matter to them.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "hypervis/closedform.hpp"
#include "hypervis/errors.hpp"
#include "hypervis/hypgeom.hpp"
#include "hypervis/record.hpp"
#include "hypervis/rng.hpp"

namespace hypervis {

/// Expected counts above this are refused.
inline constexpr double kMaxExpectedCount = 1e8;

inline void check_expected_count(double mean, const char* what) {
    if (!(mean <= kMaxExpectedCount)) {
        throw ResourceError(std::string(what) + ": expected number of objects " + std::to_string(mean) +
                            " exceeds the resource guard of 1e8");
    }
}

template <int D>
struct BallGrain {
    HPoint<D> center;
    double radius;

    static BallGrain make(const HPoint<D>& center, double radius) {
        if (!(radius > 0.0)) {
            throw DomainError("BallGrain: radius must be positive");
        }
        return {center, radius};
    }

    bool contains(const HPoint<D>& x) const noexcept { return dist(center, x) <= radius; }
};

/// Totally geodesic hyperplane {x : <x, normal>_M = 0}, normal spacelike of unit length.
template <int D>
struct Hyperplane {
    MVec<D> normal;

    static Hyperplane make(const MVec<D>& n) {
        const double nn = minkowski_dot<D>(n, n);
        if (std::abs(nn - 1.0) > kManifoldTol * std::max(1.0, n[0] * n[0])) {
            throw DomainError("Hyperplane: normal must be a unit spacelike vector");
        }
        return {n};
    }

    /// Hyperplane orthogonal to the geodesic from the base point in direction
    /// u, crossing it at signed offset x.
    static Hyperplane orthogonal_to(const UnitTangent<D>& u, double x) {
        return {detail::axpy<D>(std::sinh(x), u.base().coords(), std::cosh(x), u.dir())};
    }

    /// Distance from the base point.
    double offset() const noexcept { return std::asinh(std::abs(normal[0])); }
};

template <int D>
struct BooleanModelSample {
    static constexpr int dim = D;
    std::vector<BallGrain<D>> grains;
    double window_radius = 0.0;
    double max_grain_radius = 0.0;
    bool conditioned = false;
};

template <int D>
struct HyperplaneSample {
    static constexpr int dim = D;
    std::vector<Hyperplane<D>> planes;
    double window_radius = 0.0;
};

// ---------------------------------------------------------------------------
// One-dimensional radial laws

namespace detail {

// Inverts an increasing antiderivative G on [lo, hi] by safeguarded Newton.
template <class G, class Gp>
double invert_monotone(G&& g, Gp&& gp, double target, double lo, double hi) {
    double a = lo, b = hi;
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double f = g(t) - target;
        if (f > 0.0) {
            b = t;
        } else {
            a = t;
        }
        const double slope = gp(t);
        double next = slope > 0.0 ? t - f / slope : 0.5 * (a + b);
        if (!(next > a && next < b)) {
            next = 0.5 * (a + b);
        }
        if (std::abs(next - t) <= 1e-15 * std::max(1.0, std::abs(t)) || b - a <= 1e-15 * std::max(1.0, b)) {
            return next;
        }
        t = next;
    }
    return t;
}

// Exponential proposal on [lo, hi] with density proportional to e^{k t}.
template <class Rng>
double sample_exp_envelope(double k, double lo, double hi, Rng& rng) {
    const double u = rng.uniform();
    return lo + std::log1p(u * std::expm1(k * (hi - lo))) / k;
}

} // namespace detail

/// Radius with density proportional to sinh^{d-1}(t) on [lo, hi].
template <class Rng>
double sample_radial_between(int d, double lo, double hi, Rng& rng) {
    if (!(lo >= 0.0) || !(hi > lo)) {
        throw DomainError("sample_radial: need 0 <= lo < hi");
    }
    switch (d) {
    case 2: {
        // (cosh t - cosh lo) / (cosh hi - cosh lo) = U, written in terms of
        // cosh t - 1 = 2 sinh^2(t/2) to keep precision near the origin.
        const double sl = std::sinh(0.5 * lo), sh = std::sinh(0.5 * hi);
        const double c_lo = 2.0 * sl * sl, c_hi = 2.0 * sh * sh;
        const double c = c_lo + rng.uniform() * (c_hi - c_lo);
        return std::clamp(2.0 * std::asinh(std::sqrt(0.5 * c)), lo, hi);
    }
    case 3: {
        auto g = [](double t) { return 0.5 * (std::sinh(t) * std::cosh(t) - t); };
        auto gp = [](double t) { const double s = std::sinh(t); return s * s; };
        const double target = g(lo) + rng.uniform() * (g(hi) - g(lo));
        return std::clamp(detail::invert_monotone(g, gp, target, lo, hi), lo, hi);
    }
    default: {
        // Envelope (e^t / 2)^{d-1} >= sinh^{d-1}(t); acceptance (1 - e^{-2t})^{d-1}.
        for (;;) {
            const double t = detail::sample_exp_envelope(d - 1.0, lo, hi, rng);
            if (rng.uniform() < std::pow(-std::expm1(-2.0 * t), d - 1)) {
                return t;
            }
        }
    }
    }
}

template <class Rng>
double sample_radial(int d, double r_max, Rng& rng) {
    if (!(r_max > 0.0)) {
        throw DomainError("sample_radial: R_max must be positive");
    }
    return sample_radial_between(d, 0.0, r_max, rng);
}

/// int_lo^hi cosh^{d-1}(t) dt.
inline double cosh_power_mass(int d, double lo, double hi) {
    switch (d) {
    case 2: return std::sinh(hi) - std::sinh(lo);
    case 3: {
        auto h = [](double t) { return 0.5 * (std::sinh(t) * std::cosh(t) + t); };
        return h(hi) - h(lo);
    }
    default:
        return quad::integrate_panels([d](double t) { return std::pow(std::cosh(t), d - 1); }, lo, hi);
    }
}

/// Offset with density proportional to cosh^{d-1}(t) on [lo, hi].
template <class Rng>
double sample_cosh_power_between(int d, double lo, double hi, Rng& rng) {
    switch (d) {
    case 2: {
        const double s = std::sinh(lo) + rng.uniform() * (std::sinh(hi) - std::sinh(lo));
        return std::clamp(std::asinh(s), lo, hi);
    }
    case 3: {
        auto h = [](double t) { return 0.5 * (std::sinh(t) * std::cosh(t) + t); };
        auto hp = [](double t) { const double c = std::cosh(t); return c * c; };
        const double target = h(lo) + rng.uniform() * (h(hi) - h(lo));
        return std::clamp(detail::invert_monotone(h, hp, target, lo, hi), lo, hi);
    }
    default: {
        // Envelope e^{(d-1)t} >= cosh^{d-1}(t); acceptance ((1 + e^{-2t}) / 2)^{d-1}.
        for (;;) {
            const double t = detail::sample_exp_envelope(d - 1.0, lo, hi, rng);
            if (rng.uniform() < std::pow(0.5 * (1.0 + std::exp(-2.0 * t)), d - 1)) {
                return t;
            }
        }
    }
    }
}

// ---------------------------------------------------------------------------
// Poisson points

template <int D, class Rng>
HPoint<D> sample_point_between(double lo, double hi, Rng& rng) {
    const HPoint<D> base;
    return exp_map(base, random_direction(base, rng), sample_radial_between(D, lo, hi, rng));
}

/// Poisson process of intensity gamma in the annulus lo <= dist(p, x) < hi.
template <int D, class Rng>
std::vector<HPoint<D>> sample_poisson_annulus(double gamma, double lo, double hi, Rng& rng) {
    if (!(gamma >= 0.0)) {
        throw DomainError("sample_poisson: negative intensity");
    }
    const double mean = gamma * (ball_volume(D, hi) - ball_volume(D, lo));
    check_expected_count(mean, "sample_poisson");
    const auto n = rng.poisson(mean);
    std::vector<HPoint<D>> pts;
    pts.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        pts.push_back(sample_point_between<D>(lo, hi, rng));
    }
    return pts;
}

/// Poisson process of intensity gamma in B(p, r_max).
template <int D, class Rng>
std::vector<HPoint<D>> sample_poisson_ball(double gamma, double r_max, Rng& rng) {
    if (!(r_max > 0.0)) {
        throw DomainError("sample_poisson_ball: R_max must be positive");
    }
    return sample_poisson_annulus<D>(gamma, 0.0, r_max, rng);
}

// ---------------------------------------------------------------------------
// Boolean model

enum class Conditioning {
    None,
    /// Delete grains containing the base point (exact Poisson restriction).
    Deletion,
    /// Redraw the whole window until the base point is uncovered.
    Rejection,
};

/// Draws the ball-grain process shell by shell in the center distance.
template <int D>
class BooleanShellSampler {
public:
    BooleanShellSampler(double gamma, GrainLaw law, double center_radius, bool delete_covering,
                        double shell_width = 1.0)
        : gamma_(gamma), law_(std::move(law)), center_radius_(center_radius),
          delete_covering_(delete_covering), width_(shell_width) {
        if (!(gamma > 0.0)) {
            throw DomainError("sample_boolean: intensity must be positive");
        }
        if (!(center_radius > 0.0) || !(shell_width > 0.0)) {
            throw DomainError("sample_boolean: window and shell width must be positive");
        }
    }

    bool exhausted() const noexcept { return inner_ >= center_radius_; }
    /// Outer radius of the shells drawn so far.
    double drawn_radius() const noexcept { return inner_; }

    /// Appends the grains of the next shell to `out`; returns how many were added.
    template <class Rng>
    std::size_t next_shell(std::vector<BallGrain<D>>& out, Rng& rng) {
        if (exhausted()) {
            return 0;
        }
        const double lo = inner_;
        const double hi = std::min(center_radius_, inner_ + width_);
        inner_ = hi;
        const auto centers = sample_poisson_annulus<D>(gamma_, lo, hi, rng);
        const std::size_t before = out.size();
        const HPoint<D> base;
        for (const auto& c : centers) {
            const double r = law_.sample_radius(rng);
            BallGrain<D> g{c, r};
            if (delete_covering_ && g.contains(base)) {
                continue;
            }
            out.push_back(g);
        }
        return out.size() - before;
    }

private:
    double gamma_;
    GrainLaw law_;
    double center_radius_;
    bool delete_covering_;
    double width_;
    double inner_ = 0.0;
};

/// Boolean model sample covering everything that can meet B(p, r_obs):
/// centers are drawn in B(p, r_obs + max radius of the law).
template <int D, class Rng>
BooleanModelSample<D> sample_boolean(double gamma, const GrainLaw& law, double r_obs, Rng& rng,
                                     Conditioning cond = Conditioning::Deletion) {
    if (!(r_obs > 0.0)) {
        throw DomainError("sample_boolean: observation radius must be positive");
    }
    const double r_cen = r_obs + law.max_radius();
    check_expected_count(gamma * ball_volume(D, std::min(r_cen, 700.0)), "sample_boolean");
    BooleanModelSample<D> s;
    s.window_radius = r_cen;
    s.max_grain_radius = law.max_radius();
    s.conditioned = cond != Conditioning::None;

    if (cond == Conditioning::Rejection) {
        const HPoint<D> base;
        for (int attempt = 0; attempt < 1'000'000; ++attempt) {
            s.grains.clear();
            BooleanShellSampler<D> shells(gamma, law, r_cen, false);
            while (!shells.exhausted()) {
                shells.next_shell(s.grains, rng);
            }
            const bool covered = std::any_of(s.grains.begin(), s.grains.end(),
                                             [&](const BallGrain<D>& g) { return g.contains(base); });
            if (!covered) {
                return s;
            }
        }
        throw ResourceError("sample_boolean: rejection conditioning did not terminate");
    }

    BooleanShellSampler<D> shells(gamma, law, r_cen, cond == Conditioning::Deletion);
    while (!shells.exhausted()) {
        shells.next_shell(s.grains, rng);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Hyperplanes

/// Draws the hyperplane process in shells of distance from the base point.
template <int D>
class HyperplaneShellSampler {
public:
    HyperplaneShellSampler(double gamma, double window_radius, double shell_width = 1.0)
        : gamma_(gamma), window_(window_radius), width_(shell_width) {
        if (!(gamma > 0.0)) {
            throw DomainError("sample_hyperplanes: intensity must be positive");
        }
        if (!(window_radius > 0.0) || !(shell_width > 0.0)) {
            throw DomainError("sample_hyperplanes: window and shell width must be positive");
        }
    }

    bool exhausted() const noexcept { return inner_ >= window_; }
    double drawn_radius() const noexcept { return inner_; }

    template <class Rng>
    std::size_t next_shell(std::vector<Hyperplane<D>>& out, Rng& rng) {
        if (exhausted()) {
            return 0;
        }
        const double lo = inner_;
        const double hi = std::min(window_, inner_ + width_);
        inner_ = hi;
        // Each plane H(L, x) is the orthogonal plane to a line L through p at
        // signed position x; u uniform on the sphere together with the sign
        // of x covers every line twice, matching |x| in [lo, hi) on both sides.
        const double mean = gamma_ * 2.0 * cosh_power_mass(D, lo, hi);
        check_expected_count(mean, "sample_hyperplanes");
        const auto n = rng.poisson(mean);
        const HPoint<D> base;
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto u = random_direction(base, rng);
            double x = sample_cosh_power_between(D, lo, hi, rng);
            if (rng.uniform() < 0.5) {
                x = -x;
            }
            out.push_back(Hyperplane<D>::orthogonal_to(u, x));
        }
        return n;
    }

private:
    double gamma_;
    double window_;
    double width_;
    double inner_ = 0.0;
};

template <int D, class Rng>
HyperplaneSample<D> sample_hyperplanes(double gamma, double r_obs, Rng& rng) {
    check_expected_count(gamma * 2.0 * cosh_power_mass(D, 0.0, std::min(r_obs, 700.0)), "sample_hyperplanes");
    HyperplaneSample<D> s;
    s.window_radius = r_obs;
    HyperplaneShellSampler<D> shells(gamma, r_obs);
    while (!shells.exhausted()) {
        shells.next_shell(s.planes, rng);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Rotations about the base point

/// Haar-random rotation of the spatial coordinates (row-major).
template <int D, class Rng>
std::array<double, D * D> random_rotation(Rng& rng) {
    std::array<double, D * D> m{};
    for (int i = 0; i < D; ++i) {
        for (;;) {
            std::array<double, D> v;
            for (auto& x : v) {
                x = rng.normal();
            }
            for (int k = 0; k < i; ++k) {
                double dot = 0.0;
                for (int j = 0; j < D; ++j) {
                    dot += v[j] * m[k * D + j];
                }
                for (int j = 0; j < D; ++j) {
                    v[j] -= dot * m[k * D + j];
                }
            }
            double nn = 0.0;
            for (double x : v) {
                nn += x * x;
            }
            if (nn > 1e-12) {
                for (int j = 0; j < D; ++j) {
                    m[i * D + j] = v[j] / std::sqrt(nn);
                }
                break;
            }
        }
    }
    return m;
}

template <int D>
BooleanModelSample<D> rotated(const BooleanModelSample<D>& s, const std::array<double, D * D>& rot) {
    BooleanModelSample<D> r = s;
    for (auto& g : r.grains) {
        g.center = HPoint<D>::lifted(rotate_about_base<D>(rot, g.center.coords()));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Mean-measure checks

/// Estimates ball_volume(D, radius) as the mean number of Poisson points
/// falling in B(q, radius) divided by gamma, where q lies at distance
/// `offset` from the base point. Points are drawn in B(p, offset + radius).
template <int D>
EstimateRecord estimate_ball_volume_hits(double gamma, double radius, double offset, std::size_t n_reps,
                                         std::uint64_t seed) {
    if (!(gamma > 0.0) || !(radius > 0.0) || offset < 0.0 || n_reps < 2) {
        throw UsageError("estimate_ball_volume_hits: need gamma, radius > 0, offset >= 0 and n_reps >= 2");
    }
    const HPoint<D> q = offset > 0.0 ? exp_map(HPoint<D>(), axis_direction<D>(1), offset) : HPoint<D>();
    RunningStats stats;
    for (std::size_t i = 0; i < n_reps; ++i) {
        Stream rng(seed, i, StreamRole::Field);
        const auto pts = sample_poisson_ball<D>(gamma, offset + radius, rng);
        const auto hits = std::count_if(pts.begin(), pts.end(), [&](const HPoint<D>& x) { return dist(x, q) <= radius; });
        stats.push(static_cast<double>(hits) / gamma);
    }
    EstimateRecord rec;
    rec.quantity = "ball_volume_hits";
    rec.dim = D;
    rec.gamma = gamma;
    rec.seed = seed;
    rec.closed_form = ball_volume(D, radius);
    rec.set_from(stats);
    return rec;
}

} // namespace hypervis
