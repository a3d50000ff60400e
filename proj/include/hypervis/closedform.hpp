#pragma once

// Closed-form quantities for Boolean models and Poisson hyperplane
// tessellations in H^d, together with the quadrature routes used to check
// them.
//
// Conventions: kappa_d is the volume of the Euclidean unit d-ball and
// omega_d = d kappa_d its surface area. For a grain law Q, v_{d-1} is the
// mean boundary content of the typical grain and
// v*_{d-1} = kappa_{d-1} / (d kappa_d) * v_{d-1}; the visibility range from
// an uncovered point is exponential with rate a = gamma * v*_{d-1}.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hypervis/errors.hpp"

namespace hypervis {

namespace quad {

namespace detail {

// Boost's own recursion compares an unscaled error estimate against a
// scaled tolerance, so short intervals never converge. Each panel is
// therefore mapped onto [-1, 1] here and only the fixed 15-point rule is
// taken from Boost.
template <class F>
double gk15_adaptive(F& f, double a, double b, double abs_tol, double rel_tol, int depth) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    auto g = [&](double x) { return half * f(mid + half * x); };
    double err = 0.0, l1 = 0.0;
    const double est =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(g, -1.0, 1.0, 0, 0.0, &err, &l1);
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * l1;
    if (depth == 0 || err <= std::max({abs_tol, rel_tol * std::abs(est), floor})) {
        return est;
    }
    return gk15_adaptive(f, a, mid, 0.5 * abs_tol, rel_tol, depth - 1) +
           gk15_adaptive(f, mid, b, 0.5 * abs_tol, rel_tol, depth - 1);
}

} // namespace detail

/// Adaptive Gauss-Kronrod (15-point) integration on a bounded interval.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-14) {
    if (a == b) {
        return 0.0;
    }
    // The absolute target comes from a first coarse pass over the whole interval.
    double err = 0.0, l1 = 0.0;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    auto g = [&](double x) { return half * f(mid + half * x); };
    const double coarse =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(g, -1.0, 1.0, 0, 0.0, &err, &l1);
    return detail::gk15_adaptive(f, a, b, rel_tol * std::max(std::abs(coarse), 1e-300), rel_tol, 30);
}

/// Unit-length panels keep each adaptive call well conditioned for
/// integrands that change by orders of magnitude along the interval.
template <class F>
double integrate_panels(F&& f, double a, double b, double panel = 1.0, double rel_tol = 1e-14) {
    double total = 0.0;
    for (double lo = a; lo < b; lo += panel) {
        total += integrate(f, lo, std::min(b, lo + panel), rel_tol);
    }
    return total;
}

} // namespace quad

// ---------------------------------------------------------------------------
// Constants

inline double kappa(int d) {
    if (d < 0) {
        throw DomainError("kappa: negative dimension");
    }
    return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(1.0 + 0.5 * d);
}

inline double omega(int d) { return d * kappa(d); }

struct Constants {
    int d;
    double kappa_d;
    double omega_d;

    static Constants of(int d) {
        if (d < 2) {
            throw DomainError("Constants: dimension must be at least 2");
        }
        return {d, kappa(d), omega(d)};
    }
};

// ---------------------------------------------------------------------------
// Finite / infinite dichotomy

class FiniteOrInfinite {
public:
    static FiniteOrInfinite finite(double v) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw DomainError("FiniteOrInfinite: finite payload must be positive");
        }
        return FiniteOrInfinite(v);
    }
    static FiniteOrInfinite infinite() noexcept { return FiniteOrInfinite(); }

    bool is_finite() const noexcept { return value_.has_value(); }
    double value() const {
        if (!value_) {
            throw DomainError("FiniteOrInfinite: value is infinite");
        }
        return *value_;
    }
    /// Payload, or +inf.
    double value_or_inf() const noexcept {
        return value_.value_or(std::numeric_limits<double>::infinity());
    }

private:
    FiniteOrInfinite() = default;
    explicit FiniteOrInfinite(double v) : value_(v) {}
    std::optional<double> value_;
};

/// Relative width of the band around d-1 that is classified as critical.
/// Thresholds such as beta_c are themselves rounded, so gamma = beta_c must
/// land on the critical side even when gamma * v* rounds one ulp above d-1.
inline constexpr double kCriticalBand = 1e-12;

inline bool above_threshold(double a, int d) noexcept {
    const double thr = d - 1.0;
    return a - thr > kCriticalBand * thr;
}

inline bool at_threshold(double a, int d) noexcept {
    const double thr = d - 1.0;
    return std::abs(a - thr) <= kCriticalBand * thr;
}

// ---------------------------------------------------------------------------
// Grain laws

struct FixedRadius {
    double radius;
};

struct UniformRadius {
    double lo;
    double hi;
};

class GrainLaw {
public:
    static GrainLaw fixed(double radius) {
        if (!(radius > 0.0) || !std::isfinite(radius)) {
            throw DomainError("GrainLaw: fixed radius must be positive");
        }
        return GrainLaw(FixedRadius{radius});
    }

    static GrainLaw uniform(double lo, double hi) {
        if (!(lo >= 0.0) || !(hi > lo) || !std::isfinite(hi)) {
            throw DomainError("GrainLaw: uniform radius law needs 0 <= a < b");
        }
        return GrainLaw(UniformRadius{lo, hi});
    }

    bool is_fixed() const noexcept { return std::holds_alternative<FixedRadius>(kind_); }
    const std::variant<FixedRadius, UniformRadius>& kind() const noexcept { return kind_; }

    double max_radius() const noexcept {
        return is_fixed() ? std::get<FixedRadius>(kind_).radius : std::get<UniformRadius>(kind_).hi;
    }

    template <class Rng>
    double sample_radius(Rng& rng) const {
        if (is_fixed()) {
            return std::get<FixedRadius>(kind_).radius;
        }
        const auto& u = std::get<UniformRadius>(kind_);
        double r = 0.0;
        do {
            r = u.lo + (u.hi - u.lo) * rng.uniform();
        } while (!(r > 0.0));
        return r;
    }

    std::string kind_name() const { return is_fixed() ? "fixed" : "uniform"; }

    std::string params_string() const {
        char buf[64];
        if (is_fixed()) {
            std::snprintf(buf, sizeof buf, "%.12g", std::get<FixedRadius>(kind_).radius);
        } else {
            const auto& u = std::get<UniformRadius>(kind_);
            std::snprintf(buf, sizeof buf, "%.12g,%.12g", u.lo, u.hi);
        }
        return buf;
    }

private:
    explicit GrainLaw(std::variant<FixedRadius, UniformRadius> k) : kind_(k) {}
    std::variant<FixedRadius, UniformRadius> kind_;
};

// ---------------------------------------------------------------------------
// Coefficient functions and balls

/// ell_{d,j}(r) = omega_{d-j} * int_0^r cosh^j(t) sinh^{d-1-j}(t) dt.
inline double ell(int d, int j, double r) {
    if (d < 1 || j < 0 || j > d - 1) {
        throw DomainError("ell: index j must satisfy 0 <= j <= d-1");
    }
    if (r < 0.0) {
        throw DomainError("ell: negative radius");
    }
    const int m = d - 1 - j;
    auto integrand = [j, m](double t) {
        return std::pow(std::cosh(t), j) * std::pow(std::sinh(t), m);
    };
    return omega(d - j) * quad::integrate_panels(integrand, 0.0, r);
}

/// Derivative of ell_{d,j}.
inline double ell_prime(int d, int j, double r) {
    if (d < 1 || j < 0 || j > d - 1) {
        throw DomainError("ell_prime: index j must satisfy 0 <= j <= d-1");
    }
    return omega(d - j) * std::pow(std::cosh(r), j) * std::pow(std::sinh(r), d - 1 - j);
}

/// int_0^s sinh^{d-1}(t) dt.
inline double sinh_power_integral(int d, double s) {
    if (s <= 0.0) {
        return 0.0;
    }
    switch (d) {
    case 2: {
        const double h = std::sinh(0.5 * s);
        return 2.0 * h * h;
    }
    case 3:
        return 0.5 * (std::sinh(s) * std::cosh(s) - s);
    default:
        return quad::integrate_panels([d](double t) { return std::pow(std::sinh(t), d - 1); }, 0.0, s);
    }
}

inline double ball_volume(int d, double radius) {
    if (d < 2) {
        throw DomainError("ball_volume: dimension must be at least 2");
    }
    if (radius < 0.0) {
        throw DomainError("ball_volume: negative radius");
    }
    return omega(d) * sinh_power_integral(d, radius);
}

inline double ball_surface(int d, double radius) {
    if (d < 2) {
        throw DomainError("ball_surface: dimension must be at least 2");
    }
    if (radius < 0.0) {
        throw DomainError("ball_surface: negative radius");
    }
    return omega(d) * std::pow(std::sinh(radius), d - 1);
}

struct GrainMoments {
    int d;
    double v_dm1;
    double v_dm1_star;
    double mean_volume;
};

inline GrainMoments grain_moments(int d, const GrainLaw& law) {
    const double ratio = kappa(d - 1) / (d * kappa(d));
    if (law.is_fixed()) {
        const double r = law.max_radius();
        // kappa_{d-1} sinh^{d-1}(r) equals ratio * omega_d sinh^{d-1}(r) exactly
        // in real arithmetic; this form rounds to the same value as the
        // visibility threshold beta_c.
        return {d, ball_surface(d, r), kappa(d - 1) * std::pow(std::sinh(r), d - 1), ball_volume(d, r)};
    }
    const auto& u = std::get<UniformRadius>(law.kind());
    const double w = u.hi - u.lo;
    const double v = quad::integrate_panels([d](double r) { return ball_surface(d, r); }, u.lo, u.hi, 1.0, 1e-13) / w;
    const double vol = quad::integrate_panels([d](double r) { return ball_volume(d, r); }, u.lo, u.hi, 1.0, 1e-13) / w;
    return {d, v, ratio * v, vol};
}

// ---------------------------------------------------------------------------
// Exponential-sinh integral and visible volume

/// int_0^inf sinh^{d-1}(s) e^{-a s} ds via the gamma form; finite iff a > d-1.
inline FiniteOrInfinite sinh_exp_integral(int d, double a) {
    if (d < 2) {
        throw DomainError("sinh_exp_integral: dimension must be at least 2");
    }
    if (!above_threshold(a, d)) {
        return FiniteOrInfinite::infinite();
    }
    const double log_val = std::lgamma(static_cast<double>(d)) - d * std::numbers::ln2 +
                           std::lgamma(0.5 * (a - d + 1.0)) - std::lgamma(0.5 * (a + d + 1.0));
    return FiniteOrInfinite::finite(std::exp(log_val));
}

/// e^{-a s} sinh^{d-1}(s) written without overflow for large s.
inline double damped_sinh_power(int d, double a, double s) noexcept {
    return std::ldexp(std::exp(-(a - d + 1.0) * s) * std::pow(-std::expm1(-2.0 * s), d - 1), -(d - 1));
}

/// Quadrature route for the same integral, truncated where the integrand
/// has fallen below 1e-18 of its scale.
inline double sinh_exp_integral_quadrature(int d, double a) {
    if (!above_threshold(a, d)) {
        throw DomainError("sinh_exp_integral_quadrature: integral diverges for a <= d-1");
    }
    const double rate = a - d + 1.0;
    const double s_max = 18.0 * std::numbers::ln10 / rate + 2.0;
    return quad::integrate_panels([d, a](double s) { return damped_sinh_power(d, a, s); }, 0.0, s_max,
                                  std::max(1.0, s_max / 64.0));
}

inline double visibility_rate(int d, double gamma, const GrainLaw& law) {
    return gamma * grain_moments(d, law).v_dm1_star;
}

inline FiniteOrInfinite mean_visible_volume(int d, double gamma, const GrainLaw& law) {
    if (!(gamma > 0.0)) {
        throw DomainError("mean_visible_volume: intensity must be positive");
    }
    const auto s = sinh_exp_integral(d, visibility_rate(d, gamma, law));
    return s.is_finite() ? FiniteOrInfinite::finite(omega(d) * s.value()) : s;
}

/// omega_d * int_0^R e^{-a s} sinh^{d-1}(s) ds for an exponential rate a.
inline double truncated_volume_at_rate(int d, double a, double radius) {
    if (radius < 0.0) {
        throw DomainError("truncated visible volume: negative radius");
    }
    return omega(d) * quad::integrate_panels([d, a](double s) { return damped_sinh_power(d, a, s); }, 0.0, radius);
}

inline double truncated_visible_volume(int d, double gamma, const GrainLaw& law, double radius) {
    if (!(gamma > 0.0)) {
        throw DomainError("truncated_visible_volume: intensity must be positive");
    }
    return truncated_volume_at_rate(d, visibility_rate(d, gamma, law), radius);
}

enum class Regime { Subcritical, Critical, Supercritical };

inline const char* regime_name(Regime r) noexcept {
    switch (r) {
    case Regime::Subcritical: return "subcritical";
    case Regime::Critical: return "critical";
    case Regime::Supercritical: return "supercritical";
    }
    return "?";
}

struct Asymptote {
    Regime regime;
    /// Subcritical and critical: asymptote of the truncated volume itself.
    /// Supercritical: asymptote of the tail (full minus truncated volume).
    double comparator;
};

inline Asymptote asymptote_at_rate(int d, double a, double radius) {
    const double lead = omega(d) / std::ldexp(1.0, d - 1);
    if (at_threshold(a, d)) {
        return {Regime::Critical, lead * radius};
    }
    const double beta = (d - 1.0) - a;
    if (beta > 0.0) {
        return {Regime::Subcritical, lead / beta * std::exp(beta * radius)};
    }
    return {Regime::Supercritical, lead / -beta * std::exp(beta * radius)};
}

inline Asymptote truncation_asymptote(int d, double gamma, const GrainLaw& law, double radius) {
    return asymptote_at_rate(d, visibility_rate(d, gamma, law), radius);
}

inline double critical_scaling(int d, double delta) {
    if (!(delta > 0.0)) {
        throw DomainError("critical_scaling: delta must be positive");
    }
    return omega(d) / (std::ldexp(1.0, d - 1) * delta);
}

inline double intersection_density(int d, double gamma, const GrainLaw& law) {
    if (gamma < 0.0) {
        throw DomainError("intersection_density: negative intensity");
    }
    return kappa(d) * std::pow(gamma * grain_moments(d, law).v_dm1_star, d);
}

/// Critical intensity beta_c(d, R) for balls of fixed radius R.
inline double visibility_threshold(int d, double radius) {
    if (!(radius > 0.0)) {
        throw DomainError("visibility_threshold: radius must be positive");
    }
    return (d - 1.0) / (kappa(d - 1) * std::pow(std::sinh(radius), d - 1));
}

/// Exponential rate of hyperplane visibility ranges, gamma * 2 kappa_{d-1} / (d kappa_d).
inline double hyperplane_rate(int d, double gamma) {
    return gamma * 2.0 * kappa(d - 1) / (d * kappa(d));
}

inline FiniteOrInfinite zero_cell_mean_volume(int d, double gamma) {
    if (!(gamma > 0.0)) {
        throw DomainError("zero_cell_mean_volume: intensity must be positive");
    }
    const auto s = sinh_exp_integral(d, hyperplane_rate(d, gamma));
    return s.is_finite() ? FiniteOrInfinite::finite(omega(d) * s.value()) : s;
}

// ---------------------------------------------------------------------------
// Identity checks

/// |int_0^r ell_{d,k}(acosh(cosh r / cosh s)) ell'_{k,j}(s) ds - ell_{d,j}(r)|.
///
/// The left integrand has a square-root endpoint singularity at s = r; the
/// substitution s = r (1 - w^2) makes it smooth in w.
inline double verify_ell_identity(int d, int k, int j, double r) {
    if (!(0 <= j && j < k && k <= d - 1)) {
        throw DomainError("verify_ell_identity: indices must satisfy 0 <= j < k <= d-1");
    }
    if (r < 0.0) {
        throw DomainError("verify_ell_identity: negative radius");
    }
    if (r == 0.0) {
        return 0.0;
    }
    auto integrand = [=](double w) {
        const double s = r * (1.0 - w * w);
        // cosh r / cosh s - 1 without cancellation.
        const double y = 2.0 * std::sinh(0.5 * (r + s)) * std::sinh(0.5 * r * w * w) / std::cosh(s);
        const double x = std::log1p(y + std::sqrt(y * (y + 2.0)));
        return ell(d, k, x) * ell_prime(k, j, s) * 2.0 * r * w;
    };
    const double lhs = quad::integrate(integrand, 0.0, 1.0, 1e-13);
    return std::abs(lhs - ell(d, j, r));
}

/// Fits V_0..V_{d-1} of B(p, R) from the parallel-volume identity at d probe
/// radii r_i = 0.3 i.
inline std::vector<double> fit_ball_intrinsic_volumes(int d, double radius) {
    if (d < 2 || !(radius > 0.0)) {
        throw DomainError("fit_ball_intrinsic_volumes: need d >= 2 and R > 0");
    }
    Eigen::MatrixXd m(d, d);
    Eigen::VectorXd rhs(d);
    const double base = ball_volume(d, radius);
    for (int i = 0; i < d; ++i) {
        const double r = 0.3 * (i + 1);
        for (int j = 0; j < d; ++j) {
            m(i, j) = ell(d, j, r);
        }
        rhs(i) = ball_volume(d, radius + r) - base;
    }
    const Eigen::VectorXd v = m.colPivHouseholderQr().solve(rhs);
    return {v.data(), v.data() + v.size()};
}

/// Residual of the fitted parallel-volume expansion of B(p, R) at a fresh r.
inline double steiner_ball_check(int d, double radius, double r) {
    if (r < 0.0) {
        throw DomainError("steiner_ball_check: negative parallel distance");
    }
    if (r == 0.0) {
        return 0.0;
    }
    const auto v = fit_ball_intrinsic_volumes(d, radius);
    double predicted = ball_volume(d, radius);
    for (int j = 0; j < d; ++j) {
        predicted += v[static_cast<std::size_t>(j)] * ell(d, j, r);
    }
    return std::abs(ball_volume(d, radius + r) - predicted);
}

} // namespace hypervis
