#pragma once

// Hyperbolic space in the hyperboloid model.
//
// Points of H^D are vectors x in R^{D,1} with <x,x>_M = -1 and x_0 >= 1,
// where <a,b>_M = -a_0 b_0 + sum_{i>=1} a_i b_i. The canonical base point
// is (1, 0, ..., 0). Tangent vectors at p are the spacelike vectors that
// are Minkowski-orthogonal to p.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>

#include "hypervis/errors.hpp"

namespace hypervis {

template <int D>
using MVec = std::array<double, D + 1>;

/// Tolerance used by every invariant check on points and tangents.
inline constexpr double kManifoldTol = 1e-9;

template <int D>
constexpr double minkowski_dot(const MVec<D>& a, const MVec<D>& b) noexcept {
    double s = -a[0] * b[0];
    for (int i = 1; i <= D; ++i) {
        s += a[i] * b[i];
    }
    return s;
}

inline double minkowski_dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("minkowski_dot: operands have lengths " + std::to_string(a.size()) +
                             " and " + std::to_string(b.size()));
    }
    if (a.empty()) {
        throw DimensionError("minkowski_dot: empty operands");
    }
    double s = -a[0] * b[0];
    for (std::size_t i = 1; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

namespace detail {

template <int D>
MVec<D> axpy(double alpha, const MVec<D>& x, double beta, const MVec<D>& y) noexcept {
    MVec<D> r;
    for (int i = 0; i <= D; ++i) {
        r[i] = alpha * x[i] + beta * y[i];
    }
    return r;
}

template <int D>
MVec<D> scaled(const MVec<D>& x, double s) noexcept {
    MVec<D> r;
    for (int i = 0; i <= D; ++i) {
        r[i] = s * x[i];
    }
    return r;
}

// Relative to the size of the vector: far-away points have coordinates of
// order cosh(distance), so an absolute tolerance would be meaningless there.
template <int D>
double hyperboloid_defect(const MVec<D>& x) noexcept {
    return std::abs(minkowski_dot<D>(x, x) + 1.0) / std::max(1.0, x[0] * x[0]);
}

} // namespace detail

template <int D>
class HPoint {
    static_assert(D >= 2, "hyperbolic dimension must be at least 2");

public:
    static constexpr int dim = D;

    /// The base point (1, 0, ..., 0).
    HPoint() noexcept { x_.fill(0.0); x_[0] = 1.0; }

    static HPoint base() noexcept { return HPoint(); }

    /// Validates the hyperboloid invariants; throws DomainError otherwise.
    static HPoint from_coords(const MVec<D>& x) {
        if (!(x[0] >= 1.0 - kManifoldTol) || detail::hyperboloid_defect<D>(x) > kManifoldTol) {
            throw DomainError("HPoint: coordinates are not on the upper hyperboloid sheet");
        }
        return HPoint(x, Unchecked{});
    }

    /// Re-projects an approximately valid vector onto the hyperboloid.
    static HPoint projected(const MVec<D>& x) {
        const double q = -minkowski_dot<D>(x, x);
        if (!(q > 0.0) || !(x[0] > 0.0)) {
            throw DomainError("HPoint: vector is not timelike future-pointing");
        }
        HPoint p(detail::scaled<D>(x, 1.0 / std::sqrt(q)), Unchecked{});
        p.x_[0] = std::max(p.x_[0], 1.0);
        return p;
    }

    /// Keeps the spatial part and recomputes x0; accurate far from the base
    /// point, where -<x, x> cancels.
    static HPoint lifted(const MVec<D>& x) noexcept {
        double ss = 0.0;
        for (int i = 1; i <= D; ++i) {
            ss += x[i] * x[i];
        }
        HPoint p(x, Unchecked{});
        p.x_[0] = std::sqrt(1.0 + ss);
        return p;
    }

    const MVec<D>& coords() const noexcept { return x_; }
    double operator[](int i) const noexcept { return x_[static_cast<std::size_t>(i)]; }

    friend bool operator==(const HPoint&, const HPoint&) = default;

private:
    struct Unchecked {};
    HPoint(const MVec<D>& x, Unchecked) noexcept : x_(x) {}

    MVec<D> x_;
};

/// Unit tangent vector `dir` at `base`.
template <int D>
class UnitTangent {
public:
    static UnitTangent from_coords(const HPoint<D>& base, const MVec<D>& dir) {
        const double nn = minkowski_dot<D>(dir, dir);
        const double pn = minkowski_dot<D>(base.coords(), dir);
        const double scale = std::max(1.0, std::abs(base[0]));
        if (std::abs(nn - 1.0) > kManifoldTol * scale * scale ||
            std::abs(pn) > kManifoldTol * scale) {
            throw DomainError("UnitTangent: direction is not a unit tangent at the base point");
        }
        return UnitTangent(base, dir);
    }

    /// Projects `v` onto the tangent space at `base` and normalizes.
    static UnitTangent projected(const HPoint<D>& base, const MVec<D>& v) {
        const MVec<D> w = detail::axpy<D>(1.0, v, minkowski_dot<D>(v, base.coords()), base.coords());
        const double nn = minkowski_dot<D>(w, w);
        if (!(nn > 0.0)) {
            throw DomainError("UnitTangent: vector has no tangential component");
        }
        return UnitTangent(base, detail::scaled<D>(w, 1.0 / std::sqrt(nn)));
    }

    const HPoint<D>& base() const noexcept { return base_; }
    const MVec<D>& dir() const noexcept { return dir_; }

private:
    UnitTangent(const HPoint<D>& base, const MVec<D>& dir) : base_(base), dir_(dir) {}

    HPoint<D> base_;
    MVec<D> dir_;
};

template <int D>
double dist(const HPoint<D>& x, const HPoint<D>& y) noexcept {
    return std::acosh(std::max(1.0, -minkowski_dot<D>(x.coords(), y.coords())));
}

template <int D>
HPoint<D> exp_map(const HPoint<D>& p, const UnitTangent<D>& u, double t) {
    if (t < 0.0) {
        throw DomainError("exp_map: negative geodesic parameter");
    }
    if (t == 0.0) {
        return p;
    }
    return HPoint<D>::lifted(detail::axpy<D>(std::cosh(t), p.coords(), std::sinh(t), u.dir()));
}

/// Direction of the geodesic through exp_map(p, u, t) continuing u.
template <int D>
UnitTangent<D> transport_along(const HPoint<D>& p, const UnitTangent<D>& u, double t) {
    const HPoint<D> q = exp_map(p, u, t);
    return UnitTangent<D>::projected(q, detail::axpy<D>(std::cosh(t), u.dir(), std::sinh(t), p.coords()));
}

/// Logarithm direction: the unit tangent at p pointing at q.
template <int D>
UnitTangent<D> direction_to(const HPoint<D>& p, const HPoint<D>& q) {
    if (dist(p, q) < 1e-12) {
        throw DomainError("direction_to: points coincide, direction is undefined");
    }
    const double c = -minkowski_dot<D>(p.coords(), q.coords());
    const MVec<D> w = detail::axpy<D>(1.0, q.coords(), -c, p.coords());
    const double nn = minkowski_dot<D>(w, w);
    if (!(nn > 0.0)) {
        throw DomainError("direction_to: points coincide, direction is undefined");
    }
    return UnitTangent<D>::projected(p, detail::scaled<D>(w, 1.0 / std::sqrt(nn)));
}

template <int D>
double angle(const HPoint<D>& /*p*/, const UnitTangent<D>& u, const UnitTangent<D>& v) noexcept {
    return std::acos(std::clamp(minkowski_dot<D>(u.dir(), v.dir()), -1.0, 1.0));
}

/// Lorentz boost taking the base point to p, applied to w. Rotation-free:
/// vectors orthogonal to both the base point and p are left unchanged.
template <int D>
MVec<D> boost_from_base(const HPoint<D>& p, const MVec<D>& w) noexcept {
    const auto& x = p.coords();
    double xw = 0.0;
    for (int i = 1; i <= D; ++i) {
        xw += x[i] * w[i];
    }
    MVec<D> r;
    r[0] = x[0] * w[0] + xw;
    const double f = w[0] + xw / (1.0 + x[0]);
    for (int i = 1; i <= D; ++i) {
        r[i] = w[i] + x[i] * f;
    }
    return r;
}

/// Inverse of boost_from_base: takes p back to the base point.
template <int D>
MVec<D> boost_to_base(const HPoint<D>& p, const MVec<D>& w) noexcept {
    MVec<D> xinv = p.coords();
    for (int i = 1; i <= D; ++i) {
        xinv[i] = -xinv[i];
    }
    return boost_from_base<D>(HPoint<D>::projected(xinv), w);
}

/// Moves a point by the isometry taking the base point to `p`.
template <int D>
HPoint<D> translate(const HPoint<D>& p, const HPoint<D>& x) {
    return HPoint<D>::lifted(boost_from_base<D>(p, x.coords()));
}

/// Uniform direction on the unit sphere of the tangent space at p.
template <int D, class Rng>
UnitTangent<D> random_direction(const HPoint<D>& p, Rng& rng) {
    MVec<D> v;
    double nn = 0.0;
    do {
        v[0] = 0.0;
        nn = 0.0;
        for (int i = 1; i <= D; ++i) {
            v[i] = rng.normal();
            nn += v[i] * v[i];
        }
    } while (nn < 1e-300);
    for (int i = 1; i <= D; ++i) {
        v[i] /= std::sqrt(nn);
    }
    if (p == HPoint<D>::base()) {
        return UnitTangent<D>::projected(p, v);
    }
    return UnitTangent<D>::projected(p, boost_from_base<D>(p, v));
}

/// Unit tangent at the base point along spatial axis `axis` (1..D).
template <int D>
UnitTangent<D> axis_direction(int axis = 1) {
    if (axis < 1 || axis > D) {
        throw DimensionError("axis_direction: axis out of range");
    }
    MVec<D> v{};
    v[static_cast<std::size_t>(axis)] = 1.0;
    return UnitTangent<D>::from_coords(HPoint<D>::base(), v);
}

/// Poincaré ball coordinates (x_1, ..., x_D) / (1 + x_0).
template <int D>
std::array<double, D> to_poincare(const HPoint<D>& x) noexcept {
    std::array<double, D> r;
    const double s = 1.0 / (1.0 + x[0]);
    for (int i = 0; i < D; ++i) {
        r[static_cast<std::size_t>(i)] = x[i + 1] * s;
    }
    return r;
}

/// Hyperbolic distance between two points of the Poincaré ball.
template <std::size_t N>
double poincare_dist(const std::array<double, N>& a, const std::array<double, N>& b) noexcept {
    double diff = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        diff += (a[i] - b[i]) * (a[i] - b[i]);
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return std::acosh(1.0 + 2.0 * diff / ((1.0 - na) * (1.0 - nb)));
}

/// Applies a spatial rotation (row-major D x D orthogonal matrix) fixing the base point.
template <int D>
MVec<D> rotate_about_base(const std::array<double, D * D>& rot, const MVec<D>& x) noexcept {
    MVec<D> r;
    r[0] = x[0];
    for (int i = 0; i < D; ++i) {
        double s = 0.0;
        for (int j = 0; j < D; ++j) {
            s += rot[static_cast<std::size_t>(i * D + j)] * x[j + 1];
        }
        r[i + 1] = s;
    }
    return r;
}

template <int D>
class GeodesicRay {
public:
    explicit GeodesicRay(const UnitTangent<D>& direction) : direction_(direction) {}

    const HPoint<D>& origin() const noexcept { return direction_.base(); }
    const UnitTangent<D>& direction() const noexcept { return direction_; }

    HPoint<D> at(double t) const { return exp_map(origin(), direction_, t); }

private:
    UnitTangent<D> direction_;
};

} // namespace hypervis
