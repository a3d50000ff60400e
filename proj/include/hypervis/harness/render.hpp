#pragma once

// Poincare-disk SVG drawings of planar realizations.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "hypervis/errors.hpp"
#include "hypervis/hypgeom.hpp"
#include "hypervis/procsim.hpp"

namespace hypervis::harness {

struct EuclideanCircle {
    double cx = 0.0;
    double cy = 0.0;
    double r = 0.0;
};

/// Image of a hyperbolic disc. The radial geodesic through p and the center
/// is a diameter of the image, so the image circle is fixed by where it
/// crosses that diameter.
inline EuclideanCircle poincare_circle(const BallGrain<2>& g) {
    const double rho = dist(HPoint<2>(), g.center);
    double ux = 1.0, uy = 0.0;
    const double n = std::hypot(g.center[1], g.center[2]);
    if (n > 0.0) {
        ux = g.center[1] / n;
        uy = g.center[2] / n;
    }
    const double near = std::tanh(0.5 * (rho - g.radius));
    const double far = std::tanh(0.5 * (rho + g.radius));
    const double mid = 0.5 * (near + far);
    return {mid * ux, mid * uy, 0.5 * (far - near)};
}

/// Geodesic image of a line: either a diameter or an arc of a circle
/// orthogonal to the unit circle, from (x1, y1) to (x2, y2).
struct PoincareGeodesic {
    double x1, y1, x2, y2;
    /// 0 for a straight diameter.
    double arc_radius = 0.0;
    int sweep = 0;
};

inline PoincareGeodesic poincare_geodesic(const Hyperplane<2>& h) {
    const auto& nv = h.normal;
    const double ns = std::hypot(nv[1], nv[2]);
    // n = sinh x p + cosh x v: the closest point of the line to p sits at
    // signed distance x along the spatial direction v of the normal.
    const double vx = nv[1] / ns, vy = nv[2] / ns;
    if (nv[0] == 0.0) {
        return {-vy, vx, vy, -vx, 0.0, 0};
    }
    const double x = std::asinh(nv[0]);
    const double delta = std::tanh(0.5 * std::abs(x));
    const double s = x > 0.0 ? 1.0 : -1.0;
    const double mx = s * vx, my = s * vy;
    const double c = (1.0 + delta * delta) / (2.0 * delta);
    const double rad = (1.0 - delta * delta) / (2.0 * delta);
    const double cos_phi = 1.0 / c, sin_phi = std::sqrt(std::max(0.0, 1.0 - cos_phi * cos_phi));
    const double ax = mx * cos_phi - my * sin_phi, ay = mx * sin_phi + my * cos_phi;
    const double bx = mx * cos_phi + my * sin_phi, by = -mx * sin_phi + my * cos_phi;
    // Sweep so that the arc bends towards the origin (the arc center is c * m).
    const double qx = c * mx, qy = c * my;
    const double cross = (ax - qx) * (delta * my - qy) - (ay - qy) * (delta * mx - qx);
    return {ax, ay, bx, by, rad, cross > 0.0 ? 1 : 0};
}

namespace detail {

inline std::string svg_header() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.05 -1.05 2.1 2.1\" width=\"800\" height=\"800\">\n"
           "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>\n";
}

inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw FileError("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw FileError("write to '" + path + "' failed");
    }
}

} // namespace detail

/// Grains meeting B(p, view_radius) as translucent discs; overlaps darken.
inline std::string svg_string(const BooleanModelSample<2>& model, double view_radius) {
    std::string s = detail::svg_header();
    const HPoint<2> base;
    for (const auto& g : model.grains) {
        if (dist(base, g.center) - g.radius >= view_radius) {
            continue;
        }
        const auto c = poincare_circle(g);
        s += "<circle cx=\"" + detail::fmt(c.cx) + "\" cy=\"" + detail::fmt(c.cy) + "\" r=\"" + detail::fmt(c.r) +
             "\" fill=\"black\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
    }
    return s + "</svg>\n";
}

/// Hyperplanes meeting B(p, view_radius) as geodesic arcs.
inline std::string svg_string(const HyperplaneSample<2>& model, double view_radius) {
    std::string s = detail::svg_header();
    for (const auto& h : model.planes) {
        if (h.offset() >= view_radius) {
            continue;
        }
        const auto g = poincare_geodesic(h);
        s += "<path d=\"M " + detail::fmt(g.x1) + " " + detail::fmt(g.y1);
        if (g.arc_radius == 0.0) {
            s += " L ";
        } else {
            s += " A " + detail::fmt(g.arc_radius) + " " + detail::fmt(g.arc_radius) + " 0 0 " +
                 std::to_string(g.sweep) + " ";
        }
        s += detail::fmt(g.x2) + " " + detail::fmt(g.y2) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>\n";
    }
    return s + "</svg>\n";
}

template <class Model>
void render_svg(const Model& model, const std::string& out_path, double view_radius) {
    detail::write_file(out_path, svg_string(model, view_radius));
}

} // namespace hypervis::harness
