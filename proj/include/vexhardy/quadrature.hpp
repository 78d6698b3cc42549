#pragma once

// Quadrature rules used by the modular: periodic trapezoid on the uniform
// circle grid, trapezoid on line grids, and composite Gauss-Legendre panels
// graded geometrically toward focus points (singularities, or peaks of width
// comparable to the distance to a nearby pole).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "vexhardy/error.hpp"
#include "vexhardy/exponent.hpp"

namespace vexhardy {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
    double total_weight() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }
};

inline constexpr std::size_t gauss_order = 16;

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
inline const std::array<std::pair<double, double>, gauss_order>& gauss_legendre_reference() {
    static const auto table = [] {
        using gauss = boost::math::quadrature::gauss<double, gauss_order>;
        const auto& x = gauss::abscissa();
        const auto& w = gauss::weights();
        std::array<std::pair<double, double>, gauss_order> t{};
        const std::size_t half = gauss_order / 2;
        for (std::size_t i = 0; i < half; ++i) {
            t[half - 1 - i] = {-x[i], w[i]};
            t[half + i] = {x[i], w[i]};
        }
        return t;
    }();
    return table;
}

inline void append_gauss_panel(QuadratureRule& rule, double a, double b) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (const auto& [x, w] : gauss_legendre_reference()) {
        rule.nodes.push_back(mid + half * x);
        rule.weights.push_back(half * w);
    }
}

/// Nodes 2 pi j / n with equal weights 2 pi / n (d-theta measure).
inline QuadratureRule periodic_trapezoid(std::size_t n) {
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.assign(n, two_pi / static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) r.nodes[j] = two_pi * static_cast<double>(j) / static_cast<double>(n);
    return r;
}

inline QuadratureRule line_trapezoid(std::span<const double> x) {
    if (x.size() < 2) throw InputError("line grid needs at least two abscissae");
    QuadratureRule r;
    r.nodes.assign(x.begin(), x.end());
    r.weights.assign(x.size(), 0.0);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double h = x[i + 1] - x[i];
        if (!(h > 0.0)) throw InputError("line grid must be strictly increasing");
        r.weights[i] += 0.5 * h;
        r.weights[i + 1] += 0.5 * h;
    }
    return r;
}

/// Composite Gauss-Legendre rule on consecutive breakpoints.
inline QuadratureRule gauss_panels(std::span<const double> breakpoints) {
    QuadratureRule r;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] > breakpoints[i]) append_gauss_panel(r, breakpoints[i], breakpoints[i + 1]);
    }
    return r;
}

/// Breakpoints for [a, b] with panels no wider than max_width and with the
/// given extra points inserted.
inline std::vector<double> panel_breakpoints(double a, double b, double max_width,
                                             std::span<const double> extra = {}) {
    std::vector<double> bp{a, b};
    for (double e : extra)
        if (e > a && e < b) bp.push_back(e);
    std::sort(bp.begin(), bp.end());
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        const double len = bp[i + 1] - bp[i];
        const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(len / max_width)));
        for (std::size_t k = 0; k < m; ++k) out.push_back(bp[i] + len * static_cast<double>(k) / static_cast<double>(m));
    }
    out.push_back(b);
    return out;
}

/// A point on the circle toward which the rule is graded.
struct GradedFocus {
    double angle = 0.0;
    /// rings stop once they reach this distance from the focus
    double inner_radius = 0.0;
    /// leave [angle - inner_radius, angle + inner_radius] uncovered (handled analytically)
    bool exclude_core = false;
};

inline double circular_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), two_pi);
    return std::min(d, two_pi - d);
}

inline double wrap_angle(double t) {
    t = std::fmod(t, two_pi);
    if (t < 0.0) t += two_pi;
    return t;
}

/// Composite 16-point Gauss-Legendre rule on [0, 2pi) with about base_nodes
/// nodes in uniform panels, plus rings of ratio 1/2 around each focus from
/// eight base panel widths down to its inner radius. extra_breakpoints (for
/// example, exponent seams) are inserted as panel edges.
inline QuadratureRule graded_circle_rule(std::size_t base_nodes, std::span<const GradedFocus> foci,
                                         std::span<const double> extra_breakpoints = {}) {
    const std::size_t panels = std::max<std::size_t>(8, base_nodes / gauss_order);
    const double width = two_pi / static_cast<double>(panels);
    const double outer = std::min(8.0 * width, pi / 2.0);

    std::vector<double> bp;
    for (std::size_t k = 0; k <= panels; ++k) {
        const double t = width * static_cast<double>(k);
        bool inside = false;
        for (const auto& f : foci)
            if (circular_distance(t, f.angle) < outer) inside = true;
        if (!inside) bp.push_back(std::min(t, two_pi));
    }
    for (const auto& f : foci) {
        const double inner = std::max(f.inner_radius, 1e-14);
        for (double d = outer; d > inner; d *= 0.5) {
            bp.push_back(wrap_angle(f.angle + d));
            bp.push_back(wrap_angle(f.angle - d));
        }
        bp.push_back(wrap_angle(f.angle + inner));
        bp.push_back(wrap_angle(f.angle - inner));
        if (!f.exclude_core) bp.push_back(wrap_angle(f.angle));
    }
    for (double e : extra_breakpoints) bp.push_back(wrap_angle(e));
    bp.push_back(0.0);
    bp.push_back(two_pi);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end(), [](double x, double y) { return std::abs(x - y) < 1e-15; }),
             bp.end());

    QuadratureRule r;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        const double a = bp[i], b = bp[i + 1];
        const double mid = 0.5 * (a + b);
        bool skip = false;
        for (const auto& f : foci)
            if (f.exclude_core && circular_distance(mid, f.angle) < f.inner_radius) skip = true;
        if (!skip) append_gauss_panel(r, a, b);
    }
    return r;
}

}  // namespace vexhardy
