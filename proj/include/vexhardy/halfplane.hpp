#pragma once

// Harmonic Hardy spaces on the upper half-plane: Poisson convolution on
// uniform line grids, approximate identity, Hardy norms over horizontal lines,
// boundedness on H_k = {y >= k}, and boundary representation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vexhardy/boundary_function.hpp"
#include "vexhardy/disk_hardy.hpp"
#include "vexhardy/error.hpp"
#include "vexhardy/exponent.hpp"
#include "vexhardy/fourier.hpp"
#include "vexhardy/lp_variable.hpp"
#include "vexhardy/parallel.hpp"
#include "vexhardy/quadrature.hpp"

namespace vexhardy {

/// Line samples on a uniform grid with an optional power-decay tail model.
using LineFunction = BoundaryFunction;

/// P_y(x) = (1/pi) y / (x^2 + y^2).
inline double poisson_kernel_halfplane(double x, double y) {
    if (!(y > 0.0)) throw DomainError("half-plane Poisson kernel needs y > 0");
    return y / (pi * (x * x + y * y));
}

/// Integral of P_y over [a, b].
inline double poisson_kernel_mass(double a, double b, double y) {
    if (!(y > 0.0)) throw DomainError("half-plane Poisson kernel needs y > 0");
    const double den = y * y + a * b;
    if (den > 0.0) return std::atan((b - a) * y / den) / pi;
    return (std::atan(b / y) - std::atan(a / y)) / pi;
}

struct LineGrid {
    double x0 = 0.0;
    double h = 0.0;
    std::size_t n = 0;
};

/// Abscissae -T + j h, j = 0..2T/h.
inline LineFunction sample_line(const std::function<complex(double)>& fn, double half_width, double h,
                                std::optional<PowerTail> tail = std::nullopt) {
    if (!(half_width > 0.0) || !(h > 0.0)) throw InputError("line grid needs T > 0 and h > 0");
    const auto n = static_cast<std::size_t>(std::llround(2.0 * half_width / h)) + 1;
    std::vector<double> x(n);
    std::vector<complex> v(n);
    for (std::size_t j = 0; j < n; ++j) {
        x[j] = -half_width + h * static_cast<double>(j);
        v[j] = fn(x[j]);
    }
    return BoundaryFunction::line(std::move(x), std::move(v), tail);
}

/// Tail model whose amplitudes are the end values of the samples.
inline PowerTail end_value_tail(const LineFunction& u, double beta) {
    return {beta, std::abs(u.values().front()), std::abs(u.values().back())};
}

inline LineGrid uniform_line_grid(const LineFunction& u) {
    if (u.domain() != DomainKind::line) throw ContractError("expected a line function");
    const auto& x = u.nodes();
    if (x.size() < 2) throw ContractError("line grid needs at least two nodes");
    LineGrid g{x.front(), (x.back() - x.front()) / static_cast<double>(x.size() - 1), x.size()};
    for (std::size_t j = 0; j < x.size(); ++j)
        if (std::abs(x[j] - (g.x0 + g.h * static_cast<double>(j))) > 1e-9 * std::max(1.0, std::abs(x[j])))
            throw ContractError("Poisson convolution needs a uniform line grid");
    return g;
}

namespace detail {

/// Integral over [a, b] (offsets t - x) of P_y against the linear ramp that is
/// 0 at a and 1 at b (rising) or 1 at a and 0 at b.
inline double ramp_weight(double a, double b, double y, bool rising) {
    const double m0 = poisson_kernel_mass(a, b, y);
    const double m1 = y / two_pi * std::log1p((b - a) * (b + a) / (a * a + y * y));
    const double h = b - a;
    return rising ? (m1 - a * m0) / h : (b * m0 - m1) / h;
}

/// Integral over [X, inf) of P_y(x - t) A (t/X)^-beta dt, X > 0. Closed forms
/// for beta = 0 and for beta = 2 away from x + iy = 0, where the partial
/// fractions cancel; graded Gauss-Legendre panels otherwise.
inline double right_tail_integral(double x, double X, double y, double A, double beta) {
    if (A == 0.0) return 0.0;
    const double u = X - x;
    if (beta == 0.0) return A * (0.5 - std::atan(u / y) / pi);
    if (const double D = x * x + y * y; beta == 2.0 && X * X < 1e6 * D) {
        const double a = 2.0 * x / (D * D);
        const double rest = std::log(X) - 0.5 * std::log(u * u + y * y);
        const double arc = 0.5 * pi - std::atan(u / y);
        return A * X * X * y / pi * (1.0 / (D * X) - a * rest + (x * x - y * y) / (D * D * y) * arc);
    }
    double sum = 0.0;
    QuadratureRule rule;
    double lo = X, step = std::min(y, std::abs(u) + y) / 8.0;
    while (lo < 1e8 * X) {
        append_gauss_panel(rule, lo, lo + step);
        lo += step;
        step *= 2.0;
    }
    for (std::size_t i = 0; i < rule.size(); ++i)
        sum += rule.weights[i] * poisson_kernel_halfplane(x - rule.nodes[i], y) * A *
               std::pow(rule.nodes[i] / X, -beta);
    return sum;
}

}  // namespace detail

struct Convolution {
    LineFunction function;
    /// no tail model and the samples do not vanish at the grid ends
    bool truncation_uncertain = false;
};

/// P_y * u on the abscissae of u. u is integrated as its piecewise linear
/// interpolant against the exact kernel, plus the tail model beyond the grid;
/// the Toeplitz sum runs as a zero-padded FFT convolution. The tail sign
/// follows the end samples.
inline Convolution poisson_convolve(const LineFunction& u, double y) {
    if (!(y > 0.0)) throw DomainError("Poisson convolution needs y > 0");
    const auto g = uniform_line_grid(u);
    const std::size_t n = g.n;
    const double h = g.h;

    std::size_t L = 1;
    while (L < 2 * n - 1) L <<= 1;
    std::vector<complex> a(L), b(L);
    std::copy(u.values().begin(), u.values().end(), a.begin());
    for (std::size_t m = 0; m < n; ++m) {
        const double d = h * static_cast<double>(m);
        const double c = detail::ramp_weight(d - h, d, y, true) + detail::ramp_weight(d, d + h, y, false);
        b[m] = c;
        if (m > 0) b[L - m] = c;
    }
    detail::fft_inplace(a, FFTW_FORWARD);
    detail::fft_inplace(b, FFTW_FORWARD);
    for (std::size_t k = 0; k < L; ++k) a[k] *= b[k];
    detail::fft_inplace(a, FFTW_BACKWARD);

    const auto& uv = u.values();
    const double xl = u.nodes().front(), xr = u.nodes().back();
    const auto& tail = u.line_tail();
    if (tail && !(xl < 0.0 && xr > 0.0)) throw InputError("power tail needs a grid straddling 0");
    std::vector<complex> v(n);
    const double inv = 1.0 / static_cast<double>(L);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = u.nodes()[i];
        complex s = a[i] * inv;
        // the interpolant stops at the grid ends
        s -= uv.front() * detail::ramp_weight(xl - h - xi, xl - xi, y, true);
        s -= uv.back() * detail::ramp_weight(xr - xi, xr + h - xi, y, false);
        if (tail) {
            const double tr = detail::right_tail_integral(xi, xr, y, 1.0, tail->beta);
            const double tl = detail::right_tail_integral(-xi, -xl, y, 1.0, tail->beta);
            const auto phase = [](complex z) { return std::abs(z) > 0.0 ? z / std::abs(z) : complex(1.0); };
            s += tail->right_amplitude * tr * phase(uv.back()) + tail->left_amplitude * tl * phase(uv.front());
        }
        v[i] = s;
    }

    Convolution out;
    double peak = 0.0;
    for (const auto& x : uv) peak = std::max(peak, std::abs(x));
    out.truncation_uncertain = !tail && std::max(std::abs(uv.front()), std::abs(uv.back())) > 1e-8 * peak;
    const double beta = tail ? std::min(tail->beta, 2.0) : 2.0;
    out.function = BoundaryFunction::line(u.nodes(), std::move(v));
    out.function = BoundaryFunction::line(u.nodes(), out.function.values(), end_value_tail(out.function, beta));
    return out;
}

/// (P_y * u)(x) at a single point, by the same interpolant and tail model.
inline complex poisson_extension_at(const LineFunction& u, double x, double y) {
    if (!(y > 0.0)) throw DomainError("Poisson extension needs y > 0");
    const auto g = uniform_line_grid(u);
    const auto& uv = u.values();
    const auto& nodes = u.nodes();
    complex s = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
        const double d = nodes[j] - x;
        double w = 0.0;
        if (j > 0) w += detail::ramp_weight(d - g.h, d, y, true);
        if (j + 1 < g.n) w += detail::ramp_weight(d, d + g.h, y, false);
        s += w * uv[j];
    }
    if (const auto& tail = u.line_tail()) {
        const auto phase = [](complex z) { return std::abs(z) > 0.0 ? z / std::abs(z) : complex(1.0); };
        s += tail->right_amplitude * detail::right_tail_integral(x, nodes.back(), y, 1.0, tail->beta) *
             phase(uv.back());
        s += tail->left_amplitude * detail::right_tail_integral(-x, -nodes.front(), y, 1.0, tail->beta) *
             phase(uv.front());
    }
    return s;
}

/// exp(-1 / (1 - t^2)) on (-1, 1), zero outside.
inline double bump(double t) { return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0; }

struct LineOptions {
    double half_width = 64.0;
    double spacing = 1.0 / 1024.0;
};

inline LineFunction bump_line(const LineOptions& g = {}) {
    return sample_line([](double t) { return complex(bump(t)); }, g.half_width, g.spacing, PowerTail{2.0, 0.0, 0.0});
}

/// 1 / (1 + t^2) with its t^-2 tail.
inline LineFunction cauchy_line(const LineOptions& g = {}) {
    auto u = sample_line([](double t) { return complex(1.0 / (1.0 + t * t)); }, g.half_width, g.spacing);
    return BoundaryFunction::line(u.nodes(), u.values(), end_value_tail(u, 2.0));
}

inline std::vector<double> dyadic_heights(int kmin, int kmax) {
    std::vector<double> y;
    for (int k = kmin; k <= kmax; ++k) y.push_back(std::ldexp(1.0, -k));
    return y;
}

struct ApproximateIdentityOptions {
    /// configured C in sup_y ||P_y * u|| <= C ||u||
    double uniform_bound = 2.0;
    double log_holder_ceiling = 5.0;
    std::size_t regularity_grid = 1024;
    std::size_t workers = 1;
};

struct ApproximateIdentityReport {
    std::vector<std::pair<double, double>> deficits;  // (y, ||P_y * u - u||)
    double u_norm = 0.0;
    double max_ratio = 0.0;
    double uniform_bound = 0.0;
    bool uniformly_bounded = true;
    bool strictly_decreasing = true;
    bool truncation_uncertain = false;
    double c_log_estimate = 0.0;
    std::optional<double> c_infinity_estimate;
};

inline std::vector<double> default_height_schedule() { return dyadic_heights(1, 10); }

/// ||P_y * u - u|| and ||P_y * u|| / ||u|| along a schedule of heights.
inline ApproximateIdentityReport approximate_identity_check(const LineFunction& u, const VariableExponent& p,
                                                            std::span<const double> y_schedule,
                                                            const ApproximateIdentityOptions& opt = {}) {
    if (p.domain() != DomainKind::line) throw DomainError("approximate identity needs a line exponent");
    const auto reg = log_holder_constant(p, opt.regularity_grid, {opt.log_holder_ceiling});
    if (!reg.log_holder || (!p.is_constant() && !p.p_infinity()))
        throw PreconditionError("exponent is not in the class LH");
    ApproximateIdentityReport rep;
    rep.c_log_estimate = reg.c_log_estimate;
    rep.c_infinity_estimate = reg.c_infinity_estimate;
    rep.uniform_bound = opt.uniform_bound;
    rep.u_norm = luxemburg_norm(u, p).value;

    const std::size_t n = y_schedule.size();
    std::vector<double> deficit(n), ratio(n);
    std::vector<char> uncertain(n);
    parallel_for(n, opt.workers, [&](std::size_t i) {
        const auto conv = poisson_convolve(u, y_schedule[i]);
        uncertain[i] = conv.truncation_uncertain;
        std::vector<complex> diff(u.size());
        for (std::size_t j = 0; j < u.size(); ++j) diff[j] = conv.function.values()[j] - u.values()[j];
        auto d = BoundaryFunction::line(u.nodes(), std::move(diff));
        d = BoundaryFunction::line(d.nodes(), d.values(), end_value_tail(d, 2.0));
        deficit[i] = luxemburg_norm(d, p).value;
        ratio[i] = rep.u_norm > 0.0 ? luxemburg_norm(conv.function, p).value / rep.u_norm : 0.0;
    });
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && !(deficit[i] < deficit[i - 1])) rep.strictly_decreasing = false;
        rep.deficits.emplace_back(y_schedule[i], deficit[i]);
        rep.max_ratio = std::max(rep.max_ratio, ratio[i]);
        if (uncertain[i]) rep.truncation_uncertain = true;
    }
    if (rep.u_norm == 0.0) rep.strictly_decreasing = false;
    rep.uniformly_bounded = rep.max_ratio <= opt.uniform_bound;
    return rep;
}

/// Function on the open upper half-plane. decay_beta is the exponent in
/// |U(x + iy)| <= C (1 + |x|)^-beta on each line; line, when set, produces a
/// whole line U_y at once (Poisson extensions use the FFT convolution).
struct HalfplaneSampler {
    std::string name;
    std::function<complex(double, double)> evaluator;
    FunctionKind kind = FunctionKind::harmonic;
    double decay_beta = 2.0;
    std::function<LineFunction(double)> line;

    complex operator()(double x, double y) const { return evaluator(x, y); }
};

inline HalfplaneSampler constant_halfplane(complex c) {
    return {"constant", [c](double, double) { return c; }, FunctionKind::analytic, 0.0, {}};
}

/// Im 1/(z + i) = -(y + 1) / (x^2 + (y + 1)^2).
inline HalfplaneSampler inverse_shift_halfplane() {
    return {"im-inverse-shift",
            [](double x, double y) { return complex(-(y + 1.0) / (x * x + (y + 1.0) * (y + 1.0))); },
            FunctionKind::harmonic, 2.0, {}};
}

/// (1 + y) / (x^2 + (1 + y)^2), the extension of 1 / (1 + t^2).
inline HalfplaneSampler cauchy_halfplane() {
    return {"cauchy", [](double x, double y) { return complex((1.0 + y) / (x * x + (1.0 + y) * (1.0 + y))); },
            FunctionKind::harmonic, 2.0, {}};
}

inline HalfplaneSampler poisson_extension_halfplane(LineFunction u) {
    const double beta = u.line_tail() ? std::min(u.line_tail()->beta, 2.0) : 2.0;
    auto shared = std::make_shared<const LineFunction>(std::move(u));
    return {"poisson-extension", [shared](double x, double y) { return poisson_extension_at(*shared, x, y); },
            FunctionKind::harmonic, beta, [shared](double y) { return poisson_convolve(*shared, y).function; }};
}

inline HalfplaneSampler scaled(const HalfplaneSampler& s, complex c) {
    HalfplaneSampler out = s;
    out.evaluator = [f = s.evaluator, c](double x, double y) { return c * f(x, y); };
    if (s.line) out.line = [f = s.line, c](double y) { return f(y).scaled(c); };
    return out;
}

/// y = 2^k for k = 4 down to -10: far lines first, then toward the boundary.
inline std::vector<double> default_halfplane_schedule() {
    std::vector<double> y;
    for (int k = 4; k >= -10; --k) y.push_back(std::ldexp(1.0, k));
    return y;
}

struct HalfplaneHardyOptions {
    LineOptions grid;
    std::size_t workers = 1;
    MembershipRules rules;
    LuxemburgOptions luxemburg;
};

inline LineFunction sample_height(const HalfplaneSampler& s, double y, const LineOptions& g) {
    if (s.line) return s.line(y);
    auto u = sample_line([&](double x) { return s(x, y); }, g.half_width, g.spacing);
    return BoundaryFunction::line(u.nodes(), u.values(), end_value_tail(u, s.decay_beta));
}

/// sup over the schedule of ||U_y||_p, with the disk membership rules applied
/// as y decreases toward the boundary.
inline HardyReport halfplane_hardy_norm(const HalfplaneSampler& s, const VariableExponent& p,
                                        std::span<const double> y_schedule, const HalfplaneHardyOptions& opt = {}) {
    if (p.domain() != DomainKind::line) throw DomainError("half-plane Hardy norm needs a line exponent");
    std::vector<double> ys(y_schedule.begin(), y_schedule.end());
    for (double y : ys)
        if (!(y > 0.0)) throw DomainError("heights must be positive");
    std::sort(ys.begin(), ys.end(), std::greater<>());
    HardyReport rep;
    rep.norms_by_radius.resize(ys.size());
    parallel_for(ys.size(), opt.workers, [&](std::size_t i) {
        const auto line = sample_height(s, ys[i], opt.grid);
        auto& out = rep.norms_by_radius[i];
        out.parameter = ys[i];
        out.abscissa = ys[i];
        out.modular = Modular(line, p)(1.0);
        out.norm = luxemburg_norm(line, p, opt.luxemburg);
    });
    classify(rep, opt.rules);
    return rep;
}

struct HkProbe {
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
    double bound = 0.0;
};

struct HkReport {
    double k = 0.0;
    /// radius of the mean-value disks, k/2
    double R = 0.0;
    /// sup over the schedule of ||U_y||_p
    double hardy_norm = 0.0;
    std::vector<HkProbe> probes;
    double sup_observed = 0.0;
    double sup_bound = 0.0;
    bool holds = true;
};

/// Mean value over the disk of radius R = k/2 about z0 = a + ib, b >= k, then
/// Holder on each horizontal chord:
///   |U(z0)| <= (2 K / (pi R)) M ||chi_(a-R, a+R)||_q,
/// with K the Holder constant, M = sup_y ||U_y||_p and q the conjugate of p.
inline HkReport hk_bound_check(const HalfplaneSampler& s, const VariableExponent& p, double k,
                               std::span<const std::pair<double, double>> probe, std::span<const double> y_schedule,
                               const HalfplaneHardyOptions& opt = {}) {
    if (!(k > 0.0)) throw PreconditionError("H_k needs k > 0");
    const auto q = conjugate(p);
    HkReport rep;
    rep.k = k;
    rep.R = 0.5 * k;
    const auto hardy = halfplane_hardy_norm(s, p, y_schedule, opt);
    if (hardy.hardy_norm_infinite) throw PreconditionError("sampler is not in the Hardy space");
    rep.hardy_norm = hardy.hardy_norm;
    for (const auto& [x, y] : probe) {
        if (!(y >= k)) throw PreconditionError("probe points must lie in H_k");
        HkProbe pr{x, y, std::abs(s(x, y)), 0.0};
        pr.bound = 2.0 * holder_constant / (pi * rep.R) * rep.hardy_norm * indicator_norm(x, rep.R, q);
        rep.sup_observed = std::max(rep.sup_observed, pr.value);
        rep.sup_bound = std::max(rep.sup_bound, pr.bound);
        if (!(pr.value <= pr.bound)) rep.holds = false;
        rep.probes.push_back(pr);
    }
    return rep;
}

struct RepresentationReport {
    /// max over probes of |U(x + iy) - (P_y * u)(x)|
    double residual = 0.0;
    double sup_norm = 0.0;
    double boundary_norm = 0.0;
    /// sup_y ||U_y|| / ||u||
    double ratio = 0.0;
};

inline RepresentationReport boundary_representation_check(const HalfplaneSampler& s, const LineFunction& u,
                                                          const VariableExponent& p, std::span<const double> probe_x,
                                                          std::span<const double> probe_y,
                                                          std::span<const double> y_schedule,
                                                          const HalfplaneHardyOptions& opt = {}) {
    const auto g = uniform_line_grid(u);
    RepresentationReport rep;
    for (double y : probe_y) {
        const auto conv = poisson_convolve(u, y).function;
        for (double x : probe_x) {
            const double pos = (x - g.x0) / g.h;
            if (!(pos >= 0.0 && pos <= static_cast<double>(g.n - 1)))
                throw PreconditionError("probe abscissa outside the boundary grid");
            const auto j = std::min(static_cast<std::size_t>(pos), g.n - 2);
            const double t = pos - static_cast<double>(j);
            const complex pu = (1.0 - t) * conv.values()[j] + t * conv.values()[j + 1];
            rep.residual = std::max(rep.residual, std::abs(s(x, y) - pu));
        }
    }
    rep.sup_norm = halfplane_hardy_norm(s, p, y_schedule, opt).hardy_norm;
    rep.boundary_norm = luxemburg_norm(u, p).value;
    rep.ratio = rep.boundary_norm > 0.0 ? rep.sup_norm / rep.boundary_norm : 0.0;
    return rep;
}

}  // namespace vexhardy
