#pragma once

// Reproducing-kernel norms ||K_z|| in H^{q(.)}, their growth as |z| -> 1, the
// phi-majorization behind the evaluation bound, and Forelli-Rudin integrals.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vexhardy/boundary_function.hpp"
#include "vexhardy/disk_hardy.hpp"
#include "vexhardy/error.hpp"
#include "vexhardy/exponent.hpp"
#include "vexhardy/fit.hpp"
#include "vexhardy/lp_variable.hpp"
#include "vexhardy/parallel.hpp"
#include "vexhardy/quadrature.hpp"

namespace vexhardy {

struct ScalingPoint {
    /// 1 - |z| (or 1 - rho)
    double distance = 0.0;
    double value = 0.0;
};

struct ScalingReport {
    std::vector<ScalingPoint> points;
    double fitted_slope = 0.0;
    double theoretical_slope = 0.0;
    double residual = 0.0;
    /// residual above 0.5
    bool unreliable = false;
    std::size_t grid_size = 0;

    // evaluation-bound experiments only
    std::optional<double> theta;
    std::optional<double> p_theta;
    /// p is constant around theta, so two-sided agreement is expected;
    /// otherwise only value <= upper_constant * distance^theoretical_slope is claimed
    bool plateau = false;
    /// max over points of value / distance^theoretical_slope
    double upper_constant = 0.0;
};

inline void fit_scaling(ScalingReport& rep) {
    std::vector<double> x, y;
    for (const auto& p : rep.points) {
        x.push_back(p.distance);
        y.push_back(p.value);
    }
    const auto f = fit_loglog(x, y);
    rep.fitted_slope = f.slope;
    rep.residual = f.residual;
    rep.unreliable = f.residual > 0.5;
    rep.upper_constant = 0.0;
    for (const auto& p : rep.points)
        rep.upper_constant = std::max(rep.upper_constant, p.value / std::pow(p.distance, rep.theoretical_slope));
}

/// Samples of K_z(r e^{it}) = 1 / (1 - conj(z) r e^{it}) on the uniform N-grid.
inline BoundaryFunction kernel_boundary_values(complex z, double r, std::size_t n) {
    if (!(std::abs(z) < 1.0)) throw DomainError("kernel point must lie in the open disk");
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("radius must lie in [0, 1)");
    const complex zc = std::conj(z);
    return BoundaryFunction::sample_circle([&](double t) { return 1.0 / (1.0 - zc * std::polar(r, t)); }, n);
}

/// Hardy norm of K_z under q; the rule is graded toward the kernel peak at arg z.
inline double kernel_hardy_norm(complex z, const VariableExponent& q, std::span<const double> radius_schedule,
                                const HardyOptions& opt = {}) {
    return hardy_norm(kernel_sampler(z), q, radius_schedule, opt).hardy_norm;
}

struct EvaluationBoundOptions {
    HardyOptions hardy;
    /// the radius schedule for z_k runs over r_j = 1 - 2^-j, j = 1..k + extra_levels
    int extra_levels = 10;
    double log_holder_ceiling = 5.0;
};

inline std::vector<int> default_k_range() { return {3, 4, 5, 6, 7, 8, 9, 10}; }

/// ||K_{z_k}|| in H^{q}, q the conjugate of p, at z_k = (1 - 2^-k) e^{i theta},
/// fitted against 1 - |z_k|. The expected slope is -1/p(theta).
inline ScalingReport evaluation_bound_experiment(const VariableExponent& p, double theta, std::span<const int> k_range,
                                                 const EvaluationBoundOptions& opt = {}) {
    if (p.domain() != DomainKind::circle) throw DomainError("evaluation bound needs a circle exponent");
    if (k_range.size() < 2) throw PreconditionError("k_range needs at least two entries");
    if (std::abs(p(theta + 1e-9) - p(theta - 1e-9)) > 1e-6) throw PreconditionError("theta must be a continuity point of p");
    if (!p.is_constant() && !log_holder_constant(p, 1024, {opt.log_holder_ceiling}).log_holder)
        throw PreconditionError("exponent fails the log-Holder check");
    const auto q = conjugate(p);

    ScalingReport rep;
    rep.grid_size = opt.hardy.grid_size;
    rep.theta = theta;
    rep.p_theta = p(theta);
    rep.theoretical_slope = -1.0 / p(theta);
    rep.plateau = true;
    for (double d : {1e-3, 1e-2, 0.05, 0.1})
        if (p(theta + d) != p(theta) || p(theta - d) != p(theta)) rep.plateau = false;

    rep.points.resize(k_range.size());
    HardyOptions inner = opt.hardy;
    inner.workers = 1;
    parallel_for(k_range.size(), opt.hardy.workers, [&](std::size_t i) {
        const int k = k_range[i];
        if (k < 1) throw PreconditionError("k_range entries must be >= 1");
        const double d = std::ldexp(1.0, -k);
        const auto radii = dyadic_radii(1, k + opt.extra_levels);
        rep.points[i] = {d, kernel_hardy_norm(std::polar(1.0 - d, theta), q, radii, inner)};
    });
    for (std::size_t i = 1; i < rep.points.size(); ++i)
        if (!(rep.points[i].distance < rep.points[i - 1].distance))
            throw PreconditionError("k_range must be strictly increasing");
    fit_scaling(rep);
    return rep;
}

struct PhiReport {
    complex z;
    double r = 0.0;
    std::size_t grid_size = 0;
    /// max over E2 = {phi > 1} of phi^{p(t)} / phi^{p(theta)}; 1 when E2 is empty
    double max_ratio = 1.0;
    std::size_t e2_nodes = 0;
    double c_log_estimate = 0.0;
    /// e^{C_log * kappa}
    double bound = 0.0;
    bool within_bound = true;
    /// integral over E1 of phi^{q(t)} (<= 2 pi since the integrand is <= 1)
    double e1_integral = 0.0;
    /// integral over E2 of phi^{q(t)}
    double e2_integral = 0.0;
    /// integral over E2 of phi^{q(theta)}
    double e2_fixed_integral = 0.0;
    /// integral over the circle of phi^{q(theta)}
    double fixed_integral = 0.0;
    /// max over E2 of phi^{q(t)} / phi^{q(theta)}
    double max_ratio_conjugate = 1.0;
};

inline constexpr double phi_kappa = 2.0;

/// phi(t) = (1-|z|)^{1/q(theta)} / |1 - |z| r e^{i(t - theta)}|, theta = arg z,
/// q the conjugate of p, on a rule graded toward theta.
inline PhiReport phi_majorization_check(const VariableExponent& p, complex z, double r, std::size_t n,
                                        double log_holder_ceiling = 5.0) {
    if (!(r > 0.5 && r < 1.0)) throw PreconditionError("phi majorization needs 1/2 < r < 1");
    if (!(std::abs(z) < 1.0)) throw DomainError("z must lie in the open disk");
    const auto reg = log_holder_constant(p, 1024, {log_holder_ceiling});
    if (!reg.log_holder) throw PreconditionError("exponent fails the log-Holder check");
    const auto q = conjugate(p);
    const double a = std::abs(z), theta = std::arg(z);
    const double rho = a * r;
    const double qt = q(theta), pt = p(theta);
    const double scale = std::pow(1.0 - a, 1.0 / qt);

    PhiReport rep;
    rep.z = z;
    rep.r = r;
    rep.grid_size = n;
    rep.c_log_estimate = reg.c_log_estimate;
    rep.bound = std::exp(reg.c_log_estimate * phi_kappa);

    const GradedFocus focus{theta, (1.0 - rho) / 8.0, false};
    const auto seams = p.breakpoints();
    const auto rule = graded_circle_rule(n, std::span(&focus, 1), seams);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double t = rule.nodes[i], w = rule.weights[i];
        const double phi = scale / std::abs(1.0 - std::polar(rho, t - theta));
        const double fixed = std::pow(phi, qt);
        const double var = std::pow(phi, q(t));
        rep.fixed_integral += w * fixed;
        if (phi <= 1.0) {
            rep.e1_integral += w * var;
        } else {
            ++rep.e2_nodes;
            rep.e2_integral += w * var;
            rep.e2_fixed_integral += w * fixed;
            rep.max_ratio = std::max(rep.max_ratio, std::pow(phi, p(t) - pt));
            rep.max_ratio_conjugate = std::max(rep.max_ratio_conjugate, var / fixed);
        }
    }
    rep.within_bound = rep.max_ratio <= rep.bound;
    return rep;
}

struct ForelliRudinReport {
    double s = 0.0;
    ScalingReport scaling;
    /// (1 - rho)^{s-1} I(rho) per schedule point
    std::vector<double> normalized;
    double band_min = 0.0;
    double band_max = 0.0;
};

/// I(rho) = integral over [0, 2pi] of |1 - rho e^{it}|^{-s} dt.
inline double forelli_rudin_integral(double s, double rho, std::size_t n = std::size_t{1} << 14) {
    if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("rho must lie in [0, 1)");
    const GradedFocus focus{0.0, (1.0 - rho) / 8.0, false};
    const auto rule = graded_circle_rule(n, std::span(&focus, 1));
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
        sum += rule.weights[i] * std::pow(std::abs(1.0 - std::polar(rho, rule.nodes[i])), -s);
    return sum;
}

inline ForelliRudinReport forelli_rudin_check(double s, std::span<const double> rho_schedule,
                                              std::size_t n = std::size_t{1} << 14) {
    if (!(s > 1.0)) throw PreconditionError("Forelli-Rudin estimate needs s > 1");
    if (rho_schedule.size() < 2) throw PreconditionError("rho schedule needs at least two entries");
    ForelliRudinReport rep;
    rep.s = s;
    rep.scaling.grid_size = n;
    rep.scaling.theoretical_slope = 1.0 - s;
    for (double rho : rho_schedule) {
        const double d = 1.0 - rho;
        if (!rep.scaling.points.empty() && !(d < rep.scaling.points.back().distance))
            throw PreconditionError("rho schedule must be strictly increasing");
        const double v = forelli_rudin_integral(s, rho, n);
        rep.scaling.points.push_back({d, v});
        rep.normalized.push_back(std::pow(d, s - 1.0) * v);
    }
    fit_scaling(rep.scaling);
    rep.band_min = *std::min_element(rep.normalized.begin(), rep.normalized.end());
    rep.band_max = *std::max_element(rep.normalized.begin(), rep.normalized.end());
    return rep;
}

}  // namespace vexhardy
