#pragma once

// Hardy spaces on the unit disk with variable exponent: Poisson kernel and
// dilations, the Szego projection, Hardy norms sup_r ||f_r||, and the
// membership experiments built on them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vexhardy/boundary_function.hpp"
#include "vexhardy/corpus.hpp"
#include "vexhardy/error.hpp"
#include "vexhardy/exponent.hpp"
#include "vexhardy/fit.hpp"
#include "vexhardy/fourier.hpp"
#include "vexhardy/lp_variable.hpp"
#include "vexhardy/parallel.hpp"
#include "vexhardy/quadrature.hpp"

namespace vexhardy {

enum class FunctionKind { harmonic, analytic };

inline std::string_view to_string(FunctionKind k) { return k == FunctionKind::analytic ? "analytic" : "harmonic"; }

/// |f(z)| behaves like constant * |z - zeta0|^(-alpha) near the pole
/// pole_radius * exp(i angle). pole_radius == 1 is a boundary singularity;
/// pole_radius > 1 marks a bounded function that peaks near that direction.
struct Singularity {
    double angle = 0.0;
    double alpha = 0.0;
    double pole_radius = 1.0;
    double constant = 1.0;
};

/// Black-box function on the disk. Evaluators must accept |z| <= 1 away from
/// a declared boundary singularity (the boundary trace is used by the
/// reproducing formula and by boundary checks).
struct DiskSampler {
    std::string name;
    std::function<complex(complex)> evaluator;
    FunctionKind kind = FunctionKind::harmonic;
    std::optional<Singularity> singularity;

    complex operator()(complex z) const { return evaluator(z); }
};

inline DiskSampler constant_sampler(complex c) {
    return {"constant", [c](complex) { return c; }, FunctionKind::analytic, std::nullopt};
}

/// sum_k coeffs[k] z^k
inline DiskSampler polynomial_sampler(std::vector<complex> coeffs) {
    return {"polynomial",
            [coeffs = std::move(coeffs)](complex z) {
                complex s = 0.0;
                for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * z + *it;
                return s;
            },
            FunctionKind::analytic, std::nullopt};
}

/// (1 - z exp(-i angle))^(-s), principal branch: real and positive on the
/// radius toward -exp(i angle). angle = 0 gives (1 - z)^(-s), angle = pi
/// gives (1 + z)^(-s).
inline DiskSampler power_sampler(double angle, double s) {
    const complex rot = std::polar(1.0, -angle);
    return {"power",
            [rot, s](complex z) { return std::pow(1.0 - z * rot, -s); },
            FunctionKind::analytic, Singularity{angle, s, 1.0, 1.0}};
}

/// Reproducing kernel K_z(w) = 1 / (1 - conj(z) w).
inline DiskSampler kernel_sampler(complex z) {
    if (!(std::abs(z) < 1.0)) throw DomainError("kernel point must lie in the open disk");
    DiskSampler s{"kernel", [zc = std::conj(z)](complex w) { return 1.0 / (1.0 - zc * w); },
                  FunctionKind::analytic, std::nullopt};
    if (std::abs(z) > 0.0) s.singularity = Singularity{std::arg(z), 1.0, 1.0 / std::abs(z), 1.0};
    return s;
}

/// Harmonic extension sum_k c_k r^|k| e^{ik theta} of uniform circle data.
inline DiskSampler poisson_extension_sampler(const BoundaryFunction& u) {
    const auto c = fourier_coefficients(u);
    std::vector<std::pair<long, complex>> terms;
    for (long k = c.min_index(); k <= c.max_index(); ++k)
        if (std::abs(c[k]) > 1e-15) terms.emplace_back(k, c[k]);
    bool analytic = true;
    for (const auto& [k, v] : terms)
        if (k < 0) analytic = false;
    return {"poisson-extension",
            [terms = std::move(terms)](complex z) {
                const double r = std::abs(z), t = std::arg(z);
                complex s = 0.0;
                for (const auto& [k, v] : terms)
                    s += v * std::pow(r, static_cast<double>(std::abs(k))) * std::polar(1.0, static_cast<double>(k) * t);
                return s;
            },
            analytic ? FunctionKind::analytic : FunctionKind::harmonic, std::nullopt};
}

/// max over 8 points of |z| = 1/2 of |f_y - i f_x| (central differences).
inline double cauchy_riemann_residual(const DiskSampler& s, double h = 1e-4) {
    double worst = 0.0;
    for (int j = 0; j < 8; ++j) {
        const complex z = std::polar(0.5, two_pi * j / 8.0);
        const complex fx = (s(z + h) - s(z - h)) / (2.0 * h);
        const complex fy = (s(z + complex(0, h)) - s(z - complex(0, h))) / (2.0 * h);
        worst = std::max(worst, std::abs(fy - complex(0, 1) * fx));
    }
    return worst;
}

/// Five-point Laplacian (f(z+h)+f(z-h)+f(z+ih)+f(z-ih)-4f(z))/h^2.
template <class F>
complex discrete_laplacian(const F& f, complex z, double h) {
    const complex ih(0.0, h);
    return (f(z + h) + f(z - h) + f(z + ih) + f(z - ih) - 4.0 * f(z)) / (h * h);
}

/// P(z, zeta) = (1 - |z|^2) / |z - zeta|^2; integrates to 1 against dm = d-theta/2pi.
inline double poisson_kernel(complex z, complex zeta) {
    if (!(std::abs(z) < 1.0)) throw DomainError("Poisson kernel needs |z| < 1");
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw DomainError("Poisson kernel needs |zeta| = 1");
    return (1.0 - std::norm(z)) / std::norm(z - zeta);
}

/// P_r f as the Fourier multiplier c_k -> r^|k| c_k.
inline BoundaryFunction poisson_dilate(const BoundaryFunction& f, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("dilation radius must lie in [0, 1)");
    auto c = fourier_coefficients(f);
    for (long k = c.min_index(); k <= c.max_index(); ++k) c[k] *= std::pow(r, static_cast<double>(std::abs(k)));
    return synthesize(c);
}

/// Keeps the coefficients with k >= 0: boundary values of the Szego transform.
inline BoundaryFunction szego_project(const BoundaryFunction& f) {
    auto c = fourier_coefficients(f);
    for (long k = c.min_index(); k < 0; ++k) c[k] = 0.0;
    return synthesize(c);
}

/// r_k = 1 - 2^-k, k = kmin..kmax.
inline std::vector<double> dyadic_radii(int kmin, int kmax) {
    std::vector<double> r;
    for (int k = kmin; k <= kmax; ++k) r.push_back(1.0 - std::ldexp(1.0, -k));
    return r;
}

inline std::vector<double> default_radius_schedule() { return dyadic_radii(1, 12); }

/// Samples f_r(theta) = f(r e^{i theta}). Without a declared singularity this
/// is the uniform grid of n points; with one, a graded Gauss-Legendre rule of
/// about n base nodes refined toward the singular direction down to an
/// eighth of the distance to the pole. r = 1 samples the boundary trace,
/// leaving a tiny core around a boundary singularity to the analytic tail.
inline BoundaryFunction sample_dilation(const DiskSampler& s, double r, std::size_t n,
                                        std::span<const double> seams = {}) {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("sampling radius must lie in [0, 1]");
    if (!s.singularity || r == 0.0) {
        return BoundaryFunction::sample_circle([&](double t) { return s(std::polar(r, t)); }, n);
    }
    const auto& sg = *s.singularity;
    const double gap = sg.pole_radius - r;
    std::vector<SingularTail> tails;
    GradedFocus focus{sg.angle, gap / 8.0, false};
    if (gap <= 0.0) {
        constexpr double core = 1e-10;
        focus = GradedFocus{sg.angle, core, true};
        tails.push_back(SingularTail{sg.angle, sg.alpha, sg.constant, core});
    }
    auto rule = graded_circle_rule(n, std::span(&focus, 1), seams);
    std::vector<complex> v(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) v[i] = s(std::polar(r, rule.nodes[i]));
    return BoundaryFunction::on_rule(DomainKind::circle, std::move(rule), std::move(v), {sg.angle},
                                     std::move(tails));
}

enum class Verdict { member, non_member, inconclusive };

inline std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::member: return "member";
    case Verdict::non_member: return "non-member";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

struct MembershipRules {
    /// last three norms within this relative spread => bounded
    double bounded_tolerance = 0.05;
    /// fitted growth exponent at or below this => divergent
    double growth_threshold = -0.05;
    double residual_limit = 0.2;
};

/// One dilation (disk: radius r, abscissa 1 - r) or one line (half-plane: height y).
struct ScheduleNorm {
    double parameter = 0.0;
    double abscissa = 0.0;
    NormResult norm;
    /// rho(f_r) at lambda = 1
    double modular = 0.0;
};

struct HardyReport {
    std::vector<ScheduleNorm> norms_by_radius;
    double hardy_norm = 0.0;
    bool hardy_norm_infinite = false;
    Verdict verdict = Verdict::inconclusive;
    /// log ||f_r|| against log(1 - r) over the second half of the schedule
    std::optional<LogLogFit> growth;
    /// log rho(f_r) against log(1 - r), same window
    std::optional<LogLogFit> modular_growth;

    bool member() const noexcept { return verdict == Verdict::member; }
};

/// Fills the sup, the growth fits and the verdict of a report whose
/// norms_by_radius is ordered so that the abscissa decreases toward the
/// boundary (1 - r -> 0, or y -> 0).
inline void classify(HardyReport& rep, const MembershipRules& rules) {
    const auto& pts = rep.norms_by_radius;
    rep.hardy_norm = 0.0;
    rep.hardy_norm_infinite = false;
    for (const auto& p : pts) {
        if (p.norm.infinite)
            rep.hardy_norm_infinite = true;
        else
            rep.hardy_norm = std::max(rep.hardy_norm, p.norm.value);
    }
    if (rep.hardy_norm_infinite) {
        rep.verdict = Verdict::non_member;
        return;
    }
    const std::size_t n = pts.size();
    if (n == 0) {
        rep.verdict = Verdict::inconclusive;
        return;
    }
    if (rep.hardy_norm == 0.0) {
        rep.verdict = Verdict::member;
        return;
    }

    const std::size_t window = std::min(n, std::max<std::size_t>(3, (n + 1) / 2));
    std::vector<double> x, y, m;
    for (std::size_t i = n - window; i < n; ++i) {
        if (pts[i].abscissa > 0.0 && pts[i].norm.value > 0.0) {
            x.push_back(pts[i].abscissa);
            y.push_back(pts[i].norm.value);
            if (pts[i].modular > 0.0) m.push_back(pts[i].modular);
        }
    }
    if (x.size() >= 2) {
        rep.growth = fit_loglog(x, y);
        if (m.size() == x.size()) rep.modular_growth = fit_loglog(x, m);
    }
    if (rep.growth && rep.growth->slope <= rules.growth_threshold && rep.growth->residual < rules.residual_limit) {
        rep.verdict = Verdict::non_member;
        return;
    }
    if (n >= 3) {
        const double a = pts[n - 3].norm.value, b = pts[n - 2].norm.value, c = pts[n - 1].norm.value;
        const double lo = std::min({a, b, c}), hi = std::max({a, b, c});
        const bool decreasing = b <= a && c <= b;
        if (decreasing || (lo > 0.0 && hi / lo - 1.0 <= rules.bounded_tolerance)) {
            rep.verdict = Verdict::member;
            return;
        }
    }
    rep.verdict = Verdict::inconclusive;
}

struct HardyOptions {
    std::size_t grid_size = std::size_t{1} << 14;
    std::size_t workers = 1;
    MembershipRules rules;
    LuxemburgOptions luxemburg;
};

/// sup over the radius schedule of ||f_r||_p, with a membership verdict.
/// The schedule maximum stands in for the sup over all r < 1.
inline HardyReport hardy_norm(const DiskSampler& s, const VariableExponent& p, std::span<const double> radius_schedule,
                              const HardyOptions& opt = {}) {
    if (p.domain() != DomainKind::circle) throw DomainError("disk Hardy norm needs a circle exponent");
    std::vector<double> radii(radius_schedule.begin(), radius_schedule.end());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] >= 0.0 && radii[i] < 1.0)) throw DomainError("radius schedule must lie in [0, 1)");
        if (i > 0 && !(radii[i] > radii[i - 1])) throw PreconditionError("radius schedule must be increasing");
    }
    const auto seams = p.breakpoints();
    HardyReport rep;
    rep.norms_by_radius.resize(radii.size());
    parallel_for(radii.size(), opt.workers, [&](std::size_t i) {
        const auto fr = sample_dilation(s, radii[i], opt.grid_size, seams);
        const Modular rho(fr, p);
        auto& out = rep.norms_by_radius[i];
        out.parameter = radii[i];
        out.abscissa = 1.0 - radii[i];
        out.modular = rho(1.0);
        out.norm = luxemburg_norm(fr, p, opt.luxemburg);
    });
    classify(rep, opt.rules);
    return rep;
}

struct PoissonCheckOptions {
    /// configured C in sup_r ||P_r f|| <= C ||f||
    double uniform_bound = 2.0;
    double log_holder_ceiling = 5.0;
    std::size_t regularity_grid = 1024;
};

struct PoissonConvergenceReport {
    std::vector<std::pair<double, double>> deficits;  // (r, ||f - P_r f||)
    double f_norm = 0.0;
    /// max over r of ||P_r f|| / ||f||
    double max_ratio = 0.0;
    double uniform_bound = 0.0;
    bool uniformly_bounded = true;
    bool strictly_decreasing = true;
    double c_log_estimate = 0.0;
};

inline PoissonConvergenceReport poisson_convergence_check(const BoundaryFunction& f, const VariableExponent& p,
                                                          std::span<const double> radii,
                                                          const PoissonCheckOptions& opt = {}) {
    const auto reg = log_holder_constant(p, opt.regularity_grid, {opt.log_holder_ceiling});
    if (!reg.log_holder) throw PreconditionError("exponent fails the log-Holder check");
    PoissonConvergenceReport rep;
    rep.c_log_estimate = reg.c_log_estimate;
    rep.uniform_bound = opt.uniform_bound;
    rep.f_norm = luxemburg_norm(f, p).value;
    for (double r : radii) {
        const auto pr = poisson_dilate(f, r);
        std::vector<complex> diff(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) diff[j] = f.values()[j] - pr.values()[j];
        const double d = luxemburg_norm(f.with_values(std::move(diff)), p).value;
        if (!rep.deficits.empty() && !(d < rep.deficits.back().second)) rep.strictly_decreasing = false;
        rep.deficits.emplace_back(r, d);
        if (rep.f_norm > 0.0) rep.max_ratio = std::max(rep.max_ratio, luxemburg_norm(pr, p).value / rep.f_norm);
    }
    rep.uniformly_bounded = rep.max_ratio <= opt.uniform_bound;
    return rep;
}

struct SzegoReport {
    std::size_t trials = 0;
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    double bound = 0.0;
    bool bounded = true;
};

/// Empirical proxy for the operator norm of the Szego projection on L^p:
/// max of ||K f|| / ||f|| over seeded trigonometric polynomials.
inline SzegoReport szego_boundedness_experiment(const VariableExponent& p, std::size_t trials, std::uint64_t seed,
                                                int degree = 8, std::size_t n = 256, double bound = 2.0) {
    SzegoReport rep;
    rep.trials = trials;
    rep.bound = bound;
    SeededRng rng(seed);
    double sum = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto f = random_trig_polynomial(rng, degree).sample(n);
        const double nf = luxemburg_norm(f, p).value;
        if (nf == 0.0) continue;
        const double ratio = luxemburg_norm(szego_project(f), p).value / nf;
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        sum += ratio;
    }
    rep.mean_ratio = trials ? sum / static_cast<double>(trials) : 0.0;
    rep.bounded = rep.max_ratio <= bound;
    return rep;
}

struct RecoveryReport {
    double r_max = 0.0;
    /// max_j |U(r_max e^{i theta_j}) - u(theta_j)|
    double max_deviation = 0.0;
    /// ||U_{r_max} - u||_p
    double norm_deviation = 0.0;
};

inline RecoveryReport boundary_recovery_check(const DiskSampler& s, const BoundaryFunction& u,
                                              const VariableExponent& p, double r_max = 1.0 - 0x1.0p-12) {
    if (!u.uniform_circle()) throw ContractError("boundary recovery needs uniform circle data");
    RecoveryReport rep;
    rep.r_max = r_max;
    std::vector<complex> diff(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        diff[j] = s(std::polar(r_max, u.nodes()[j])) - u.values()[j];
        rep.max_deviation = std::max(rep.max_deviation, std::abs(diff[j]));
    }
    rep.norm_deviation = luxemburg_norm(u.with_values(std::move(diff)), p).value;
    return rep;
}

struct InclusionReport {
    double norm_p_plus = 0.0;
    double norm_variable = 0.0;
    double norm_p_minus = 0.0;
    /// max_r rho_p(f_r / ||f||_{h^{p+}})
    double constant_upper = 0.0;
    /// max_r rho_{p-}(f_r / ||f||_{h^p})
    double constant_lower = 0.0;
    double constant = 0.0;
    double bound = 1.0 + two_pi;
    bool holds = true;
};

/// Norms in h^{p+}, h^p and h^{p-}, and the modular implications
/// ||f||_{h^{p+}} <= 1 => rho_p(f_r) <= C and ||f||_{h^p} <= 1 => rho_{p-}(f_r) <= C,
/// evaluated on f normalized to unit norm. Pointwise |g|^p <= 1 + |g|^{p+}
/// gives C <= 1 + 2pi.
inline InclusionReport inclusion_check(const DiskSampler& s, const VariableExponent& p,
                                       std::span<const double> radius_schedule, const HardyOptions& opt = {}) {
    const auto pplus = VariableExponent::constant(p.p_plus());
    const auto pminus = VariableExponent::constant(p.p_minus());
    const auto seams = p.breakpoints();
    const std::size_t n = radius_schedule.size();
    std::vector<BoundaryFunction> samples(n, BoundaryFunction::circle(std::vector<complex>(8)));
    std::vector<double> n_plus(n), n_var(n), n_minus(n);
    parallel_for(n, opt.workers, [&](std::size_t i) {
        samples[i] = sample_dilation(s, radius_schedule[i], opt.grid_size, seams);
        n_plus[i] = luxemburg_norm(samples[i], pplus, opt.luxemburg).value;
        n_var[i] = luxemburg_norm(samples[i], p, opt.luxemburg).value;
        n_minus[i] = luxemburg_norm(samples[i], pminus, opt.luxemburg).value;
    });
    InclusionReport rep;
    for (std::size_t i = 0; i < n; ++i) {
        rep.norm_p_plus = std::max(rep.norm_p_plus, n_plus[i]);
        rep.norm_variable = std::max(rep.norm_variable, n_var[i]);
        rep.norm_p_minus = std::max(rep.norm_p_minus, n_minus[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (rep.norm_p_plus > 0.0)
            rep.constant_upper = std::max(rep.constant_upper, Modular(samples[i], p)(rep.norm_p_plus));
        if (rep.norm_variable > 0.0)
            rep.constant_lower = std::max(rep.constant_lower, Modular(samples[i], p.p_minus())(rep.norm_variable));
    }
    rep.constant = std::max(rep.constant_upper, rep.constant_lower);
    rep.holds = rep.constant <= rep.bound;
    return rep;
}

/// integral f(zeta) / (1 - conj(zeta) z) dm(zeta) on n uniform boundary nodes.
inline complex reproduce_at(const DiskSampler& s, complex z, std::size_t n = 512) {
    if (s.kind != FunctionKind::analytic) throw ContractError("reproducing formula needs an analytic sampler");
    if (!(std::abs(z) < 1.0)) throw DomainError("reproduce_at needs |z| < 1");
    complex sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const complex zeta = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(n));
        sum += s(zeta) / (1.0 - std::conj(zeta) * z);
    }
    return sum / static_cast<double>(n);
}

struct Sec3Report {
    double q = 0.0;
    double eps = 0.0;
    /// exponent s = 1/q + eps of both power functions
    double power = 0.0;
    /// (1 + z)^-s under the piecewise exponent; singular where p = 2
    HardyReport f_report;
    /// (1 - z)^-s under the piecewise exponent; singular where p = 3
    HardyReport g_report;
    /// (1 + z)^-s under the constant exponent q
    HardyReport f_constant_report;
    /// local integrability exponents s * p(zeta0); < 1 means a finite modular
    double f_local_exponent = 0.0;
    double g_local_exponent = 0.0;
    double f_constant_local_exponent = 0.0;
    /// expected modular growth exponent of g against (1 - r)
    double g_predicted_growth = 0.0;
};

/// f = (1+z)^-s and g = (1-z)^-s, s = 1/q + eps, under the piecewise exponent
/// p (3 near theta = 0, 2 near theta = pi), and f under the constant q.
inline Sec3Report sec3_example_report(double q, double eps, std::span<const double> radius_schedule,
                                      const HardyOptions& opt = {}) {
    if (!(q > 2.0 && q <= 3.0)) throw PreconditionError("q must satisfy 2 < q <= 3");
    if (!(eps > 0.0 && 1.0 / q + eps < 0.5)) throw PreconditionError("need 1/q < 1/q + eps < 1/2");
    const auto p = example_exponent_sec3();
    Sec3Report rep;
    rep.q = q;
    rep.eps = eps;
    rep.power = 1.0 / q + eps;
    const auto f = power_sampler(pi, rep.power);
    const auto g = power_sampler(0.0, rep.power);
    rep.f_report = hardy_norm(f, p, radius_schedule, opt);
    rep.g_report = hardy_norm(g, p, radius_schedule, opt);
    rep.f_constant_report = hardy_norm(f, VariableExponent::constant(q), radius_schedule, opt);
    rep.f_local_exponent = rep.power * p(pi);
    rep.g_local_exponent = rep.power * p(0.0);
    rep.f_constant_local_exponent = rep.power * q;
    rep.g_predicted_growth = 1.0 - rep.g_local_exponent;
    return rep;
}

}  // namespace vexhardy
