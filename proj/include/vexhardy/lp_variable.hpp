#pragma once

// Modular rho_p(f) = integral of |f|^p(t) dt and the Luxemburg norm
// ||f|| = inf { lambda > 0 : rho_p(f / lambda) <= 1 }.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "vexhardy/boundary_function.hpp"
#include "vexhardy/error.hpp"
#include "vexhardy/exponent.hpp"
#include "vexhardy/quadrature.hpp"

namespace vexhardy {

struct NormResult {
    double value = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
    double modular_at_value = 0.0;
    int iterations = 0;
    /// the modular is infinite for every lambda: f is not in the space
    bool infinite = false;

    static NormResult infinite_norm() {
        NormResult r;
        r.value = infinity;
        r.bracket = {infinity, infinity};
        r.modular_at_value = infinity;
        r.infinite = true;
        return r;
    }
};

struct LuxemburgOptions {
    double rtol = 1e-10;
    int max_widenings = 400;
    std::uintmax_t max_bisections = 200;
};

/// rho(f / lambda) with the per-node logarithms and exponents precomputed.
///
/// Each term is w_i * exp(p_i * (log|f_i| - log lambda)); analytic tails add
/// coef * lambda^(-expo). Summation runs in node order, so results are
/// reproducible bit for bit.
class Modular {
public:
    Modular(const BoundaryFunction& f, const VariableExponent& p) { build(f, [&](double t) { return p(t); }, &p); }
    Modular(const BoundaryFunction& f, double p_const) {
        if (!(p_const >= 1.0)) throw RangeError("constant exponent must be >= 1");
        build(f, [p_const](double) { return p_const; }, nullptr);
    }

    double operator()(double lambda) const {
        if (infinite_) return infinity;
        const double ll = std::log(lambda);
        double s = 0.0;
        for (std::size_t i = 0; i < w_.size(); ++i) s += w_[i] * std::exp(p_[i] * (logf_[i] - ll));
        for (const auto& t : tails_) s += t.coef * std::exp(-t.expo * ll);
        return s;
    }

    bool zero() const noexcept { return w_.empty() && tails_.empty() && !infinite_; }
    bool infinite() const noexcept { return infinite_; }
    double measure() const noexcept { return measure_; }

private:
    struct TailTerm {
        double coef;
        double expo;
    };

    template <class Exponent>
    void build(const BoundaryFunction& f, Exponent&& pval, const VariableExponent* p) {
        if (p && p->domain() != f.domain()) throw DomainError("function and exponent live on different domains");
        measure_ = f.measure();
        const auto& v = f.values();
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double a = std::abs(v[i]);
            if (a == 0.0 || f.weights()[i] == 0.0) continue;
            w_.push_back(f.weights()[i]);
            logf_.push_back(std::log(a));
            p_.push_back(pval(f.nodes()[i]));
        }
        for (const auto& t : f.singular_tails()) {
            if (t.constant == 0.0) continue;
            const double c = t.core_radius;
            const double p0 = std::max({pval(t.location), pval(t.location - c), pval(t.location + c)});
            const double e = 1.0 - t.alpha * p0;
            if (e <= 0.0) {
                infinite_ = true;
                continue;
            }
            tails_.push_back({2.0 * std::pow(t.constant, p0) * std::pow(c, e) / e, p0});
        }
        if (const auto& lt = f.line_tail(); lt && f.size() > 0) {
            const double xl = f.nodes().front(), xr = f.nodes().back();
            auto add = [&](double amp, double x_end) {
                if (amp == 0.0) return;
                if (!(std::abs(x_end) > 0.0)) throw InputError("power tail needs grid ends away from 0");
                const double pe = pval(x_end);
                const double e = lt->beta * pe - 1.0;
                if (e <= 0.0) {
                    infinite_ = true;
                    return;
                }
                tails_.push_back({std::pow(amp, pe) * std::abs(x_end) / e, pe});
            };
            add(lt->left_amplitude, xl);
            add(lt->right_amplitude, xr);
        }
    }

    std::vector<double> w_, logf_, p_;
    std::vector<TailTerm> tails_;
    double measure_ = 0.0;
    bool infinite_ = false;
};

/// Bracket, widen geometrically, then bisect rho(lambda) = 1.
template <class Rho>
NormResult solve_luxemburg(const Rho& rho, double lo, double hi, const LuxemburgOptions& opt = {}) {
    if (!(lo > 0.0) || !std::isfinite(lo)) lo = 1.0;
    if (!(hi > lo) || !std::isfinite(hi)) hi = 2.0 * lo;
    int widen = 0;
    while (!(rho(lo) >= 1.0)) {
        lo *= 0.5;
        if (++widen > opt.max_widenings) throw Error("Luxemburg bracket: modular never reaches 1");
    }
    widen = 0;
    while (!(rho(hi) <= 1.0)) {
        hi *= 2.0;
        if (++widen > opt.max_widenings) return NormResult::infinite_norm();
    }
    if (hi < lo) std::swap(lo, hi);

    std::uintmax_t iters = opt.max_bisections;
    const double rtol = opt.rtol;
    const auto [a, b] = boost::math::tools::bisect([&](double lam) { return rho(lam) - 1.0; }, lo, hi,
                                                   [rtol](double x, double y) { return y - x <= rtol * x; }, iters);
    NormResult r;
    r.bracket = {a, b};
    r.value = 0.5 * (a + b);
    r.modular_at_value = rho(r.value);
    r.iterations = static_cast<int>(iters);
    return r;
}

inline double modular(const BoundaryFunction& f, const VariableExponent& p) { return Modular(f, p)(1.0); }

/// Classical (integral of |f|^p)^(1/p) on the same quadrature.
inline double norm_constant_exponent(const BoundaryFunction& f, double p_const) {
    return std::pow(Modular(f, p_const)(1.0), 1.0 / p_const);
}

inline NormResult luxemburg_norm(const BoundaryFunction& f, const VariableExponent& p,
                                 const LuxemburgOptions& opt = {}) {
    const Modular rho(f, p);
    if (rho.zero()) return NormResult{};
    if (rho.infinite()) return NormResult::infinite_norm();

    const double pm = p.p_minus(), pp = p.p_plus();
    const double mu = rho.measure();
    const double scale = std::pow(1.0 + mu, 1.0 / pm);
    const double lo = norm_constant_exponent(f, pp) / scale;
    const double hi = norm_constant_exponent(f, pm) * scale;
    return solve_luxemburg(rho, lo, hi, opt);
}

struct HolderPairing {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds() const { return lhs <= rhs; }
};

inline constexpr double holder_constant = 2.0;

/// (integral |f g|, 2 ||f||_p ||g||_q) with q the conjugate of p.
inline HolderPairing holder_pairing(const BoundaryFunction& f, const BoundaryFunction& g,
                                    const VariableExponent& p) {
    if (!f.same_grid(g)) throw InputError("holder_pairing needs both functions on one grid");
    const auto q = conjugate(p);
    HolderPairing h;
    for (std::size_t i = 0; i < f.size(); ++i) h.lhs += f.weights()[i] * std::abs(f.values()[i] * g.values()[i]);
    const auto nf = luxemburg_norm(f, p);
    const auto ng = luxemburg_norm(g, q);
    h.rhs = (nf.infinite || ng.infinite) ? infinity : holder_constant * nf.value * ng.value;
    return h;
}

/// Luxemburg norm of the indicator of (a - R, a + R) in L^q(R); the modular
/// integral of lambda^(-q(x)) is taken over that interval only.
inline double indicator_norm(double a, double R, const VariableExponent& q) {
    if (q.domain() != DomainKind::line) throw DomainError("indicator_norm needs a line exponent");
    if (!(R > 0.0)) throw PreconditionError("indicator_norm needs R > 0");
    const auto bps = q.breakpoints();
    const auto edges = panel_breakpoints(a - R, a + R, std::min(1.0, R / 2.0), bps);
    auto rule = gauss_panels(edges);
    std::vector<complex> ones(rule.size(), complex(1.0, 0.0));
    const auto f = BoundaryFunction::on_rule(DomainKind::line, std::move(rule), std::move(ones));
    const double lo = std::pow(2.0 * R, 1.0 / q.p_plus());
    const double hi = std::pow(2.0 * R, 1.0 / q.p_minus());
    return solve_luxemburg(Modular(f, q), std::min(lo, hi) / 1.01, std::max(lo, hi) * 1.01).value;
}

}  // namespace vexhardy
