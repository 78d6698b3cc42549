#pragma once

// Variable exponents p(.) on the circle parameter interval [0, 2pi) or on the
// real line, represented symbolically as a list of formula pieces so that
// pointwise values and the essential bounds are exact.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vexhardy/error.hpp"

namespace vexhardy {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double infinity = std::numeric_limits<double>::infinity();

enum class DomainKind { circle, line };

inline std::string_view to_string(DomainKind d) {
    return d == DomainKind::circle ? "circle" : "line";
}

enum class FormulaKind { constant, affine, cosine_offset, log_decay, rational_decay };

inline std::string_view to_string(FormulaKind k) {
    switch (k) {
    case FormulaKind::constant: return "constant";
    case FormulaKind::affine: return "affine";
    case FormulaKind::cosine_offset: return "cosine_offset";
    case FormulaKind::log_decay: return "log_decay";
    case FormulaKind::rational_decay: return "rational_decay";
    }
    return "unknown";
}

/// One closed-form expression in the exponent vocabulary.
///
///   constant        a
///   affine          a*t + b
///   cosine_offset   cos(t) + a
///   log_decay       a + b / log(e + |t|)
///   rational_decay  a + b / (1 + t^2)
struct Formula {
    FormulaKind kind = FormulaKind::constant;
    double a = 0.0;
    double b = 0.0;

    static Formula constant(double c) { return {FormulaKind::constant, c, 0.0}; }
    static Formula affine(double slope, double intercept) {
        return {FormulaKind::affine, slope, intercept};
    }
    static Formula cosine_offset(double offset) { return {FormulaKind::cosine_offset, offset, 0.0}; }
    static Formula log_decay(double limit, double amplitude) {
        return {FormulaKind::log_decay, limit, amplitude};
    }
    static Formula rational_decay(double limit, double amplitude) {
        return {FormulaKind::rational_decay, limit, amplitude};
    }

    double operator()(double t) const {
        switch (kind) {
        case FormulaKind::constant: return a;
        case FormulaKind::affine: return a == 0.0 ? b : a * t + b;
        case FormulaKind::cosine_offset: return std::cos(t) + a;
        case FormulaKind::log_decay:
            return std::isinf(t) ? a : a + b / std::log(std::numbers::e + std::abs(t));
        case FormulaKind::rational_decay:
            return std::isinf(t) ? a : a + b / (1.0 + t * t);
        }
        return a;
    }

    /// Limit as |t| -> infinity, when it exists.
    std::optional<double> limit_at_infinity() const {
        switch (kind) {
        case FormulaKind::constant: return a;
        case FormulaKind::affine:
            if (a == 0.0) return b;
            return std::nullopt;
        case FormulaKind::cosine_offset: return std::nullopt;
        case FormulaKind::log_decay:
        case FormulaKind::rational_decay: return a;
        }
        return std::nullopt;
    }

    /// Exact (min, max) of the formula over the closed interval [lo, hi];
    /// infinite endpoints use the limiting value.
    std::pair<double, double> range_on(double lo, double hi) const {
        switch (kind) {
        case FormulaKind::constant: return {a, a};
        case FormulaKind::affine: {
            if (a == 0.0) return {b, b};
            const double u = (*this)(lo), v = (*this)(hi);
            return {std::min(u, v), std::max(u, v)};
        }
        case FormulaKind::cosine_offset: {
            if (std::isinf(lo) || std::isinf(hi) || hi - lo >= two_pi) return {a - 1.0, a + 1.0};
            double mn = std::min((*this)(lo), (*this)(hi));
            double mx = std::max((*this)(lo), (*this)(hi));
            // interior critical points of cos are the multiples of pi
            for (double k = std::ceil(lo / pi); k * pi <= hi; k += 1.0) {
                const double v = (*this)(k * pi);
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            return {mn, mx};
        }
        case FormulaKind::log_decay:
        case FormulaKind::rational_decay: {
            // monotone in |t|
            const double u_min = (lo <= 0.0 && 0.0 <= hi) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
            const double u_max = std::max(std::abs(lo), std::abs(hi));
            const double v1 = (*this)(u_min), v2 = (*this)(u_max);
            return {std::min(v1, v2), std::max(v1, v2)};
        }
        }
        return {a, a};
    }

    /// True when the formula depends on |t| and therefore has a kink at 0.
    bool kinked_at_zero() const {
        return kind == FormulaKind::log_decay || kind == FormulaKind::rational_decay;
    }
};

/// Half-open parameter interval [lo, hi) carrying one formula.
struct Piece {
    double lo = 0.0;
    double hi = 0.0;
    Formula formula;
};

struct ExponentOptions {
    double p_max_allowed = 64.0;
    double periodicity_tolerance = 1e-12;
    double tiling_tolerance = 1e-12;
};

class VariableExponent;
VariableExponent make_piecewise_exponent(DomainKind domain, std::vector<Piece> pieces,
                                         const ExponentOptions& options);
VariableExponent conjugate(const VariableExponent& p);

/// Immutable variable exponent. Copies share the piece table.
///
/// A conjugate exponent q = p/(p-1) is stored as a flag over the pieces of p,
/// never refitted, so conjugate(conjugate(p)) is p exactly.
class VariableExponent {
public:
    static VariableExponent constant(double c, DomainKind domain = DomainKind::circle) {
        const double lo = domain == DomainKind::circle ? 0.0 : -infinity;
        const double hi = domain == DomainKind::circle ? two_pi : infinity;
        return make_piecewise_exponent(domain, {Piece{lo, hi, Formula::constant(c)}}, {});
    }

    DomainKind domain() const noexcept { return domain_; }

    double operator()(double t) const {
        const double v = base_value(t);
        return conjugated_ ? v / (v - 1.0) : v;
    }

    double p_minus() const noexcept {
        return conjugated_ ? base_max_ / (base_max_ - 1.0) : base_min_;
    }
    double p_plus() const noexcept {
        return conjugated_ ? base_min_ / (base_min_ - 1.0) : base_max_;
    }

    /// Common limit at +-infinity for line exponents, if both ends have the same limit.
    std::optional<double> p_infinity() const {
        if (!base_infinity_) return std::nullopt;
        const double v = *base_infinity_;
        return conjugated_ ? v / (v - 1.0) : v;
    }

    bool conjugated() const noexcept { return conjugated_; }
    bool is_constant() const noexcept { return p_minus() == p_plus(); }

    const std::vector<Piece>& pieces() const noexcept { return *pieces_; }

    /// Finite parameter values where the exponent may fail to be smooth:
    /// interior piece boundaries and kinks of |t|-based formulas.
    std::vector<double> breakpoints() const {
        std::vector<double> out;
        const auto& ps = *pieces_;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (i > 0) out.push_back(ps[i].lo);
            if (ps[i].formula.kinked_at_zero() && ps[i].lo < 0.0 && 0.0 < ps[i].hi) out.push_back(0.0);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    friend VariableExponent make_piecewise_exponent(DomainKind, std::vector<Piece>, const ExponentOptions&);
    friend VariableExponent conjugate(const VariableExponent&);

    VariableExponent() = default;

    double base_value(double t) const {
        const auto& ps = *pieces_;
        if (domain_ == DomainKind::circle) {
            t = std::fmod(t, two_pi);
            if (t < 0.0) t += two_pi;
            if (t >= two_pi) t = 0.0;
        }
        auto it = std::upper_bound(ps.begin(), ps.end(), t,
                                   [](double x, const Piece& pc) { return x < pc.lo; });
        if (it == ps.begin()) return ps.front().formula(t);
        return std::prev(it)->formula(t);
    }

    std::shared_ptr<const std::vector<Piece>> pieces_;
    DomainKind domain_ = DomainKind::circle;
    double base_min_ = 1.0;
    double base_max_ = 1.0;
    std::optional<double> base_infinity_;
    bool conjugated_ = false;
};

/// Validates and builds a piecewise exponent.
///
/// Pieces must be given in order and tile [0, 2pi) (circle) or the whole
/// line, every value must lie in [1, p_max_allowed], and circle exponents must
/// satisfy p(0) = p(2pi).
inline VariableExponent make_piecewise_exponent(DomainKind domain, std::vector<Piece> pieces,
                                                const ExponentOptions& options = {}) {
    if (pieces.empty()) throw ConstructionError("exponent needs at least one piece");
    const double start = domain == DomainKind::circle ? 0.0 : -infinity;
    const double end = domain == DomainKind::circle ? two_pi : infinity;
    const double tol = options.tiling_tolerance;

    auto same = [tol](double x, double y) {
        if (std::isinf(x) || std::isinf(y)) return x == y;
        return std::abs(x - y) <= tol;
    };

    if (!same(pieces.front().lo, start))
        throw ConstructionError("first piece must start at the domain start");
    if (!same(pieces.back().hi, end)) throw ConstructionError("last piece must end at the domain end");
    pieces.front().lo = start;
    pieces.back().hi = end;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i > 0) {
            if (!same(pieces[i].lo, pieces[i - 1].hi)) {
                throw ConstructionError(pieces[i].lo < pieces[i - 1].hi ? "exponent pieces overlap"
                                                                        : "gap between exponent pieces");
            }
            pieces[i].lo = pieces[i - 1].hi;
        }
        if (!(pieces[i].lo < pieces[i].hi)) throw ConstructionError("empty or reversed exponent piece");
    }

    double mn = infinity, mx = -infinity;
    for (const auto& pc : pieces) {
        const auto [lo, hi] = pc.formula.range_on(pc.lo, pc.hi);
        if (!(lo >= 1.0)) throw RangeError("exponent value below 1");
        if (!(hi <= options.p_max_allowed))
            throw RangeError("exponent exceeds p_max_allowed = " + std::to_string(options.p_max_allowed));
        mn = std::min(mn, lo);
        mx = std::max(mx, hi);
    }

    if (domain == DomainKind::circle) {
        const double at0 = pieces.front().formula(0.0);
        const double at2pi = pieces.back().formula(two_pi);
        if (std::abs(at0 - at2pi) > options.periodicity_tolerance)
            throw PeriodicityError("circle exponent must satisfy p(0) = p(2pi)");
    }

    VariableExponent p;
    p.domain_ = domain;
    p.base_min_ = mn;
    p.base_max_ = mx;
    if (domain == DomainKind::line) {
        const auto left = pieces.front().formula.limit_at_infinity();
        const auto right = pieces.back().formula.limit_at_infinity();
        if (left && right && *left == *right) p.base_infinity_ = *left;
    }
    p.pieces_ = std::make_shared<const std::vector<Piece>>(std::move(pieces));
    return p;
}

/// Pointwise conjugate q = p/(p-1).
inline VariableExponent conjugate(const VariableExponent& p) {
    if (p.p_minus() <= 1.0)
        throw ConjugateUnboundedError("conjugate exponent is unbounded when p_minus = 1");
    VariableExponent q = p;
    q.conjugated_ = !p.conjugated_;
    return q;
}

/// (p_minus, p_plus), exact.
inline std::pair<double, double> essential_bounds(const VariableExponent& p) {
    return {p.p_minus(), p.p_plus()};
}

/// p = 3 on [0, pi/3] and [5pi/3, 2pi], cos + 5/2 on the transition arcs,
/// 2 on [2pi/3, 4pi/3]. Range [2, 3], continuous, log-Holder.
inline VariableExponent example_exponent_sec3() {
    return make_piecewise_exponent(DomainKind::circle,
                                   {
                                       Piece{0.0, pi / 3.0, Formula::constant(3.0)},
                                       Piece{pi / 3.0, 2.0 * pi / 3.0, Formula::cosine_offset(2.5)},
                                       Piece{2.0 * pi / 3.0, 4.0 * pi / 3.0, Formula::constant(2.0)},
                                       Piece{4.0 * pi / 3.0, 5.0 * pi / 3.0, Formula::cosine_offset(2.5)},
                                       Piece{5.0 * pi / 3.0, two_pi, Formula::constant(3.0)},
                                   });
}

/// Line exponent p(x) = 2 + 1/log(e + |x|): class LH with p_inf = 2, range (2, 3].
inline VariableExponent lh_demo_exponent() {
    return make_piecewise_exponent(DomainKind::line,
                                   {Piece{-infinity, infinity, Formula::log_decay(2.0, 1.0)}});
}

struct RegularityReport {
    double c_log_estimate = 0.0;
    std::pair<double, double> worst_pair{0.0, 0.0};
    std::optional<double> c_infinity_estimate;
    std::size_t pairs_examined = 0;
    double ceiling = 0.0;
    /// false when c_log_estimate (or c_infinity_estimate) exceeds the ceiling
    bool log_holder = true;
};

struct RegularityOptions {
    double ceiling = 5.0;
    /// line exponents are examined on [-w, w]
    double line_half_width = 16.0;
};

inline double lh_infinity_constant(const VariableExponent& p, double p_inf, std::span<const double> grid) {
    if (p.domain() != DomainKind::line) throw DomainError("lh_infinity_constant needs a line exponent");
    if (grid.empty()) throw PreconditionError("lh_infinity_constant needs a nonempty grid");
    double best = 0.0;
    for (double x : grid) best = std::max(best, std::abs(p(x) - p_inf) * std::log(std::numbers::e + std::abs(x)));
    return best;
}

/// Estimates C_log = max |p(x)-p(y)| log(1/|x-y|) over grid pairs with
/// 0 < |x-y| <= 1/2. Circle grids are 2pi j/n with arc distance; line grids are
/// n intervals on [-w, w]. Doubling n examines a superset of pairs, so the
/// estimate is nondecreasing under doubling.
inline RegularityReport log_holder_constant(const VariableExponent& p, std::size_t grid_size,
                                            const RegularityOptions& options = {}) {
    if (grid_size < 16) throw PreconditionError("log_holder_constant needs grid_size >= 16");
    RegularityReport rep;
    rep.ceiling = options.ceiling;
    const std::size_t n = grid_size;

    std::vector<double> xs;
    if (p.domain() == DomainKind::circle) {
        xs.resize(n);
        for (std::size_t j = 0; j < n; ++j) xs[j] = two_pi * static_cast<double>(j) / static_cast<double>(n);
    } else {
        const double w = options.line_half_width;
        xs.resize(n + 1);
        for (std::size_t j = 0; j <= n; ++j) xs[j] = -w + 2.0 * w * static_cast<double>(j) / static_cast<double>(n);
    }
    std::vector<double> vals(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) vals[j] = p(xs[j]);

    auto consider = [&](std::size_t i, std::size_t j, double d) {
        const double v = std::abs(vals[i] - vals[j]) * std::log(1.0 / d);
        ++rep.pairs_examined;
        if (v > rep.c_log_estimate) {
            rep.c_log_estimate = v;
            rep.worst_pair = {xs[i], xs[j]};
        }
    };

    if (p.domain() == DomainKind::circle) {
        for (std::size_t m = 1; m < n; ++m) {
            const double d = two_pi * static_cast<double>(m) / static_cast<double>(n);
            if (d > 0.5) break;
            for (std::size_t i = 0; i < n; ++i) consider(i, (i + m) % n, d);
        }
    } else {
        const double w = options.line_half_width;
        for (std::size_t m = 1; m <= n; ++m) {
            const double d = 2.0 * w * static_cast<double>(m) / static_cast<double>(n);
            if (d > 0.5) break;
            for (std::size_t i = 0; i + m <= n; ++i) consider(i, i + m, d);
        }
        if (auto pinf = p.p_infinity()) {
            std::vector<double> grid = xs;
            for (int k = 0; k <= 32; ++k) {
                const double x = std::pow(10.0, k / 4.0);
                grid.push_back(x);
                grid.push_back(-x);
            }
            rep.c_infinity_estimate = lh_infinity_constant(p, *pinf, grid);
        }
    }

    rep.log_holder = rep.c_log_estimate <= options.ceiling &&
                     (!rep.c_infinity_estimate || *rep.c_infinity_estimate <= options.ceiling);
    return rep;
}

}  // namespace vexhardy
