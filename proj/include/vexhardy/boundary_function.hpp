#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vexhardy/error.hpp"
#include "vexhardy/exponent.hpp"
#include "vexhardy/quadrature.hpp"

namespace vexhardy {

using complex = std::complex<double>;

/// Local model |f(t)| ~ constant * |t - location|^(-alpha) inside a core of
/// half-width core_radius that the quadrature nodes leave out.
struct SingularTail {
    double location = 0.0;
    double alpha = 0.0;
    double constant = 1.0;
    double core_radius = 0.0;
};

/// Power decay model |f(x)| ~ amplitude * (|x|/|x_end|)^(-beta) beyond the
/// ends of a line grid.
struct PowerTail {
    double beta = 2.0;
    double left_amplitude = 0.0;
    double right_amplitude = 0.0;
};

/// Samples of a function on the circle (parameter theta in [0, 2pi), measure
/// d-theta) or on a truncated line grid, with the quadrature weights used to
/// integrate them.
///
/// The uniform circle grid (theta_j = 2 pi j / N, N a power of two >= 8) is
/// the only layout accepted by the Fourier-based operations.
class BoundaryFunction {
public:
    /// Uniform circle samples.
    static BoundaryFunction circle(std::vector<complex> values) {
        const std::size_t n = values.size();
        if (n < 8 || !std::has_single_bit(n))
            throw InputError("circle grid size must be a power of two >= 8");
        BoundaryFunction f;
        f.domain_ = DomainKind::circle;
        f.uniform_ = true;
        auto rule = periodic_trapezoid(n);
        f.nodes_ = std::move(rule.nodes);
        f.weights_ = std::move(rule.weights);
        f.values_ = std::move(values);
        f.check_finite();
        return f;
    }

    template <class F>
    static BoundaryFunction sample_circle(F&& fn, std::size_t n) {
        std::vector<complex> v(n);
        for (std::size_t j = 0; j < n; ++j)
            v[j] = complex(fn(two_pi * static_cast<double>(j) / static_cast<double>(n)));
        return circle(std::move(v));
    }

    /// Line samples integrated by the trapezoid rule.
    static BoundaryFunction line(std::vector<double> abscissae, std::vector<complex> values,
                                 std::optional<PowerTail> tail = std::nullopt) {
        if (abscissae.size() != values.size()) throw InputError("abscissae and values differ in length");
        auto rule = line_trapezoid(abscissae);
        BoundaryFunction f;
        f.domain_ = DomainKind::line;
        f.nodes_ = std::move(rule.nodes);
        f.weights_ = std::move(rule.weights);
        f.values_ = std::move(values);
        f.line_tail_ = tail;
        f.check_finite();
        return f;
    }

    /// Samples on an arbitrary quadrature rule.
    static BoundaryFunction on_rule(DomainKind domain, QuadratureRule rule, std::vector<complex> values,
                                    std::vector<double> singular_points = {},
                                    std::vector<SingularTail> tails = {}) {
        if (rule.nodes.size() != values.size() || rule.weights.size() != values.size())
            throw InputError("rule and values differ in length");
        BoundaryFunction f;
        f.domain_ = domain;
        f.nodes_ = std::move(rule.nodes);
        f.weights_ = std::move(rule.weights);
        f.values_ = std::move(values);
        f.singular_points_ = std::move(singular_points);
        f.tails_ = std::move(tails);
        f.check_finite();
        return f;
    }

    DomainKind domain() const noexcept { return domain_; }
    bool uniform_circle() const noexcept { return uniform_; }
    std::size_t size() const noexcept { return values_.size(); }

    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const std::vector<complex>& values() const noexcept { return values_; }
    const std::vector<double>& singular_points() const noexcept { return singular_points_; }
    const std::vector<SingularTail>& singular_tails() const noexcept { return tails_; }
    const std::optional<PowerTail>& line_tail() const noexcept { return line_tail_; }

    double measure() const {
        double s = 0.0;
        for (double w : weights_) s += w;
        return s;
    }

    /// Same nodes, weights and tail metadata; new values.
    BoundaryFunction with_values(std::vector<complex> values) const {
        if (values.size() != values_.size()) throw InputError("value count mismatch");
        BoundaryFunction f = *this;
        f.values_ = std::move(values);
        f.check_finite();
        return f;
    }

    BoundaryFunction scaled(complex c) const {
        std::vector<complex> v(values_);
        for (auto& x : v) x *= c;
        BoundaryFunction f = with_values(std::move(v));
        for (auto& t : f.tails_) t.constant *= std::abs(c);
        if (f.line_tail_) {
            f.line_tail_->left_amplitude *= std::abs(c);
            f.line_tail_->right_amplitude *= std::abs(c);
        }
        return f;
    }

    bool same_grid(const BoundaryFunction& o) const {
        return domain_ == o.domain_ && nodes_ == o.nodes_ && weights_ == o.weights_;
    }

private:
    void check_finite() const {
        for (const auto& v : values_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw InputError("boundary function has a non-finite sample");
    }

    DomainKind domain_ = DomainKind::circle;
    bool uniform_ = false;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<complex> values_;
    std::vector<double> singular_points_;
    std::vector<SingularTail> tails_;
    std::optional<PowerTail> line_tail_;
};

/// CSV with header "theta,re,im" (uniform circle grid) or "x,re,im" (line grid).
inline void write_csv(std::ostream& os, const BoundaryFunction& f) {
    os << (f.domain() == DomainKind::circle ? "theta,re,im\n" : "x,re,im\n");
    os << std::setprecision(17);
    for (std::size_t i = 0; i < f.size(); ++i)
        os << f.nodes()[i] << ',' << f.values()[i].real() << ',' << f.values()[i].imag() << '\n';
}

inline BoundaryFunction read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InputError("empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    DomainKind domain;
    if (line == "theta,re,im")
        domain = DomainKind::circle;
    else if (line == "x,re,im")
        domain = DomainKind::line;
    else
        throw InputError("CSV header must be 'theta,re,im' or 'x,re,im'");

    std::vector<double> xs;
    std::vector<complex> vs;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, re, im;
        if (!(ss >> x >> re >> im)) throw InputError("malformed CSV row at line " + std::to_string(lineno));
        xs.push_back(x);
        vs.emplace_back(re, im);
    }
    if (domain == DomainKind::line) return BoundaryFunction::line(std::move(xs), std::move(vs));

    const std::size_t n = xs.size();
    for (std::size_t j = 0; j < n; ++j) {
        const double expected = two_pi * static_cast<double>(j) / static_cast<double>(n);
        if (std::abs(xs[j] - expected) > 1e-9)
            throw InputError("circle CSV must use the uniform grid 2 pi j / N");
    }
    return BoundaryFunction::circle(std::move(vs));
}

inline void write_csv_file(const std::string& path, const BoundaryFunction& f) {
    std::ofstream os(path);
    if (!os) throw InputError("cannot open " + path + " for writing");
    write_csv(os, f);
}

inline BoundaryFunction read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot open " + path);
    return read_csv(is);
}

}  // namespace vexhardy
