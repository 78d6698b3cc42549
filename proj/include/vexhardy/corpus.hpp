#pragma once

// Seeded random test functions. Doubles are drawn from the raw 64-bit
// mt19937_64 stream (whose output sequence is fixed by the standard), so a
// seed names the same corpus on every platform.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "vexhardy/boundary_function.hpp"

namespace vexhardy {

class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

private:
    std::mt19937_64 eng_;
};

/// Coefficients c_k, k = -degree..degree (or 0..degree when analytic), drawn
/// uniformly in the square [-1,1]^2 and damped by 1/(1+|k|)^2.
struct TrigPolynomial {
    int degree = 0;
    bool analytic = false;
    std::vector<complex> coeffs;  // index k + degree

    complex coefficient(int k) const {
        if (k < -degree || k > degree) return {};
        return coeffs[static_cast<std::size_t>(k + degree)];
    }

    complex operator()(double theta) const {
        complex s = 0.0;
        for (int k = -degree; k <= degree; ++k) s += coefficient(k) * std::polar(1.0, k * theta);
        return s;
    }

    /// Harmonic (analytic when no negative frequencies) extension to the disk.
    complex extension(complex z) const {
        const double r = std::abs(z), t = std::arg(z);
        complex s = 0.0;
        for (int k = -degree; k <= degree; ++k) s += coefficient(k) * std::pow(r, std::abs(k)) * std::polar(1.0, k * t);
        return s;
    }

    BoundaryFunction sample(std::size_t n) const {
        return BoundaryFunction::sample_circle([this](double t) { return (*this)(t); }, n);
    }
};

inline TrigPolynomial random_trig_polynomial(SeededRng& rng, int degree, bool analytic = false) {
    TrigPolynomial p;
    p.degree = degree;
    p.analytic = analytic;
    p.coeffs.assign(static_cast<std::size_t>(2 * degree + 1), complex{});
    for (int k = -degree; k <= degree; ++k) {
        const double re = rng.uniform(-1.0, 1.0);
        const double im = rng.uniform(-1.0, 1.0);
        if (analytic && k < 0) continue;
        const double damp = 1.0 / ((1.0 + std::abs(k)) * (1.0 + std::abs(k)));
        p.coeffs[static_cast<std::size_t>(k + degree)] = complex(re, im) * damp;
    }
    return p;
}

inline std::vector<TrigPolynomial> trig_polynomial_corpus(std::uint64_t seed, std::size_t count, int degree,
                                                          bool analytic = false) {
    SeededRng rng(seed);
    std::vector<TrigPolynomial> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_trig_polynomial(rng, degree, analytic));
    return out;
}

}  // namespace vexhardy
