#pragma once

// Reference computations that share no code path with the library: adaptive
// Simpson integration, a direct O(N^2) DFT, and a scalar bisection.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    const bool converged = std::abs(delta) <= 15.0 * tol || std::abs(delta) <= 1e-15 * std::abs(whole);
    if (depth <= 0 || converged) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                               int max_depth = 40) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Simpson over consecutive breakpoints.
inline double piecewise_simpson(const std::function<double(double)>& f, const std::vector<double>& bp,
                                double tol = 1e-12) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) s += adaptive_simpson(f, bp[i], bp[i + 1], tol);
    return s;
}

/// c_k = (1/N) sum_j v_j exp(-i k 2 pi j / N)
inline std::complex<double> dft(const std::vector<std::complex<double>>& v, long k) {
    const double n = static_cast<double>(v.size());
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j)
        s += v[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(j) / n);
    return s / n;
}

/// Root of a decreasing g on [lo, hi] by plain bisection.
inline double bisect_decreasing(const std::function<double(double)>& g, double lo, double hi, int iters = 200) {
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
