#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "vexhardy/error.hpp"

namespace vexhardy {

/// Least-squares line through (log x, log y).
struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// root-mean-square residual in log y
    double residual = 0.0;
};

inline LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw PreconditionError("log-log fit needs at least two paired points");
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw PreconditionError("log-log fit needs positive data");
        sx += std::log(x[i]);
        sy += std::log(y[i]);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(x[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y[i]) - my);
    }
    if (sxx == 0.0) throw PreconditionError("log-log fit needs distinct abscissae");
    LogLogFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::log(y[i]) - (f.intercept + f.slope * std::log(x[i]));
        ss += r * r;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

}  // namespace vexhardy
