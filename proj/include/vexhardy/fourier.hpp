#pragma once

// Discrete Fourier coefficients on the uniform circle grid, backed by FFTW.
//   c_k = (1/N) sum_j f(theta_j) exp(-i k theta_j),  k = -N/2 .. N/2-1

#include <algorithm>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "vexhardy/boundary_function.hpp"
#include "vexhardy/error.hpp"

namespace vexhardy {

namespace detail {

// FFTW's planner is not thread-safe; execution of a distinct plan is.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

inline void fft_inplace(std::vector<complex>& data, int sign) {
    // aligned copy: the same codelets run on every call
    const std::size_t n = data.size();
    std::unique_ptr<fftw_complex, decltype(&fftw_free)> buf(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)), &fftw_free);
    if (!buf) throw Error("FFTW failed to allocate a buffer");
    std::copy(data.begin(), data.end(), reinterpret_cast<complex*>(buf.get()));
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), buf.get(), buf.get(), sign, FFTW_ESTIMATE);
    }
    if (!plan) throw Error("FFTW failed to create a plan");
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    const auto* out = reinterpret_cast<const complex*>(buf.get());
    std::copy(out, out + n, data.begin());
}

}  // namespace detail

/// Coefficient table indexed k = -N/2 .. N/2-1.
class FourierCoefficients {
public:
    explicit FourierCoefficients(std::size_t n) : c_(n) {}

    std::size_t size() const noexcept { return c_.size(); }
    long min_index() const noexcept { return -static_cast<long>(c_.size() / 2); }
    long max_index() const noexcept { return static_cast<long>(c_.size() / 2) - 1; }

    complex operator[](long k) const { return c_[slot(k)]; }
    complex& operator[](long k) { return c_[slot(k)]; }

    /// storage in FFT order (k >= 0 first, then negative k)
    const std::vector<complex>& fft_order() const noexcept { return c_; }
    std::vector<complex>& fft_order() noexcept { return c_; }

private:
    std::size_t slot(long k) const {
        if (k < min_index() || k > max_index()) throw DomainError("Fourier index out of range");
        return k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(k + static_cast<long>(c_.size()));
    }
    std::vector<complex> c_;
};

inline FourierCoefficients fourier_coefficients(const BoundaryFunction& f) {
    if (!f.uniform_circle()) throw ContractError("Fourier coefficients need the uniform circle grid");
    FourierCoefficients c(f.size());
    auto& data = c.fft_order();
    data = f.values();
    detail::fft_inplace(data, FFTW_FORWARD);
    const double inv = 1.0 / static_cast<double>(f.size());
    for (auto& x : data) x *= inv;
    return c;
}

/// Inverse of fourier_coefficients: samples sum_k c_k exp(i k theta_j).
inline BoundaryFunction synthesize(const FourierCoefficients& c) {
    std::vector<complex> data = c.fft_order();
    detail::fft_inplace(data, FFTW_BACKWARD);
    return BoundaryFunction::circle(std::move(data));
}

}  // namespace vexhardy
