#include "catch_amalgamated.hpp"

#include <cmath>

#include "oracles.hpp"
#include "vexhardy/halfplane.hpp"

using namespace vexhardy;
using Catch::Approx;

namespace {

const LineOptions coarse{32.0, 1.0 / 256.0};

// Integral over [X, inf) of P_y(x - t) (t/X)^-beta dt after t = X / s.
double tail_oracle(double x, double X, double y, double beta) {
    return oracle::adaptive_simpson(
        [&](double s) {
            if (s == 0.0) return 0.0;
            const double t = X / s;
            return poisson_kernel_halfplane(x - t, y) * std::pow(s, beta) * X / (s * s);
        },
        0.0, 1.0, 1e-13);
}

}  // namespace

TEST_CASE("half-plane Poisson kernel", "[halfplane]") {
    CHECK(poisson_kernel_halfplane(0.0, 1.0) == Approx(1.0 / pi));
    CHECK(poisson_kernel_mass(-1e9, 1e9, 0.3) == Approx(1.0).epsilon(1e-8));
    for (auto [a, b, y] : {std::tuple{-1.0, 2.0, 0.5}, {3.0, 4.0, 0.01}, {-5.0, -4.5, 2.0}}) {
        const double simpson =
            oracle::adaptive_simpson([y](double t) { return poisson_kernel_halfplane(t, y); }, a, b, 1e-14);
        CHECK(poisson_kernel_mass(a, b, y) == Approx(simpson).epsilon(1e-10));
        const double rising = oracle::adaptive_simpson(
            [&](double t) { return poisson_kernel_halfplane(t, y) * (t - a) / (b - a); }, a, b, 1e-14);
        CHECK(detail::ramp_weight(a, b, y, true) == Approx(rising).epsilon(1e-9));
        CHECK(detail::ramp_weight(a, b, y, true) + detail::ramp_weight(a, b, y, false) ==
              Approx(poisson_kernel_mass(a, b, y)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(poisson_kernel_halfplane(0.0, 0.0), DomainError);
}

TEST_CASE("tail integrals against quadrature", "[halfplane]") {
    for (auto [x, y] : {std::pair{0.0, 1e-3}, {0.0, 1.0}, {10.0, 0.5}, {-30.0, 4.0}, {63.9, 0.01}}) {
        for (double beta : {0.0, 0.5, 2.0}) {
            const double got = detail::right_tail_integral(x, 64.0, y, 1.0, beta);
            CHECK(got == Approx(tail_oracle(x, 64.0, y, beta)).epsilon(1e-6).margin(1e-14));
        }
    }
}

TEST_CASE("Poisson convolution", "[halfplane]") {
    const auto one = sample_line([](double) { return complex(1.0); }, 16.0, 1.0 / 64.0, PowerTail{0.0, 1.0, 1.0});
    for (double y : {0.01, 1.0, 100.0}) {
        const auto c = poisson_convolve(one, y);
        CHECK_FALSE(c.truncation_uncertain);
        double worst = 0.0;
        for (const auto& v : c.function.values()) worst = std::max(worst, std::abs(v - 1.0));
        CHECK(worst < 1e-12);
    }

    // P_y * P_1 = P_{1+y}
    const auto u = cauchy_line(coarse);
    const auto c = poisson_convolve(u, 0.5).function;
    double worst = 0.0;
    for (std::size_t j = 0; j < u.size(); j += 97) {
        const double x = u.nodes()[j];
        worst = std::max(worst, std::abs(c.values()[j].real() - pi * poisson_kernel_halfplane(x, 1.5)));
    }
    CHECK(worst < 1e-6);
    CHECK(std::abs(poisson_extension_at(u, 0.3, 0.5) - pi * poisson_kernel_halfplane(0.3, 1.5)) < 1e-6);

    // half value at the jumps keeps the interpolant centred on them
    auto indicator = [](double t) { return complex(std::abs(t) < 1.0 ? 1.0 : (std::abs(t) == 1.0 ? 0.5 : 0.0)); };
    const auto box = sample_line(indicator, 8.0, 1.0 / 1024.0);
    const auto cb = poisson_convolve(box, 0.1).function;
    for (std::size_t j = 0; j < box.size(); j += 311) {
        const double x = box.nodes()[j];
        const double exact = poisson_kernel_mass(-1.0 - x, 1.0 - x, 0.1);
        CHECK(cb.values()[j].real() == Approx(exact).margin(2e-5));
    }

    const auto shifted = BoundaryFunction::line({1.0, 2.0, 3.0}, {1.0, 1.0, 1.0}, PowerTail{2.0, 1.0, 1.0});
    CHECK_THROWS_AS(poisson_convolve(shifted, 1.0), InputError);
    const auto ragged = BoundaryFunction::line({-1.0, 0.0, 3.0}, {1.0, 1.0, 1.0});
    CHECK_THROWS_AS(poisson_convolve(ragged, 1.0), ContractError);
    const auto cut = sample_line([](double) { return complex(1.0); }, 4.0, 0.25);
    CHECK(poisson_convolve(cut, 1.0).truncation_uncertain);
}

TEST_CASE("approximate identity on the line", "[halfplane]") {
    const auto u = bump_line(coarse);
    for (const auto& p : {VariableExponent::constant(2.0, DomainKind::line), lh_demo_exponent()}) {
        const auto rep = approximate_identity_check(u, p, default_height_schedule());
        CHECK(rep.strictly_decreasing);
        CHECK(rep.uniformly_bounded);
        CHECK(rep.max_ratio <= 1.0 + 1e-6);
        CHECK(rep.deficits.back().second < 0.01 * rep.u_norm);
    }
    CHECK_THROWS_AS(approximate_identity_check(u, example_exponent_sec3(), default_height_schedule()), DomainError);
}

TEST_CASE("half-plane Hardy norms", "[halfplane]") {
    const auto p2 = VariableExponent::constant(2.0, DomainKind::line);
    HalfplaneHardyOptions opt;
    opt.grid = coarse;

    const auto shift = halfplane_hardy_norm(inverse_shift_halfplane(), p2, default_halfplane_schedule(), opt);
    CHECK(shift.member());
    CHECK(shift.hardy_norm == Approx(std::sqrt(pi / 2.0)).epsilon(2e-3));

    const auto constant = halfplane_hardy_norm(constant_halfplane(1.0), p2, default_halfplane_schedule(), opt);
    CHECK(constant.verdict == Verdict::non_member);

    const auto ext = poisson_extension_halfplane(bump_line(coarse));
    const auto rep = halfplane_hardy_norm(ext, lh_demo_exponent(), default_halfplane_schedule(), opt);
    CHECK(rep.member());
    CHECK(rep.hardy_norm <= luxemburg_norm(bump_line(coarse), lh_demo_exponent()).value * (1.0 + 1e-6));

    const auto doubled = halfplane_hardy_norm(scaled(ext, 2.0), lh_demo_exponent(), default_halfplane_schedule(), opt);
    CHECK(doubled.hardy_norm == Approx(2.0 * rep.hardy_norm).epsilon(1e-9));
}

TEST_CASE("pointwise bound on H_k", "[halfplane]") {
    HalfplaneHardyOptions opt;
    opt.grid = coarse;
    const std::vector<std::pair<double, double>> probes{{0.0, 1.0}, {3.0, 2.0}, {-10.0, 8.0}};
    const auto rep = hk_bound_check(cauchy_halfplane(), lh_demo_exponent(), 1.0, probes,
                                    default_halfplane_schedule(), opt);
    CHECK(rep.holds);
    CHECK(rep.R == 0.5);
    CHECK(rep.sup_observed <= rep.sup_bound);

    const std::vector<std::pair<double, double>> low{{0.0, 0.5}};
    CHECK_THROWS_AS(hk_bound_check(cauchy_halfplane(), lh_demo_exponent(), 1.0, low, default_halfplane_schedule(), opt),
                    PreconditionError);
}

TEST_CASE("boundary representation", "[halfplane]") {
    HalfplaneHardyOptions opt;
    opt.grid = coarse;
    const std::vector<double> xs{-3.0, 0.0, 0.7, 5.0};
    const std::vector<double> ys{0.1, 1.0, 4.0};
    const auto rep = boundary_representation_check(cauchy_halfplane(), cauchy_line(coarse), lh_demo_exponent(), xs, ys,
                                                   default_halfplane_schedule(), opt);
    CHECK(rep.residual < 1e-5);
    CHECK(rep.ratio == Approx(1.0).margin(0.01));
}
