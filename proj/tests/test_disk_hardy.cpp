#include "catch_amalgamated.hpp"

#include <cmath>

#include "oracles.hpp"
#include "vexhardy/disk_hardy.hpp"

using namespace vexhardy;
using Catch::Approx;

namespace {

HardyOptions small_grid() {
    HardyOptions opt;
    opt.grid_size = 4096;
    return opt;
}

// ||(1 - z)^-s at radius r||_2 from the binomial series
double power_series_norm(double s, double r) {
    double a = 1.0, sum = 0.0, rk = 1.0;
    for (int k = 0; k < 2000000 && rk > 1e-18; ++k) {
        sum += a * a * rk;
        a *= (k + s) / (k + 1.0);
        rk *= r * r;
    }
    return std::sqrt(two_pi * sum);
}

BoundaryFunction step_function(std::size_t n) {
    return BoundaryFunction::sample_circle([](double t) { return t < pi ? 1.0 : -0.5; }, n);
}

}  // namespace

TEST_CASE("Poisson kernel", "[disk]") {
    CHECK(poisson_kernel(0.0, std::polar(1.0, 2.0)) == Approx(1.0));
    const complex z(0.3, -0.6);
    for (double t : {0.0, 1.0, 4.0}) {
        const complex zeta = std::polar(1.0, t);
        CHECK(poisson_kernel(z, zeta) == Approx(std::real((zeta + z) / (zeta - z))).epsilon(1e-13));
    }
    const double mass =
        oracle::adaptive_simpson([&](double t) { return poisson_kernel(z, std::polar(1.0, t)); }, 0.0, two_pi, 1e-12) /
        two_pi;
    CHECK(mass == Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(poisson_kernel(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(poisson_kernel(0.5, 2.0), DomainError);
}

TEST_CASE("Poisson dilation as a Fourier multiplier", "[disk]") {
    const auto e3 = BoundaryFunction::sample_circle([](double t) { return std::polar(1.0, -3.0 * t); }, 64);
    const auto d = poisson_dilate(e3, 0.5);
    for (std::size_t j = 0; j < 64; ++j) CHECK(std::abs(d.values()[j] - 0.125 * e3.values()[j]) < 1e-15);

    SeededRng rng(3);
    const auto poly = random_trig_polynomial(rng, 10);
    const auto f = poly.sample(256);
    const auto fr = poisson_dilate(f, 0.8);
    for (std::size_t j = 0; j < 256; ++j)
        CHECK(std::abs(fr.values()[j] - poly.extension(std::polar(0.8, f.nodes()[j]))) < 1e-13);

    const auto a = poisson_dilate(poisson_dilate(f, 0.7), 0.6);
    const auto b = poisson_dilate(f, 0.42);
    for (std::size_t j = 0; j < 256; ++j) CHECK(std::abs(a.values()[j] - b.values()[j]) < 1e-14);

    // Poisson integral of the step by direct quadrature of the kernel
    const auto s = step_function(1 << 14);
    const auto sr = poisson_dilate(s, 0.5);
    for (std::size_t j : {3000u, 4096u, 9000u}) {
        const complex z = std::polar(0.5, s.nodes()[j]);
        auto kern = [&](double t) { return poisson_kernel(z, std::polar(1.0, t)); };
        const double exact = (oracle::adaptive_simpson(kern, 0.0, pi, 1e-13) -
                              0.5 * oracle::adaptive_simpson(kern, pi, two_pi, 1e-13)) /
                             two_pi;
        CHECK(sr.values()[j].real() == Approx(exact).margin(1e-4));
    }

    CHECK_THROWS_AS(poisson_dilate(f, 1.0), DomainError);
}

TEST_CASE("Poisson integrals converge in norm", "[disk]") {
    const auto p = example_exponent_sec3();
    const auto radii = dyadic_radii(1, 10);
    const auto rep = poisson_convergence_check(step_function(1 << 14), p, radii);
    REQUIRE(rep.deficits.size() == radii.size());
    CHECK(rep.strictly_decreasing);
    CHECK(rep.uniformly_bounded);
    CHECK(rep.max_ratio <= 1.0 + 1e-9);
    CHECK(rep.deficits.back().second < 0.1 * rep.deficits.front().second);

    const auto step = make_piecewise_exponent(DomainKind::circle, {Piece{0.0, pi, Formula::constant(2.0)},
                                                                   Piece{pi, two_pi, Formula::constant(2.0)}});
    CHECK_NOTHROW(poisson_convergence_check(step_function(256), step, radii));
}

TEST_CASE("Szego projection", "[disk]") {
    SeededRng rng(5);
    const auto poly = random_trig_polynomial(rng, 6);
    const auto f = poly.sample(128);
    const auto kf = szego_project(f);
    const auto ck = fourier_coefficients(kf);
    const auto cr = fourier_coefficients(f.with_values([&] {
        std::vector<complex> v(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) v[j] = f.values()[j] - kf.values()[j];
        return v;
    }()));
    for (long k = -6; k <= 6; ++k) {
        if (k >= 0) {
            CHECK(std::abs(ck[k] - poly.coefficient(static_cast<int>(k))) < 1e-14);
            CHECK(std::abs(cr[k]) < 1e-14);
        } else {
            CHECK(std::abs(ck[k]) < 1e-14);
            CHECK(std::abs(cr[k] - poly.coefficient(static_cast<int>(k))) < 1e-14);
        }
    }
    const auto kkf = szego_project(kf);
    for (std::size_t j = 0; j < kf.size(); ++j) CHECK(std::abs(kkf.values()[j] - kf.values()[j]) < 1e-14);

    const auto l2 = szego_boundedness_experiment(VariableExponent::constant(2.0), 50, 9);
    CHECK(l2.max_ratio <= 1.0 + 1e-9);
    const auto var = szego_boundedness_experiment(example_exponent_sec3(), 50, 9);
    CHECK(var.bounded);
    CHECK(var.trials == 50);
}

TEST_CASE("analytic samplers", "[disk]") {
    const auto poly = polynomial_sampler({1.0, complex(0.0, 2.0), -0.5});
    const complex z(0.3, 0.2);
    CHECK(std::abs(poly(z) - (1.0 + complex(0.0, 2.0) * z - 0.5 * z * z)) < 1e-15);
    CHECK(std::abs(reproduce_at(poly, z) - poly(z)) < 1e-13);
    CHECK(cauchy_riemann_residual(poly) < 1e-7);

    const auto kern = kernel_sampler(complex(0.5, 0.5));
    CHECK(std::abs(reproduce_at(kern, complex(-0.2, 0.4), 1024) - kern(complex(-0.2, 0.4))) < 1e-12);
    CHECK_THROWS_AS(kernel_sampler(1.0), DomainError);

    const auto u = BoundaryFunction::sample_circle([](double t) { return std::cos(t); }, 64);
    const auto harmonic = poisson_extension_sampler(u);
    CHECK(harmonic.kind == FunctionKind::harmonic);
    CHECK_THROWS_AS(reproduce_at(harmonic, 0.1), ContractError);
    CHECK(cauchy_riemann_residual(harmonic) > 0.1);

    // mean value property on |z| = r
    const auto power = power_sampler(0.0, 0.4);
    for (double r : {0.5, 0.9}) {
        const auto fr = sample_dilation(harmonic, r, 256);
        complex mean = 0.0;
        for (const auto& v : fr.values()) mean += v;
        CHECK(std::abs(mean / 256.0 - harmonic(0.0)) < 1e-14);
        const auto pr = sample_dilation(power, r, 1024);
        complex pm = 0.0;
        for (std::size_t i = 0; i < pr.size(); ++i) pm += pr.weights()[i] * pr.values()[i];
        CHECK(std::abs(pm / two_pi - 1.0) < 1e-10);
    }

    // five-point Laplacian is O(h^2) for harmonic functions
    const auto lap1 = std::abs(discrete_laplacian(power, complex(0.2, 0.1), 1e-2));
    const auto lap2 = std::abs(discrete_laplacian(power, complex(0.2, 0.1), 5e-3));
    CHECK(lap1 < 1e-3);
    CHECK(lap2 < lap1 / 3.0);
}

TEST_CASE("Hardy norm verdicts", "[disk]") {
    const auto p2 = VariableExponent::constant(2.0);
    const auto radii = default_radius_schedule();

    const auto c = hardy_norm(constant_sampler(1.0), p2, radii, small_grid());
    CHECK(c.member());
    CHECK(c.hardy_norm == Approx(std::sqrt(two_pi)).epsilon(1e-9));

    // (1 - z)^-s is in H^2 exactly when 2s < 1
    const auto in = hardy_norm(power_sampler(0.0, 0.45), p2, radii, small_grid());
    CHECK(in.member());
    // sum_k binom(k+s-1,k)^2 = Gamma(1-2s)/Gamma(1-s)^2, times 2 pi
    const double exact = std::sqrt(two_pi * std::tgamma(0.1) / std::pow(std::tgamma(0.55), 2));
    CHECK(in.hardy_norm <= exact * (1.0 + 1e-6));

    const auto out = hardy_norm(power_sampler(0.0, 0.6), p2, radii, small_grid());
    CHECK(out.verdict == Verdict::non_member);
    REQUIRE(out.growth.has_value());
    for (const auto& pt : out.norms_by_radius)
        CHECK(pt.norm.value == Approx(power_series_norm(0.6, pt.parameter)).epsilon(1e-6));
    for (const auto& pt : in.norms_by_radius)
        CHECK(pt.norm.value == Approx(power_series_norm(0.45, pt.parameter)).epsilon(1e-6));

    const std::vector<double> bad{0.5, 0.3};
    CHECK_THROWS_AS(hardy_norm(constant_sampler(1.0), p2, bad), PreconditionError);
    CHECK_THROWS_AS(hardy_norm(constant_sampler(1.0), VariableExponent::constant(2.0, DomainKind::line), radii),
                    DomainError);
}

TEST_CASE("classification rules", "[disk]") {
    auto make = [](std::vector<double> norms) {
        HardyReport rep;
        double a = 0.5;
        for (double v : norms) {
            ScheduleNorm s;
            s.abscissa = a;
            s.parameter = 1.0 - a;
            s.norm.value = v;
            s.modular = v * v;
            rep.norms_by_radius.push_back(s);
            a *= 0.5;
        }
        classify(rep, {});
        return rep;
    };
    CHECK(make({1.0, 1.5, 1.8, 1.9, 1.95, 1.97}).verdict == Verdict::member);
    CHECK(make({1.0, 2.0, 4.0, 8.0, 16.0, 32.0}).verdict == Verdict::non_member);
    CHECK(make({1.0, 1.0, 1.0, 1.3, 1.0, 1.3}).verdict == Verdict::inconclusive);

    HardyReport inf = make({1.0, 2.0, 3.0});
    inf.norms_by_radius[1].norm = NormResult::infinite_norm();
    classify(inf, {});
    CHECK(inf.verdict == Verdict::non_member);
    CHECK(inf.hardy_norm_infinite);
}

TEST_CASE("boundary recovery and inclusions", "[disk]") {
    SeededRng rng(21);
    const auto poly = random_trig_polynomial(rng, 8);
    const auto u = poly.sample(512);
    const auto rec = boundary_recovery_check(poisson_extension_sampler(u), u, example_exponent_sec3());
    CHECK(rec.max_deviation < 1e-2);
    CHECK(rec.norm_deviation < 1e-2);

    const auto inc =
        inclusion_check(power_sampler(0.0, 0.2), example_exponent_sec3(), dyadic_radii(1, 8), small_grid());
    CHECK(inc.holds);
    CHECK(inc.constant <= 1.0 + two_pi);
}

TEST_CASE("two-plateau power functions", "[disk]") {
    CHECK_THROWS_AS(sec3_example_report(2.0, 0.05, default_radius_schedule()), PreconditionError);
    CHECK_THROWS_AS(sec3_example_report(3.5, 0.05, default_radius_schedule()), PreconditionError);
    CHECK_THROWS_AS(sec3_example_report(2.5, 0.2, default_radius_schedule()), PreconditionError);

    const auto rep = sec3_example_report(2.5, 0.05, default_radius_schedule(), small_grid());
    CHECK(rep.f_report.member());
    CHECK(rep.g_report.verdict == Verdict::non_member);
    CHECK(rep.f_constant_report.verdict == Verdict::non_member);
    CHECK(rep.f_local_exponent < 1.0);
    CHECK(rep.g_local_exponent > 1.0);
    REQUIRE(rep.g_report.modular_growth.has_value());
    CHECK(rep.g_report.modular_growth->slope == Approx(rep.g_predicted_growth).margin(0.05));

    const auto edge = sec3_example_report(3.0, 0.01, default_radius_schedule(), small_grid());
    CHECK(edge.f_report.member());
    CHECK_FALSE(edge.g_report.member());
    CHECK(edge.g_local_exponent > 1.0);
}
