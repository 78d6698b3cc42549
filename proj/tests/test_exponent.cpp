#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>

#include "vexhardy/exponent.hpp"

using namespace vexhardy;
using Catch::Approx;

namespace {

VariableExponent step_exponent() {
    return make_piecewise_exponent(DomainKind::circle, {Piece{0.0, pi / 2.0, Formula::constant(2.0)},
                                                        Piece{pi / 2.0, 1.5 * pi, Formula::constant(3.0)},
                                                        Piece{1.5 * pi, two_pi, Formula::constant(2.0)}});
}

}  // namespace

TEST_CASE("piecewise exponent validation", "[exponent]") {
    SECTION("gap between pieces") {
        CHECK_THROWS_AS(make_piecewise_exponent(DomainKind::circle, {Piece{0.0, 1.0, Formula::constant(2.0)},
                                                                     Piece{1.5, two_pi, Formula::constant(2.0)}}),
                        ConstructionError);
    }
    SECTION("overlapping pieces") {
        CHECK_THROWS_AS(make_piecewise_exponent(DomainKind::circle, {Piece{0.0, 2.0, Formula::constant(2.0)},
                                                                     Piece{1.5, two_pi, Formula::constant(2.0)}}),
                        ConstructionError);
    }
    SECTION("value below one") {
        CHECK_THROWS_AS(make_piecewise_exponent(DomainKind::circle, {Piece{0.0, two_pi, Formula::constant(0.5)}}),
                        RangeError);
        CHECK_THROWS_AS(make_piecewise_exponent(DomainKind::circle,
                                                {Piece{0.0, two_pi, Formula::cosine_offset(1.5)}}),
                        RangeError);
    }
    SECTION("not periodic") {
        CHECK_THROWS_AS(make_piecewise_exponent(DomainKind::circle, {Piece{0.0, pi, Formula::constant(2.0)},
                                                                     Piece{pi, two_pi, Formula::constant(3.0)}}),
                        PeriodicityError);
        CHECK_THROWS_AS(
            make_piecewise_exponent(DomainKind::circle, {Piece{0.0, two_pi, Formula::affine(0.1, 2.0)}}),
            PeriodicityError);
    }
    SECTION("line exponents must cover the whole line") {
        CHECK_THROWS_AS(make_piecewise_exponent(DomainKind::line, {Piece{-10.0, 10.0, Formula::constant(2.0)}}),
                        ConstructionError);
    }
}

TEST_CASE("the two-plateau example exponent", "[exponent]") {
    const auto p = example_exponent_sec3();
    CHECK(p(0.0) == 3.0);
    CHECK(p(pi / 3.0) == Approx(3.0).epsilon(1e-15));
    CHECK(p(2.0 * pi / 3.0) == Approx(2.0).epsilon(1e-15));
    CHECK(p(pi) == 2.0);
    CHECK(p(pi / 2.0) == Approx(2.5).epsilon(1e-15));
    CHECK(p(two_pi) == p(0.0));
    CHECK(p(-pi) == p(pi));

    const auto [lo, hi] = essential_bounds(p);
    CHECK(lo == Approx(2.0).margin(1e-12));
    CHECK(hi == Approx(3.0).margin(1e-12));
    CHECK(p.breakpoints().size() == 4);
}

TEST_CASE("essential bounds of a sampled cosine", "[exponent]") {
    const auto p = make_piecewise_exponent(DomainKind::circle, {Piece{0.0, two_pi, Formula::cosine_offset(2.5)}});
    CHECK(p.p_minus() == Approx(1.5).margin(1e-15));
    CHECK(p.p_plus() == Approx(3.5).margin(1e-15));
    double lo = 10.0, hi = 0.0;
    for (int j = 0; j < 4096; ++j) {
        const double v = p(two_pi * j / 4096.0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(p.p_minus() <= lo);
    CHECK(p.p_plus() >= hi);
}

TEST_CASE("conjugate exponent", "[exponent]") {
    CHECK(conjugate(VariableExponent::constant(3.0))(1.0) == Approx(1.5).epsilon(1e-15));
    const auto p = example_exponent_sec3();
    const auto q = conjugate(p);
    CHECK(q(pi) == Approx(2.0).epsilon(1e-15));
    CHECK(q(0.0) == Approx(1.5).epsilon(1e-15));
    CHECK(q.p_minus() == Approx(1.5).epsilon(1e-12));
    CHECK(q.p_plus() == Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(conjugate(VariableExponent::constant(1.0)), ConjugateUnboundedError);

    const auto qq = conjugate(q);
    for (int j = 0; j < 997; ++j) {
        const double t = two_pi * j / 997.0;
        CHECK(std::abs(qq(t) - p(t)) <= 1e-12);
        CHECK(std::abs(1.0 / p(t) + 1.0 / q(t) - 1.0) <= 1e-12);
    }
}

TEST_CASE("log-Holder estimates", "[exponent]") {
    CHECK_THROWS_AS(log_holder_constant(example_exponent_sec3(), 8), PreconditionError);
    CHECK(log_holder_constant(VariableExponent::constant(2.5), 256).c_log_estimate == 0.0);

    const auto p = example_exponent_sec3();
    double previous = 0.0;
    for (std::size_t n : {64, 128, 256, 512, 1024, 2048}) {
        const auto rep = log_holder_constant(p, n);
        CHECK(rep.c_log_estimate >= previous);
        CHECK(rep.c_log_estimate <= 1.0 / std::numbers::e);
        CHECK(rep.log_holder);
        previous = rep.c_log_estimate;
    }

    const auto step = step_exponent();
    const auto coarse = log_holder_constant(step, 256);
    const auto fine = log_holder_constant(step, 4096);
    CHECK(fine.c_log_estimate > coarse.c_log_estimate + 2.0);
    CHECK_FALSE(fine.log_holder);
}

TEST_CASE("decay condition at infinity", "[exponent]") {
    const auto p = lh_demo_exponent();
    REQUIRE(p.p_infinity().has_value());
    CHECK(*p.p_infinity() == 2.0);
    CHECK(p(0.0) == Approx(3.0));
    std::vector<double> grid;
    for (int k = -40; k <= 40; ++k) grid.push_back(std::sinh(k / 4.0));
    CHECK(lh_infinity_constant(p, 2.0, grid) == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(lh_infinity_constant(example_exponent_sec3(), 2.0, grid), DomainError);

    const auto rep = log_holder_constant(p, 1024);
    CHECK(rep.log_holder);
    REQUIRE(rep.c_infinity_estimate.has_value());
    CHECK(*rep.c_infinity_estimate == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("copies share the piece table", "[exponent]") {
    const auto p = example_exponent_sec3();
    const auto copy = p;
    CHECK(&copy.pieces() == &p.pieces());
}
