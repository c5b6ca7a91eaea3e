#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "basel/parametric.hpp"

using namespace basel;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPiSq = kPi * kPi;

// brute-force midpoint Riemann sum of the family integrand, step 1e-5,
// truncated at x = 40 (tail below 1e-17); independent of the quadrature path
double riemann_integral(double alpha) {
    const double step = 1e-5;
    const double cutoff = 40.0;
    const auto n = static_cast<long>(cutoff / step);
    double sum = 0.0;
    for (long i = n - 1; i >= 0; --i)
        sum += parametric_integrand(alpha, (i + 0.5) * step);
    return sum * step;
}
}  // namespace

TEST_CASE("closed-form constants are internally consistent") {
    const ClosedFormConstants k = closed_form_constants();
    REQUIRE(k.c == k.basel);
    REQUIRE(k.c == Approx(kPiSq / 6.0).margin(1e-15));
    REQUIRE(k.i_zero == Approx(-kPiSq / 8.0 + k.c).margin(1e-15));
    REQUIRE(k.i_neg2 == Approx(-0.5 * kPiSq + k.c).margin(1e-15));
}

TEST_CASE("alpha validation") {
    REQUIRE_NOTHROW(AlphaParam(2.0));
    REQUIRE_NOTHROW(AlphaParam(-2.0));
    REQUIRE_THROWS_AS(AlphaParam(2.0000001), AlphaOutOfRange);
    REQUIRE_THROWS_AS(AlphaParam(-2.5), AlphaOutOfRange);
    REQUIRE_THROWS_AS(AlphaParam(std::numeric_limits<double>::quiet_NaN()),
                      AlphaOutOfRange);
}

TEST_CASE("stable arccos of alpha/2") {
    for (double a : {-1.8, -0.5, 0.0, 0.3, 1.7})
        REQUIRE(acos_half(a) == Approx(std::acos(0.5 * a)).margin(1e-15));
    REQUIRE(acos_half(2.0) == Approx(0.0).margin(1e-15));
    REQUIRE(acos_half(-2.0) == Approx(kPi).margin(1e-15));
    REQUIRE(acos_half(1.999999) == Approx(std::acos(0.5 * 1.999999)).epsilon(1e-10));
}

TEST_CASE("direct integral of the family") {
    SECTION("alpha = 2 gives pi^2/6") {
        REQUIRE(integral_direct(AlphaParam(2.0)).value ==
                Approx(kPiSq / 6.0).margin(1e-9));
    }
    SECTION("alpha = 0 gives pi^2/24") {
        REQUIRE(integral_direct(AlphaParam(0.0)).value ==
                Approx(kPiSq / 24.0).margin(1e-9));
    }
    SECTION("alpha = -2 gives -pi^2/3 through the log singularity") {
        REQUIRE(integral_direct(AlphaParam(-2.0)).value ==
                Approx(-kPiSq / 3.0).margin(1e-8));
    }
    SECTION("alpha = 1 gives pi^2/9, cross-checked by Riemann summation") {
        const double quad = integral_direct(AlphaParam(1.0)).value;
        REQUIRE(quad == Approx(kPiSq / 9.0).margin(1e-9));
        REQUIRE(riemann_integral(1.0) == Approx(quad).margin(5e-9));
    }
}

TEST_CASE("closed form of the integral") {
    REQUIRE(integral_closed(AlphaParam(2.0)) == Approx(kPiSq / 6.0).margin(1e-15));
    REQUIRE(integral_closed(AlphaParam(0.0)) == Approx(kPiSq / 24.0).margin(1e-15));
    REQUIRE(integral_closed(AlphaParam(-2.0)) == Approx(-kPiSq / 3.0).margin(1e-14));
    REQUIRE(integral_closed(AlphaParam(1.0)) == Approx(kPiSq / 9.0).margin(1e-15));
    REQUIRE(integral_closed(AlphaParam(-1.0)) == Approx(-kPiSq / 18.0).margin(1e-15));
}

TEST_CASE("derivative by quadrature") {
    SECTION("alpha = 0 gives pi/4") {
        REQUIRE(derivative_integral(AlphaParam(0.0)).value ==
                Approx(kPi / 4.0).margin(1e-10));
    }
    SECTION("alpha = 2 gives 1/2") {
        REQUIRE(derivative_integral(AlphaParam(2.0)).value ==
                Approx(0.5).margin(1e-10));
    }
    SECTION("alpha = 1 matches the arctan antiderivative difference") {
        // independent high-precision route: (2/sqrt(3))(arctan(3/sqrt 3) - arctan(1/sqrt 3))
        const double s = std::sqrt(3.0);
        const double oracle = 2.0 / s * (std::atan(3.0 / s) - std::atan(1.0 / s));
        REQUIRE(oracle == Approx(kPi / (3.0 * s)).margin(1e-15));
        REQUIRE(derivative_integral(AlphaParam(1.0)).value ==
                Approx(oracle).margin(1e-10));
    }
    SECTION("diverges at alpha = -2 by precondition") {
        REQUIRE_THROWS_AS(derivative_integral(AlphaParam(-2.0)), DivergentIntegral);
    }
}

TEST_CASE("derivative in closed form") {
    REQUIRE(derivative_closed(AlphaParam(0.0)) == Approx(kPi / 4.0).margin(1e-15));
    REQUIRE(derivative_closed(AlphaParam(1.0)) ==
            Approx(kPi / (3.0 * std::sqrt(3.0))).margin(1e-15));
    REQUIRE(derivative_closed(AlphaParam(1.9)) ==
            Approx(0.5085036526400223).margin(1e-15));
    SECTION("the removable limit at alpha = 2 is exactly 1/2") {
        REQUIRE(derivative_closed(AlphaParam(2.0)) == 0.5);
    }
    SECTION("the formula approaches the limit from below alpha = 2") {
        double prev = 1.0;
        for (double eps : {1e-2, 1e-4, 1e-6}) {
            const double gap = std::abs(derivative_closed(AlphaParam(2.0 - eps)) - 0.5);
            REQUIRE(gap < prev);
            prev = gap;
        }
        REQUIRE(prev < 1e-7);
    }
    SECTION("diverges at alpha = -2") {
        REQUIRE_THROWS_AS(derivative_closed(AlphaParam(-2.0)), DivergentValue);
    }
}

TEST_CASE("derivative by central difference with Richardson step") {
    REQUIRE(derivative_finite_difference(AlphaParam(0.0), 1e-3) ==
            Approx(kPi / 4.0).margin(1e-6));
    REQUIRE(derivative_finite_difference(AlphaParam(1.0), 1e-3) ==
            Approx(kPi / (3.0 * std::sqrt(3.0))).margin(1e-6));
    REQUIRE(derivative_finite_difference(AlphaParam(1.9), 1e-4) ==
            Approx(derivative_closed(AlphaParam(1.9))).margin(1e-5));
    SECTION("step validation") {
        REQUIRE_THROWS_AS(derivative_finite_difference(AlphaParam(1.95), 0.1),
                          StepOutOfRange);
        REQUIRE_THROWS_AS(derivative_finite_difference(AlphaParam(-1.95), 0.1),
                          StepOutOfRange);
        REQUIRE_THROWS_AS(derivative_finite_difference(AlphaParam(0.0), 0.0),
                          StepOutOfRange);
        REQUIRE_THROWS_AS(derivative_finite_difference(AlphaParam(0.0), -1e-3),
                          StepOutOfRange);
        REQUIRE_THROWS_AS(derivative_finite_difference(AlphaParam(2.0), 1e-3),
                          StepOutOfRange);
    }
}

TEST_CASE("three derivative routes agree") {
    SECTION("spot checks") {
        const DerivativeTriple at_zero = derivative_triple(AlphaParam(0.0));
        REQUIRE(at_zero.by_quadrature == Approx(kPi / 4.0).margin(1e-9));
        REQUIRE(at_zero.by_closed_form == Approx(kPi / 4.0).margin(1e-15));
        REQUIRE(at_zero.by_finite_difference == Approx(kPi / 4.0).margin(1e-6));
        REQUIRE(at_zero.max_pairwise_gap < 1e-6);

        REQUIRE(derivative_triple(AlphaParam(-1.5)).max_pairwise_gap < 1e-6);

        const DerivativeTriple at_one = derivative_triple(AlphaParam(1.0));
        const double expected = kPi / (3.0 * std::sqrt(3.0));
        REQUIRE(at_one.by_quadrature == Approx(expected).margin(1e-6));
        REQUIRE(at_one.by_closed_form == Approx(expected).margin(1e-15));
        REQUIRE(at_one.by_finite_difference == Approx(expected).margin(1e-6));
    }
    SECTION("gap field equals the max pairwise difference") {
        const DerivativeTriple t = derivative_triple(AlphaParam(0.7));
        const double expected =
            std::max({std::abs(t.by_quadrature - t.by_closed_form),
                      std::abs(t.by_quadrature - t.by_finite_difference),
                      std::abs(t.by_closed_form - t.by_finite_difference)});
        REQUIRE(t.max_pairwise_gap == expected);
    }
    SECTION("39-point grid stays under 1e-5") {
        for (const AlphaParam& a : alpha_grid(-1.9, 1.9, 39)) {
            INFO("alpha = " << a.value());
            REQUIRE(derivative_triple(a).max_pairwise_gap < 1e-5);
        }
    }
}

TEST_CASE("antiderivative differentiates back to the integrand") {
    const CheckResult at_zero = antiderivative_check(AlphaParam(0.0), 101);
    REQUIRE(at_zero.passed);
    REQUIRE(at_zero.actual < 1e-6);
    REQUIRE(antiderivative_check(AlphaParam(1.0), 101).passed);
    REQUIRE(antiderivative_check(AlphaParam(-1.9), 101).passed);
    REQUIRE_THROWS_AS(antiderivative_check(AlphaParam(2.0), 101), AlphaOutOfRange);
    REQUIRE_THROWS_AS(antiderivative_check(AlphaParam(0.0), 0), std::invalid_argument);
}

TEST_CASE("simplification identities") {
    SECTION("spot values") {
        // arctan(1) - arctan(0) = arctan(1)
        REQUIRE(std::atan(1.0) - std::atan(0.0) ==
                Approx(std::atan((1.0 - 0.0) / (1.0 + 0.0))).margin(1e-15));
        // (x, y) = (3, 1/sqrt 3), both sides evaluated independently
        const double x = 3.0, y = 1.0 / std::sqrt(3.0);
        REQUIRE(std::atan(x) - std::atan(y) ==
                Approx(std::atan((x - y) / (1.0 + x * y))).margin(1e-15));
        // u = pi/2: sqrt(1/1) = tan(pi/4) = 1
        const double u = kPi / 2.0;
        REQUIRE(std::sqrt((1.0 - std::cos(u)) / (1.0 + std::cos(u))) ==
                Approx(std::tan(u / 2.0)).margin(1e-15));
    }
    SECTION("1000 random samples pass at 1e-12") {
        const CheckReport report = identity_checks(1000);
        REQUIRE(report.total == 2);
        REQUIRE(report.failures == 0);
        REQUIRE(report.results[0].name == "arctan_difference_identity");
        REQUIRE(report.results[1].name == "half_angle_identity");
        for (const CheckResult& r : report.results) {
            REQUIRE(r.passed);
            REQUIRE(r.actual < 1e-12);
        }
    }
    SECTION("samples must be at least 2") {
        REQUIRE_THROWS_AS(identity_checks(1), std::invalid_argument);
    }
}

TEST_CASE("constant inference") {
    SECTION("single point grids") {
        const std::vector<AlphaParam> zero{AlphaParam(0.0)};
        const ConstantEstimate at_zero = infer_constant(zero);
        REQUIRE(at_zero.mean == Approx(kPiSq / 6.0).margin(1e-9));
        REQUIRE(at_zero.spread == 0.0);
        const std::vector<AlphaParam> two{AlphaParam(2.0)};
        REQUIRE(infer_constant(two).mean == Approx(kPiSq / 6.0).margin(1e-9));
    }
    SECTION("21-point grid is flat") {
        const auto grid = alpha_grid(-1.9, 2.0, 21);
        const ConstantEstimate est = infer_constant(grid);
        REQUIRE(est.mean == Approx(kPiSq / 6.0).margin(1e-8));
        REQUIRE(est.spread < 1e-8);
    }
    SECTION("preconditions") {
        const std::vector<AlphaParam> empty;
        REQUIRE_THROWS_AS(infer_constant(empty), std::invalid_argument);
        const std::vector<AlphaParam> bad{AlphaParam(-2.0)};
        REQUIRE_THROWS_AS(infer_constant(bad), AlphaOutOfRange);
    }
}

TEST_CASE("symmetry pins the constant") {
    const auto checks = symmetry_checks();
    REQUIRE(checks[0].name == "symmetry_quarter");
    REQUIRE(checks[0].passed);
    REQUIRE(checks[0].abs_error < 1e-9);
    REQUIRE(checks[1].name == "symmetry_factorization_pos");
    REQUIRE(checks[1].passed);
    REQUIRE(checks[1].abs_error < 1e-9);
    REQUIRE(checks[2].name == "symmetry_factorization_neg");
    REQUIRE(checks[2].passed);
    REQUIRE(checks[2].abs_error < 1e-7);
}

TEST_CASE("reconstruction from the derivative is non-circular") {
    SECTION("target 2 returns the anchor untouched") {
        const double anchor = 4.0 * integral_direct(AlphaParam(0.0)).value;
        REQUIRE(reconstruct_integral(AlphaParam(2.0), 8) == anchor);
    }
    SECTION("reaches pi^2/24 at alpha 0") {
        REQUIRE(reconstruct_integral(AlphaParam(0.0), 256) ==
                Approx(kPiSq / 24.0).margin(1e-6));
    }
    SECTION("reaches -pi^2/18 at alpha -1") {
        REQUIRE(reconstruct_integral(AlphaParam(-1.0), 256) ==
                Approx(-kPiSq / 18.0).margin(1e-6));
    }
    SECTION("error falls 4th order in the step count") {
        const double exact = kPiSq / 24.0;
        const double coarse = std::abs(reconstruct_integral(AlphaParam(0.0), 8) - exact);
        const double fine = std::abs(reconstruct_integral(AlphaParam(0.0), 16) - exact);
        const double ratio = coarse / fine;
        INFO("ratio " << ratio);
        REQUIRE(ratio > 8.0);
        REQUIRE(ratio < 32.0);
    }
    SECTION("preconditions") {
        REQUIRE_THROWS_AS(reconstruct_integral(AlphaParam(0.0), 7), StepCountTooSmall);
        REQUIRE_THROWS_AS(reconstruct_integral(AlphaParam(-2.0), 256), AlphaOutOfRange);
    }
}

TEST_CASE("closed form matches quadrature across the range") {
    double worst = 0.0;
    for (const AlphaParam& a : alpha_grid(-1.99, 2.0, 41)) {
        const double gap = std::abs(integral_direct(a).value - integral_closed(a));
        worst = std::max(worst, gap);
        INFO("alpha = " << a.value());
        REQUIRE(gap < (a.value() < -1.9 ? 1e-6 : 1e-7));
    }
    REQUIRE(worst < 1e-7);  // the whole grid in fact meets the tighter bound
}

TEST_CASE("integral is strictly increasing in alpha") {
    const auto grid = alpha_grid(-2.0, 2.0, 17);
    double prev_closed = -std::numeric_limits<double>::infinity();
    double prev_direct = -std::numeric_limits<double>::infinity();
    for (const AlphaParam& a : grid) {
        const double closed = integral_closed(a);
        const double direct = integral_direct(a).value;
        REQUIRE(closed > prev_closed);
        REQUIRE(direct > prev_direct);
        prev_closed = closed;
        prev_direct = direct;
    }
}

TEST_CASE("alpha grids hit their endpoints exactly") {
    const auto grid = alpha_grid(-1.99, 2.0, 41);
    REQUIRE(grid.size() == 41);
    REQUIRE(grid.front().value() == -1.99);
    REQUIRE(grid.back().value() == 2.0);
    REQUIRE(alpha_grid(0.5, 1.0, 1).size() == 1);
    REQUIRE_THROWS_AS(alpha_grid(0.0, 1.0, 0), std::invalid_argument);
}
