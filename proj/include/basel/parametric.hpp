#pragma once

// The parametric-integral engine around
//     I(a) = integral_0^inf ln(1 + a e^{-x} + e^{-2x}) dx,  a in [-2, 2]:
// direct quadrature, the closed form -(1/2) arccos(a/2)^2 + pi^2/6, the
// derivative by three independent routes, the symmetry that fixes the
// integration constant, and a non-circular reconstruction of I from its
// derivative.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "basel/checks.hpp"
#include "basel/quadrature.hpp"

namespace basel {

struct AlphaOutOfRange : std::domain_error {
    using std::domain_error::domain_error;
};
struct DivergentIntegral : std::domain_error {
    using std::domain_error::domain_error;
};
struct DivergentValue : std::domain_error {
    using std::domain_error::domain_error;
};
struct StepOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct StepCountTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The family parameter, validated to [-2, 2] on construction. Individual
/// operations exclude whichever endpoint is singular for them.
class AlphaParam {
public:
    explicit AlphaParam(double v) : value_(v) {
        if (!(v >= -2.0 && v <= 2.0))
            throw AlphaOutOfRange("alpha must lie in [-2, 2], got " + std::to_string(v));
    }
    double value() const { return value_; }

private:
    double value_;
};

struct ClosedFormConstants {
    double c;       // integration constant of the closed form
    double basel;   // sum of 1/n^2
    double i_zero;  // integral value at alpha = 0
    double i_neg2;  // integral value at alpha = -2
};

inline constexpr ClosedFormConstants closed_form_constants() {
    constexpr double pi_sq = std::numbers::pi * std::numbers::pi;
    return {pi_sq / 6.0, pi_sq / 6.0, pi_sq / 24.0, -pi_sq / 3.0};
}

struct DerivativeTriple {
    double by_quadrature = 0.0;
    double by_closed_form = 0.0;
    double by_finite_difference = 0.0;
    double max_pairwise_gap = 0.0;
};

struct ConstantEstimate {
    double mean = 0.0;
    double spread = 0.0;  // max - min over the grid
};

inline constexpr double kDefaultDerivativeStep = 1e-3;

/// arccos(alpha/2), switching to a half-angle atan2 form near the endpoints
/// where 1 - (alpha/2)^2 loses precision.
inline double acos_half(double alpha) {
    if (std::abs(alpha) > 1.9)
        return 2.0 * std::atan2(std::sqrt(2.0 - alpha), std::sqrt(2.0 + alpha));
    return std::acos(0.5 * alpha);
}

/// ln(1 + a e^{-x} + e^{-2x}). For small x the argument is rewritten as
/// (2+a) e^{-x} + (1 - e^{-x})^2, a sum of nonnegative terms, so the value
/// stays accurate down to a = -2 where the plain form cancels to zero.
inline double parametric_integrand(double alpha, double x) {
    const double u = std::exp(-x);
    if (u > 0.5) {
        const double w = -std::expm1(-x);  // 1 - e^{-x}
        return std::log((2.0 + alpha) * u + w * w);
    }
    return std::log1p(u * (alpha + u));
}

/// I(a) by direct quadrature. The endpoint log singularity at a = -2 is
/// absorbed by the quadrature scheme.
inline QuadResult integral_direct(AlphaParam alpha, const QuadConfig& config = {}) {
    const double a = alpha.value();
    return integrate([a](double x) { return parametric_integrand(a, x); },
                     Domain::semi_infinite(0.0), config);
}

/// Closed form -(1/2) arccos(a/2)^2 + pi^2/6.
inline double integral_closed(AlphaParam alpha) {
    const double t = acos_half(alpha.value());
    return -0.5 * t * t + closed_form_constants().c;
}

/// dI/da as the integral_0^1 dx / (1 + a x + x^2) that results from the
/// substitution u = e^{-x}. At a = -2 the integrand is 1/(1-x)^2, not
/// integrable, rejected up front.
inline QuadResult derivative_integral(AlphaParam alpha, const QuadConfig& config = {}) {
    const double a = alpha.value();
    if (a == -2.0)
        throw DivergentIntegral("derivative integral diverges at alpha = -2");
    return integrate([a](double x) { return 1.0 / (1.0 + x * (a + x)); },
                     Domain::finite(0.0, 1.0), config);
}

/// dI/da in closed form, (2/sqrt(4-a^2)) arctan(sqrt((2-a)/(2+a))).
/// The 0/0 at a = 2 is removable with limit 1/2, returned exactly.
inline double derivative_closed(AlphaParam alpha) {
    const double a = alpha.value();
    if (a == 2.0) return 0.5;
    if (a == -2.0)
        throw DivergentValue("closed-form derivative diverges at alpha = -2");
    const double root = std::sqrt((2.0 - a) * (2.0 + a));
    return 2.0 / root * std::atan(std::sqrt((2.0 - a) / (2.0 + a)));
}

/// dI/da by central difference of integral_direct with one Richardson step
/// combining h and h/2.
inline double derivative_finite_difference(AlphaParam alpha, double h,
                                           const QuadConfig& config = {}) {
    const double a = alpha.value();
    if (!(h > 0.0) || a + h > 2.0 || a - h < -2.0)
        throw StepOutOfRange("finite-difference step leaves [-2, 2] at alpha = " +
                             std::to_string(a));
    auto central = [&](double step) {
        const double above = integral_direct(AlphaParam(a + step), config).value;
        const double below = integral_direct(AlphaParam(a - step), config).value;
        return (above - below) / (2.0 * step);
    };
    const double coarse = central(h);
    const double fine = central(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

/// All three derivative routes and their largest pairwise disagreement.
inline DerivativeTriple derivative_triple(AlphaParam alpha, const QuadConfig& config = {}) {
    DerivativeTriple t;
    t.by_quadrature = derivative_integral(alpha, config).value;
    t.by_closed_form = derivative_closed(alpha);
    t.by_finite_difference =
        derivative_finite_difference(alpha, kDefaultDerivativeStep, config);
    t.max_pairwise_gap =
        std::max({std::abs(t.by_quadrature - t.by_closed_form),
                  std::abs(t.by_quadrature - t.by_finite_difference),
                  std::abs(t.by_closed_form - t.by_finite_difference)});
    return t;
}

/// Differentiates F(x) = (2/sqrt(4-a^2)) arctan((a+2x)/sqrt(4-a^2)) by central
/// difference at `samples` midpoints of (0,1) and compares against
/// 1/(1 + a x + x^2). Reports the worst deviation.
inline CheckResult antiderivative_check(AlphaParam alpha, int samples) {
    const double a = alpha.value();
    if (std::abs(a) == 2.0)
        throw AlphaOutOfRange("antiderivative_check requires -2 < alpha < 2");
    if (samples < 1)
        throw std::invalid_argument("antiderivative_check: samples must be >= 1");
    const double root = std::sqrt((2.0 - a) * (2.0 + a));
    auto antiderivative = [&](double x) {
        return 2.0 / root * std::atan((a + 2.0 * x) / root);
    };
    const double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = (i + 0.5) / samples;
        const double slope = (antiderivative(x + h) - antiderivative(x - h)) / (2.0 * h);
        worst = std::max(worst, std::abs(slope - 1.0 / (1.0 + x * (a + x))));
    }
    return make_check("antiderivative_vs_integrand", 0.0, worst, 1e-6);
}

/// Samples the two identities used to simplify the closed-form derivative:
/// (a) arctan(x) - arctan(y) = arctan((x-y)/(1+xy)) on pairs with 1+xy > 0;
/// (b) sqrt((1-cos u)/(1+cos u)) = tan(u/2) on u in (0, pi), compared through
///     arctan of both sides (|atan(lhs) - u/2|) so the comparison stays
///     conditioned as both sides blow up toward u = pi.
/// Sampling is deterministic, so repeated runs agree bit for bit.
inline CheckReport identity_checks(int samples) {
    if (samples < 2)
        throw std::invalid_argument("identity_checks: samples must be >= 2");
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);

    double worst_arctan = 0.0;
    for (int i = 0; i < samples; ++i) {
        double x, y;
        do {
            x = coord(rng);
            y = coord(rng);
        } while (!(1.0 + x * y > 1e-6));
        const double dev = std::abs(std::atan(x) - std::atan(y) -
                                    std::atan((x - y) / (1.0 + x * y)));
        worst_arctan = std::max(worst_arctan, dev);
    }

    double worst_half_angle = 0.0;
    for (int i = 0; i < samples; ++i) {
        double u;
        do {
            u = angle(rng);
        } while (!(u > 0.0));
        const double lhs = std::sqrt((1.0 - std::cos(u)) / (1.0 + std::cos(u)));
        worst_half_angle = std::max(worst_half_angle, std::abs(std::atan(lhs) - 0.5 * u));
    }

    std::vector<CheckResult> results;
    results.push_back(make_check("arctan_difference_identity", 0.0, worst_arctan, 1e-12));
    results.push_back(make_check("half_angle_identity", 0.0, worst_half_angle, 1e-12));
    return finalize_report(std::move(results), 0.0);
}

/// Per grid point, c_est(a) = I_direct(a) + (1/2) arccos(a/2)^2. If the
/// closed form is right this is the same constant everywhere; returns its
/// mean and max-min spread.
inline ConstantEstimate infer_constant(std::span<const AlphaParam> grid,
                                       const QuadConfig& config = {}) {
    if (grid.empty())
        throw std::invalid_argument("infer_constant: grid must be nonempty");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const AlphaParam& a : grid) {
        if (a.value() == -2.0)
            throw AlphaOutOfRange("infer_constant: grid must avoid alpha = -2");
        const double t = acos_half(a.value());
        const double c = integral_direct(a, config).value + 0.5 * t * t;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
        sum += c;
    }
    return {sum / static_cast<double>(grid.size()), hi - lo};
}

/// The symmetry that pins the integration constant, as three comparisons:
/// I(2) = 4 I(0); I(2) = 2 integral ln(1+e^{-x}); I(-2) = 2 integral ln(1-e^{-x}).
/// The quarter relation comes first.
inline std::array<CheckResult, 3> symmetry_checks(const QuadConfig& config = {}) {
    const double at_two = integral_direct(AlphaParam(2.0), config).value;
    const double at_zero = integral_direct(AlphaParam(0.0), config).value;
    const double at_neg_two = integral_direct(AlphaParam(-2.0), config).value;
    const double factor_pos =
        2.0 * integrate([](double x) { return std::log1p(std::exp(-x)); },
                        Domain::semi_infinite(0.0), config)
                  .value;
    const double factor_neg =
        2.0 * integrate([](double x) { return std::log(-std::expm1(-x)); },
                        Domain::semi_infinite(0.0), config)
                  .value;
    return {make_check("symmetry_quarter", 4.0 * at_zero, at_two, 1e-9),
            make_check("symmetry_factorization_pos", at_two, factor_pos, 1e-9),
            make_check("symmetry_factorization_neg", at_neg_two, factor_neg, 1e-7)};
}

/// Rebuilds I(target) by integrating the derivative quadrature from a = 2
/// down to target with a classical fixed-step 4th-order scheme. The anchor
/// I(2) = 4 I(0) comes from the symmetry alone, computed numerically, so the
/// route never assumes the closed form or pi^2/6.
inline double reconstruct_integral(AlphaParam target, int steps,
                                   const QuadConfig& config = {}) {
    if (target.value() == -2.0)
        throw AlphaOutOfRange("reconstruct_integral: target must be > -2");
    if (steps < 8)
        throw StepCountTooSmall("reconstruct_integral: steps must be >= 8");
    double value = 4.0 * integral_direct(AlphaParam(0.0), config).value;
    const double span = target.value() - 2.0;
    if (span == 0.0) return value;
    auto slope = [&config](double a) {
        return derivative_integral(AlphaParam(a), config).value;
    };
    double left = slope(2.0);
    for (int n = 0; n < steps; ++n) {
        const double a0 = 2.0 + span * n / steps;
        const double a1 = (n + 1 == steps) ? target.value() : 2.0 + span * (n + 1) / steps;
        // classical RK4 on dI/da = g(a); k2 = k3 since g has no I dependence
        const double mid = slope(0.5 * (a0 + a1));
        const double right = slope(a1);
        value += (a1 - a0) / 6.0 * (left + 4.0 * mid + right);
        left = right;
    }
    return value;
}

/// Uniform grid with exact endpoints; points == 1 gives just {lo}.
inline std::vector<AlphaParam> alpha_grid(double lo, double hi, int points) {
    if (points < 1)
        throw std::invalid_argument("alpha_grid: points must be >= 1");
    std::vector<AlphaParam> grid;
    grid.reserve(points);
    if (points == 1) {
        grid.emplace_back(lo);
        return grid;
    }
    for (int i = 0; i < points; ++i) {
        const double a = (i == points - 1) ? hi : lo + (hi - lo) * i / (points - 1);
        grid.emplace_back(a);
    }
    return grid;
}

}  // namespace basel
