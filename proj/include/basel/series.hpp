#pragma once

// The series side: partial sums of sum 1/n^2 with a two-sided tail enclosure,
// Euler-Maclaurin-style acceleration, termwise integration of the geometric
// expansion, and the companion integral representations of pi^2/6.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "basel/checks.hpp"
#include "basel/quadrature.hpp"

namespace basel {

struct XOutOfRange : std::domain_error {
    using std::domain_error::domain_error;
};

struct SeriesState {
    std::int64_t n_terms = 0;
    double partial_sum = 0.0;
    double tail_low = 0.0;   // 1/(N+1) < true tail
    double tail_high = 0.0;  // true tail < 1/N
};

/// Partial sum of 1/n^2 up to N, summed from the smallest term upward so
/// rounding error accumulates on the small terms first.
inline SeriesState zeta2_partial(std::int64_t n_terms) {
    if (n_terms < 1)
        throw std::invalid_argument("zeta2_partial: n_terms must be >= 1");
    double sum = 0.0;
    for (std::int64_t n = n_terms; n >= 1; --n) {
        const double d = static_cast<double>(n);
        sum += 1.0 / (d * d);
    }
    return {n_terms, sum, 1.0 / static_cast<double>(n_terms + 1),
            1.0 / static_cast<double>(n_terms)};
}

/// Partial sum plus the integral-comparison tail correction:
/// order 1: 1/N; order 2: 1/N - 1/(2N^2); order 3: 1/N - 1/(2N^2) + 1/(6N^3).
inline double zeta2_accelerated(std::int64_t n_terms, int correction_order) {
    if (n_terms < 10)
        throw std::invalid_argument("zeta2_accelerated: n_terms must be >= 10");
    if (correction_order < 1 || correction_order > 3)
        throw std::invalid_argument("zeta2_accelerated: correction_order must be 1, 2 or 3");
    const double n = static_cast<double>(n_terms);
    double correction = 1.0 / n;
    if (correction_order >= 2) correction -= 1.0 / (2.0 * n * n);
    if (correction_order >= 3) correction += 1.0 / (6.0 * n * n * n);
    return zeta2_partial(n_terms).partial_sum + correction;
}

/// Quadrature of integral_0^inf e^{-nx}/n dx against the exact 1/n^2.
inline CheckResult termwise_integral(int n, const QuadConfig& config = {}) {
    if (n < 1)
        throw std::invalid_argument("termwise_integral: n must be >= 1");
    const double k = static_cast<double>(n);
    const QuadResult r = integrate([k](double x) { return std::exp(-k * x) / k; },
                                   Domain::semi_infinite(0.0), config);
    return make_check("termwise_n" + std::to_string(n), 1.0 / (k * k), r.value, 1e-12);
}

/// Compares -ln(1-x) against the first N terms of sum x^n/n and checks the
/// deviation against the analytic remainder bound x^{N+1}/((N+1)(1-x)).
/// Evaluated in long double; the tolerance carries a machine-noise floor
/// since the analytic bound can sit below one ulp of the left-hand side.
inline CheckResult log_series_check(double x, int n_terms) {
    if (!(x >= 0.0 && x < 1.0))
        throw XOutOfRange("log_series_check: x must satisfy 0 <= x < 1");
    if (n_terms < 1)
        throw std::invalid_argument("log_series_check: n_terms must be >= 1");
    const long double lx = x;
    long double sum = 0.0L;
    for (int n = n_terms; n >= 1; --n)
        sum += std::pow(lx, n) / static_cast<long double>(n);
    const long double lhs = -std::log1p(-lx);
    const long double bound =
        std::pow(lx, n_terms + 1) / ((n_terms + 1) * (1.0L - lx));
    const long double noise_floor =
        64.0L * std::numeric_limits<long double>::epsilon() * (1.0L + std::fabs(lhs));
    const long double deviation = std::fabs(lhs - sum);

    // abs_error is narrowed from long double; recomputing it from the double
    // fields would quantize to whole ulps and lose the sub-ulp deviation.
    CheckResult r;
    r.name = "log_series";
    r.expected = static_cast<double>(lhs);
    r.actual = static_cast<double>(sum);
    r.abs_error = static_cast<double>(deviation);
    r.tolerance = static_cast<double>(bound + noise_floor);
    r.passed = r.abs_error <= r.tolerance;
    return r;
}

/// Quadrature of integral_0^inf ln(1 - e^{-x}) dx against -pi^2/6, the
/// headline identity. Log singularity at x = 0.
inline CheckResult basel_integral_check(const QuadConfig& config = {}) {
    const QuadResult r = integrate([](double x) { return std::log(-std::expm1(-x)); },
                                   Domain::semi_infinite(0.0), config);
    constexpr double pi_sq = std::numbers::pi * std::numbers::pi;
    return make_check("basel_integral", -pi_sq / 6.0, r.value, 1e-8);
}

/// -ln(1-x)/x: the inner integral of the double-integral representation of
/// sum 1/n^2, done analytically. Removable at x = 0 (limit 1), log-singular
/// at x = 1.
inline double apostol_integrand(double x) { return -std::log1p(-x) / x; }

/// Quadrature of integral_0^1 -ln(1-x)/x dx against pi^2/6.
inline CheckResult apostol_check(const QuadConfig& config = {}) {
    const QuadResult r = integrate([](double x) { return apostol_integrand(x); },
                                   Domain::finite(0.0, 1.0), config);
    constexpr double pi_sq = std::numbers::pi * std::numbers::pi;
    return make_check("apostol_integral", pi_sq / 6.0, r.value, 1e-8);
}

}  // namespace basel
