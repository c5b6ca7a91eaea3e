#pragma once

// Adaptive tanh-sinh (double-exponential) quadrature over finite and
// semi-infinite intervals. The variable transformation clusters nodes toward
// the endpoints without ever touching them, so integrable endpoint log
// singularities need no special casing by the caller.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace basel {

struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int max_refinement_level = 12;    // hard cap 15, see validate_config
    double tail_cutoff_epsilon = 1e-16;  // used only by integrate_truncated
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
    bool converged = false;
};

struct InvalidDomain : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonFiniteSample : std::runtime_error {
    explicit NonFiniteSample(double x)
        : std::runtime_error("integrand returned a non-finite value at x = " +
                             std::to_string(x)),
          abscissa(x) {}
    double abscissa;
};

struct NonConvergence : std::runtime_error {
    NonConvergence(const std::string& what, QuadResult p)
        : std::runtime_error(what), partial(p) {}
    QuadResult partial;  // best estimate when the refinement budget ran out
};

/// Integration interval: either [lower, upper] with finite bounds or
/// [lower, +inf).
class Domain {
public:
    static Domain finite(double lower, double upper) {
        if (!std::isfinite(lower) || !std::isfinite(upper))
            throw InvalidDomain("finite domain requires finite bounds");
        if (!(lower < upper))
            throw InvalidDomain("finite domain requires lower < upper");
        return Domain(lower, upper);
    }

    static Domain semi_infinite(double lower) {
        if (!std::isfinite(lower))
            throw InvalidDomain("semi-infinite domain requires a finite lower bound");
        return Domain(lower, std::numeric_limits<double>::infinity());
    }

    bool is_finite() const { return std::isfinite(upper_); }
    double lower() const { return lower_; }
    double upper() const { return upper_; }

private:
    Domain(double lo, double up) : lower_(lo), upper_(up) {}
    double lower_;
    double upper_;
};

namespace detail {

inline void validate_config(const QuadConfig& cfg) {
    if (!(cfg.abs_tol > 0.0))
        throw std::invalid_argument("QuadConfig: abs_tol must be > 0");
    if (!(cfg.rel_tol >= 0.0))
        throw std::invalid_argument("QuadConfig: rel_tol must be >= 0");
    if (cfg.max_refinement_level < 1 || cfg.max_refinement_level > 15)
        throw std::invalid_argument("QuadConfig: max_refinement_level must be in [1, 15]");
    if (!(cfg.tail_cutoff_epsilon > 0.0))
        throw std::invalid_argument("QuadConfig: tail_cutoff_epsilon must be > 0");
}

// Trapezoid sums of the transformed integrand, with level doubling:
// x(t) = m + c tanh((pi/2) sinh t),  w(t) = c (pi/2) cosh t / cosh^2((pi/2) sinh t).
// Nodes are strictly interior; once a node folds into an endpoint at double
// resolution the remaining tail on that side is below roundoff and is dropped.
template <class F>
QuadResult tanh_sinh_finite(F& f, double a, double b, const QuadConfig& cfg) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    constexpr double t_limit = 6.56;
    const double mid = 0.5 * (a + b);
    const double half_width = 0.5 * (b - a);
    std::int64_t evals = 0;

    auto sample = [&](double t, double& out) -> bool {
        const double q = half_pi * std::sinh(t);
        const double x = mid + half_width * std::tanh(q);
        if (!(x > a) || !(x < b)) return false;
        const double ch = std::cosh(q);
        const double weight = half_width * half_pi * std::cosh(t) / (ch * ch);
        if (!(weight > 0.0) || !std::isfinite(weight)) return false;
        const double fx = f(x);
        ++evals;
        if (!std::isfinite(fx)) throw NonFiniteSample(x);
        out = weight * fx;
        return true;
    };

    double h = 1.0;
    double sum = 0.0;
    sample(0.0, sum);
    {
        bool up = true, down = true;
        for (int k = 1; (up || down) && k * h <= t_limit; ++k) {
            double v;
            if (up && sample(k * h, v)) sum += v; else up = false;
            if (down && sample(-k * h, v)) sum += v; else down = false;
        }
    }

    double estimate = sum * h;
    double error = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= cfg.max_refinement_level; ++level) {
        h *= 0.5;
        double added = 0.0;
        bool up = true, down = true;
        for (std::int64_t k = 1; (up || down) && static_cast<double>(k) * h <= t_limit; k += 2) {
            double v;
            if (up && sample(static_cast<double>(k) * h, v)) added += v; else up = false;
            if (down && sample(-static_cast<double>(k) * h, v)) added += v; else down = false;
        }
        const double refined = 0.5 * estimate + added * h;
        error = std::abs(refined - estimate);
        estimate = refined;
        // two successive levels must agree before convergence is declared
        if (level >= 2 && error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(estimate)))
            return {estimate, error, evals, true};
    }
    throw NonConvergence("tanh-sinh refinement budget exhausted",
                         QuadResult{estimate, error, evals, false});
}

}  // namespace detail

/// Integrates f over the domain. The evaluator must be side-effect free and
/// return finite values on the open interior; endpoint singularities at most
/// logarithmic. Semi-infinite domains are mapped to (0, 1] by
/// u = e^{-(x - lower)} and handled by the finite-interval scheme.
///
/// Throws InvalidDomain, NonFiniteSample, or NonConvergence (which carries
/// the partial result). Stateless; safe to call concurrently.
template <class F>
    requires std::is_invocable_r_v<double, F&, double>
QuadResult integrate(F&& f, const Domain& domain, const QuadConfig& config = {}) {
    detail::validate_config(config);
    if (domain.is_finite())
        return detail::tanh_sinh_finite(f, domain.lower(), domain.upper(), config);
    const double lo = domain.lower();
    auto substituted = [&f, lo](double u) { return f(lo - std::log(u)) / u; };
    return detail::tanh_sinh_finite(substituted, 0.0, 1.0, config);
}

/// Debug alternative for [lower, +inf): truncates at the first doubling point
/// X with |f(X)| < tail_cutoff_epsilon and integrates [lower, X]. Assumes the
/// integrand decays in the tail. The substitution path in integrate() is the
/// primary route.
template <class F>
    requires std::is_invocable_r_v<double, F&, double>
QuadResult integrate_truncated(F&& f, double lower, const QuadConfig& config = {}) {
    detail::validate_config(config);
    if (!std::isfinite(lower))
        throw InvalidDomain("integrate_truncated requires a finite lower bound");
    for (double width = 8.0; width <= 1048576.0; width *= 2.0) {
        if (std::abs(f(lower + width)) < config.tail_cutoff_epsilon)
            return detail::tanh_sinh_finite(f, lower, lower + width, config);
    }
    throw NonConvergence("integrand does not decay below tail_cutoff_epsilon",
                         QuadResult{});
}

}  // namespace basel
