// basel: command-line front end for the verification suite, single
// evaluations of the parametric integral, alpha-grid scans, and zeta(2)
// partial sums.
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage error.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "basel/parametric.hpp"
#include "basel/quadrature.hpp"
#include "basel/series.hpp"
#include "basel/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

int usage_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return kExitUsage;
}

// shortest round-trip representation, for CSV cells
std::string round_trip(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fixed10(double v) {
    std::ostringstream out;
    out << std::setprecision(10) << v;
    return out.str();
}

int run_verify(std::optional<double> tol, const std::vector<std::string>& tol_for,
               const std::string& format) {
    basel::ToleranceOverrides overrides;
    if (tol) {
        if (!(*tol > 0.0)) return usage_error("--tol must be > 0");
        for (const std::string& name : basel::verify_check_names())
            overrides[name] = *tol;
    }
    const auto known = basel::verify_check_names();
    for (const std::string& spec : tol_for) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0)
            return usage_error("--tol-for expects name=value, got '" + spec + "'");
        const std::string name = spec.substr(0, eq);
        if (std::find(known.begin(), known.end(), name) == known.end())
            return usage_error("--tol-for: unknown check name '" + name + "'");
        try {
            overrides[name] = std::stod(spec.substr(eq + 1));
        } catch (const std::exception&) {
            return usage_error("--tol-for: bad value in '" + spec + "'");
        }
    }

    const basel::CheckReport report = basel::run_verify_suite({}, overrides);
    if (format == "json")
        std::cout << basel::render_json(report) << "\n";
    else
        std::cout << basel::render_text(report);
    return report.failures == 0 ? kExitPass : kExitCheckFailure;
}

int run_eval(double alpha, const std::string& format) {
    if (!(alpha >= -2.0 && alpha <= 2.0))
        return usage_error("--alpha must lie in [-2, 2]");
    const basel::AlphaParam a(alpha);
    const double direct = basel::integral_direct(a).value;
    const double closed = basel::integral_closed(a);
    const double gap = std::abs(direct - closed);
    if (format == "json") {
        nlohmann::ordered_json j{{"alpha", alpha},
                                 {"integral_quad", direct},
                                 {"integral_closed", closed},
                                 {"abs_gap", gap}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << std::left << std::setw(17) << "alpha" << fixed10(alpha) << "\n"
                  << std::setw(17) << "integral_quad" << fixed10(direct) << "\n"
                  << std::setw(17) << "integral_closed" << fixed10(closed) << "\n"
                  << std::setw(17) << "abs_gap" << fixed10(gap) << "\n";
    }
    return kExitPass;
}

int run_scan(double from, double to, int steps, const std::string& format) {
    if (!(from >= -2.0 && to <= 2.0 && from < to))
        return usage_error("scan range must satisfy -2 <= from < to <= 2");
    if (steps < 2) return usage_error("--steps must be >= 2");

    struct Row {
        double alpha, direct, closed, c_est;
        std::optional<double> d_closed;  // empty: divergent at alpha = -2
    };
    std::vector<Row> rows;
    rows.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        const double alpha =
            (i == steps - 1) ? to : from + (to - from) * i / (steps - 1);
        const basel::AlphaParam a(alpha);
        Row row;
        row.alpha = alpha;
        row.direct = basel::integral_direct(a).value;
        row.closed = basel::integral_closed(a);
        const double half_angle = basel::acos_half(alpha);
        row.c_est = row.direct + 0.5 * half_angle * half_angle;
        if (alpha != -2.0) row.d_closed = basel::derivative_closed(a);
        rows.push_back(row);
    }

    if (format == "csv") {
        std::cout << "alpha,integral_quad,integral_closed,derivative_closed,"
                     "constant_estimate\n";
        for (const Row& r : rows) {
            std::cout << round_trip(r.alpha) << ',' << round_trip(r.direct) << ','
                      << round_trip(r.closed) << ','
                      << (r.d_closed ? round_trip(*r.d_closed) : "divergent") << ','
                      << round_trip(r.c_est) << "\n";
        }
    } else {
        std::cout << std::left << std::setw(16) << "alpha" << std::setw(18)
                  << "integral_quad" << std::setw(18) << "integral_closed"
                  << std::setw(20) << "derivative_closed"
                  << "constant_estimate\n";
        for (const Row& r : rows) {
            std::cout << std::setw(16) << fixed10(r.alpha) << std::setw(18)
                      << fixed10(r.direct) << std::setw(18) << fixed10(r.closed)
                      << std::setw(20)
                      << (r.d_closed ? fixed10(*r.d_closed) : "divergent")
                      << fixed10(r.c_est) << "\n";
        }
    }
    return kExitPass;
}

int run_series(std::int64_t n, std::optional<int> accel_order) {
    if (n < 1) return usage_error("--n must be >= 1");
    if (accel_order && n < 10)
        return usage_error("--accel-order requires --n >= 10");
    const basel::SeriesState state = basel::zeta2_partial(n);
    std::cout << std::left << std::setw(14) << "n_terms" << state.n_terms << "\n"
              << std::setw(14) << "partial_sum" << fixed10(state.partial_sum) << "\n"
              << std::setw(14) << "tail_low" << fixed10(state.tail_low) << "\n"
              << std::setw(14) << "tail_high" << fixed10(state.tail_high) << "\n";
    if (accel_order) {
        std::cout << std::setw(14) << "accelerated"
                  << fixed10(basel::zeta2_accelerated(n, *accel_order)) << "  (order "
                  << *accel_order << ")\n";
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of the parametric-integral route to "
                 "zeta(2) = pi^2/6"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run the full verification suite");
    std::optional<double> tol;
    std::vector<std::string> tol_for;
    std::string verify_format = "text";
    verify->add_option("--tol", tol,
                       "replace every check tolerance (env: FEYNMAN_VERIFY_TOL)")
        ->envname("FEYNMAN_VERIFY_TOL");
    verify->add_option("--tol-for", tol_for,
                       "per-check tolerance override, name=value (repeatable)");
    verify->add_option("--format", verify_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    auto* eval = app.add_subcommand("eval", "evaluate the integral at one alpha");
    double alpha = 0.0;
    std::string eval_format = "text";
    eval->add_option("--alpha", alpha, "parameter in [-2, 2]")->required();
    eval->add_option("--format", eval_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    auto* scan = app.add_subcommand("scan", "tabulate the family over an alpha grid");
    double from = 0.0, to = 0.0;
    int steps = 0;
    std::string scan_format = "text";
    scan->add_option("--from", from, "grid start")->required();
    scan->add_option("--to", to, "grid end")->required();
    scan->add_option("--steps", steps, "number of grid points (>= 2)")->required();
    scan->add_option("--format", scan_format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));

    auto* series = app.add_subcommand("series", "partial sum of 1/n^2 with tail bounds");
    std::int64_t n = 0;
    std::optional<int> accel_order;
    series->add_option("--n", n, "number of terms")->required();
    series->add_option("--accel-order", accel_order, "tail correction order")
        ->check(CLI::IsMember({1, 2, 3}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (verify->parsed()) return run_verify(tol, tol_for, verify_format);
        if (eval->parsed()) return run_eval(alpha, eval_format);
        if (scan->parsed()) return run_scan(from, to, steps, scan_format);
        if (series->parsed()) return run_series(n, accel_order);
    } catch (const basel::AlphaOutOfRange& e) {
        return usage_error(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitUsage;
}
