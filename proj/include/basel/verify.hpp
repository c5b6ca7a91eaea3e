#pragma once

// The full verification suite: a fixed, ordered table of named checks
// spanning the quadrature oracles, the three derivative routes, the constant
// determination, the symmetry, the non-circular reconstruction, and the
// series side. Engine-level errors surface as failed results with a
// diagnostic suffix on the name, never as exceptions out of the runner.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "basel/checks.hpp"
#include "basel/parametric.hpp"
#include "basel/quadrature.hpp"
#include "basel/series.hpp"

namespace basel {

using ToleranceOverrides = std::map<std::string, double, std::less<>>;

namespace detail {

struct SuiteCheck {
    std::string name;
    double default_tolerance;  // NaN: the check derives its own tolerance
    std::function<CheckResult(const QuadConfig&, double)> body;
};

inline const std::vector<SuiteCheck>& suite_checks() {
    static const std::vector<SuiteCheck> table = [] {
        constexpr double pi_sq = std::numbers::pi * std::numbers::pi;
        const double self = std::numeric_limits<double>::quiet_NaN();
        std::vector<SuiteCheck> t;

        auto value_check = [&t](std::string name, double expected, double tol,
                                auto compute) {
            t.push_back({name, tol,
                         [name, expected, compute](const QuadConfig& cfg, double tl) {
                             return make_check(name, expected, compute(cfg), tl);
                         }});
        };
        // for checks that come back already named and toleranced
        auto adopt = [](CheckResult r, std::string name, double tol) {
            r.name = std::move(name);
            if (!std::isnan(tol)) {
                r.tolerance = tol;
                r.passed = r.abs_error <= tol;
            }
            return r;
        };

        // quadrature oracles
        value_check("quad_rational_arctan", std::numbers::pi / 4.0, 1e-10,
                    [](const QuadConfig& cfg) {
                        return integrate([](double x) { return 1.0 / (1.0 + x * x); },
                                         Domain::finite(0.0, 1.0), cfg)
                            .value;
                    });
        value_check("quad_exponential_tail", 1.0, 1e-10, [](const QuadConfig& cfg) {
            return integrate([](double x) { return std::exp(-x); },
                             Domain::semi_infinite(0.0), cfg)
                .value;
        });
        value_check("quad_log_endpoint", -1.0, 1e-8, [](const QuadConfig& cfg) {
            return integrate([](double x) { return std::log(x); },
                             Domain::finite(0.0, 1.0), cfg)
                .value;
        });
        value_check("quad_semi_infinite_log", pi_sq / 24.0, 1e-10,
                    [](const QuadConfig& cfg) {
                        return integrate(
                                   [](double x) { return std::log1p(std::exp(-2.0 * x)); },
                                   Domain::semi_infinite(0.0), cfg)
                            .value;
                    });

        // derivative routes
        value_check("derivative_triple_grid", 0.0, 1e-5, [](const QuadConfig& cfg) {
            double worst = 0.0;
            for (const AlphaParam& a : alpha_grid(-1.9, 1.9, 39))
                worst = std::max(worst, derivative_triple(a, cfg).max_pairwise_gap);
            return worst;
        });
        value_check("antiderivative_sweep", 0.0, 1e-6, [](const QuadConfig&) {
            double worst = 0.0;
            for (double a : {-1.9, -1.0, 0.0, 1.0, 1.9})
                worst = std::max(worst, antiderivative_check(AlphaParam(a), 101).actual);
            return worst;
        });
        t.push_back({"arctan_difference_identity", 1e-12,
                     [adopt](const QuadConfig&, double tol) {
                         return adopt(identity_checks(1000).results[0],
                                      "arctan_difference_identity", tol);
                     }});
        t.push_back({"half_angle_identity", 1e-12,
                     [adopt](const QuadConfig&, double tol) {
                         return adopt(identity_checks(1000).results[1],
                                      "half_angle_identity", tol);
                     }});

        // constant determination and symmetry
        value_check("constant_mean", pi_sq / 6.0, 1e-8, [](const QuadConfig& cfg) {
            const auto grid = alpha_grid(-1.9, 2.0, 21);
            return infer_constant(grid, cfg).mean;
        });
        value_check("constant_spread", 0.0, 1e-7, [](const QuadConfig& cfg) {
            const auto grid = alpha_grid(-1.9, 2.0, 21);
            return infer_constant(grid, cfg).spread;
        });
        for (int i = 0; i < 3; ++i) {
            const std::array<const char*, 3> names = {"symmetry_quarter",
                                                      "symmetry_factorization_pos",
                                                      "symmetry_factorization_neg"};
            const std::array<double, 3> tols = {1e-9, 1e-9, 1e-7};
            t.push_back({names[i], tols[i],
                         [i, adopt, name = names[i]](const QuadConfig& cfg, double tol) {
                             return adopt(symmetry_checks(cfg)[i], name, tol);
                         }});
        }

        // reconstruction from the derivative, anchored by the symmetry
        value_check("reconstruct_at_zero", pi_sq / 24.0, 1e-6, [](const QuadConfig& cfg) {
            return reconstruct_integral(AlphaParam(0.0), 256, cfg);
        });
        value_check("reconstruct_at_minus_one", -pi_sq / 18.0, 1e-6,
                    [](const QuadConfig& cfg) {
                        return reconstruct_integral(AlphaParam(-1.0), 256, cfg);
                    });
        value_check("reconstruct_order", 4.0, 1.0, [](const QuadConfig& cfg) {
            const double exact = pi_sq / 24.0;
            const double coarse =
                std::abs(reconstruct_integral(AlphaParam(0.0), 8, cfg) - exact);
            const double fine =
                std::abs(reconstruct_integral(AlphaParam(0.0), 16, cfg) - exact);
            return std::log2(coarse / fine);
        });

        // closed form across the admissible range
        value_check("closed_form_grid", 0.0, 1e-7, [](const QuadConfig& cfg) {
            double worst = 0.0;
            for (const AlphaParam& a : alpha_grid(-1.99, 2.0, 41))
                worst = std::max(worst, std::abs(integral_direct(a, cfg).value -
                                                 integral_closed(a)));
            return worst;
        });

        // series side
        value_check("termwise_batch", 0.0, 1e-10, [](const QuadConfig& cfg) {
            double worst = 0.0;
            for (int n = 1; n <= 100; ++n)
                worst = std::max(worst, termwise_integral(n, cfg).abs_error);
            return worst;
        });
        t.push_back({"termwise_telescoping", 1e-9,
                     [](const QuadConfig& cfg, double tol) {
                         double sum = 0.0;
                         for (int n = 1; n <= 100; ++n)
                             sum += termwise_integral(n, cfg).actual;
                         return make_check("termwise_telescoping",
                                           zeta2_partial(100).partial_sum, sum, tol);
                     }});
        t.push_back({"log_series_x05", self, [adopt](const QuadConfig&, double tol) {
                         return adopt(log_series_check(0.5, 50), "log_series_x05", tol);
                     }});
        t.push_back({"log_series_x09", self, [adopt](const QuadConfig&, double tol) {
                         return adopt(log_series_check(0.9, 200), "log_series_x09", tol);
                     }});
        t.push_back({"basel_integral", 1e-8, [adopt](const QuadConfig& cfg, double tol) {
                         return adopt(basel_integral_check(cfg), "basel_integral", tol);
                     }});
        t.push_back({"basel_vs_parametric", 1e-8,
                     [](const QuadConfig& cfg, double tol) {
                         const double by_series_route = basel_integral_check(cfg).actual;
                         const double by_family =
                             integral_direct(AlphaParam(-2.0), cfg).value / 2.0;
                         return make_check("basel_vs_parametric", by_family,
                                           by_series_route, tol);
                     }});
        t.push_back({"apostol_integral", 1e-8, [adopt](const QuadConfig& cfg, double tol) {
                         return adopt(apostol_check(cfg), "apostol_integral", tol);
                     }});
        t.push_back({"apostol_vs_basel", 2e-8,
                     [](const QuadConfig& cfg, double tol) {
                         const double apostol = apostol_check(cfg).actual;
                         const double basel_val = basel_integral_check(cfg).actual;
                         return make_check("apostol_vs_basel", -basel_val, apostol, tol);
                     }});

        // zeta(2) partial sums, enclosure, acceleration
        value_check("zeta_partial_10", 1.549767731166540690350214159738, 1e-12,
                    [](const QuadConfig&) { return zeta2_partial(10).partial_sum; });
        for (std::int64_t n : {10, 100, 1000, 10000}) {
            const std::string name = "zeta_enclosure_n" + std::to_string(n);
            t.push_back({name, self, [name, n](const QuadConfig&, double tol_override) {
                             const SeriesState s = zeta2_partial(n);
                             const double mid = 0.5 * (s.tail_low + s.tail_high);
                             const double half = 0.5 * (s.tail_high - s.tail_low);
                             const double tol =
                                 std::isnan(tol_override) ? half : tol_override;
                             return make_check(name, mid, pi_sq / 6.0 - s.partial_sum,
                                               tol);
                         }});
        }
        for (int order : {1, 2}) {
            const std::string name = "zeta_accel_order" + std::to_string(order) + "_slope";
            value_check(name, -(order + 1.0), 0.2, [order](const QuadConfig&) {
                const double e_small = std::abs(zeta2_accelerated(100, order) - pi_sq / 6.0);
                const double e_large = std::abs(zeta2_accelerated(10000, order) - pi_sq / 6.0);
                return std::log10(e_large / e_small) / 2.0;
            });
        }
        value_check("zeta_accel_order3_n100", pi_sq / 6.0, 1e-8, [](const QuadConfig&) {
            return zeta2_accelerated(100, 3);
        });
        value_check("zeta_accel_order3_n1000", pi_sq / 6.0, 1e-12, [](const QuadConfig&) {
            return zeta2_accelerated(1000, 3);
        });

        return t;
    }();
    return table;
}

}  // namespace detail

/// Names of the suite checks, in execution order. Useful for validating
/// tolerance-override keys.
inline std::vector<std::string> verify_check_names() {
    std::vector<std::string> names;
    names.reserve(detail::suite_checks().size());
    for (const detail::SuiteCheck& c : detail::suite_checks()) names.push_back(c.name);
    return names;
}

/// Runs every check in declaration order. Overrides replace the tolerance of
/// the named check before its pass flag is computed; unknown keys are
/// ignored. Individual check failures are data; engine-level exceptions
/// become failed results whose name carries the error class.
inline CheckReport run_verify_suite(const QuadConfig& config = {},
                                    const ToleranceOverrides& overrides = {}) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> results;
    results.reserve(detail::suite_checks().size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const detail::SuiteCheck& check : detail::suite_checks()) {
        double tol = check.default_tolerance;
        if (auto it = overrides.find(check.name); it != overrides.end())
            tol = it->second;
        try {
            results.push_back(check.body(config, tol));
        } catch (const NonConvergence&) {
            results.push_back(failed_check(check.name + "[NonConvergence]", nan, tol));
        } catch (const std::exception&) {
            results.push_back(failed_check(check.name + "[error]", nan, tol));
        }
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return finalize_report(std::move(results), elapsed.count());
}

/// Aligned table, 10 significant digits.
inline std::string render_text(const CheckReport& report) {
    std::ostringstream out;
    out << std::setprecision(10) << std::left;
    out << std::setw(38) << "name" << std::setw(18) << "expected" << std::setw(18)
        << "actual" << std::setw(18) << "abs_error" << std::setw(18) << "tolerance"
        << "status\n";
    for (const CheckResult& r : report.results) {
        out << std::setw(38) << r.name << std::setw(18) << r.expected << std::setw(18)
            << r.actual << std::setw(18) << r.abs_error << std::setw(18) << r.tolerance
            << (r.passed ? "PASS" : "FAIL") << '\n';
    }
    out << "checks: " << report.total << "  failures: " << report.failures
        << "  wall_time_seconds: " << report.wall_time_seconds << '\n';
    return out.str();
}

/// One JSON object; doubles keep their shortest round-trip form (non-finite
/// values serialize as null).
inline std::string render_json(const CheckReport& report) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckResult& r : report.results) {
        arr.push_back({{"name", r.name},
                       {"expected", r.expected},
                       {"actual", r.actual},
                       {"abs_error", r.abs_error},
                       {"tolerance", r.tolerance},
                       {"passed", r.passed}});
    }
    j["results"] = std::move(arr);
    j["total"] = report.total;
    j["failures"] = report.failures;
    j["wall_time_seconds"] = report.wall_time_seconds;
    return j.dump(2);
}

}  // namespace basel
