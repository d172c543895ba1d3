#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>

namespace decay {

using ScalarFunction = std::function<double(double)>;

/// A result is accepted once error_estimate <= max(abs_tol, rel_tol * |value|).
/// Set abs_tol = 0 for a purely relative criterion (used by the bound
/// integrals, whose values span hundreds of orders of magnitude).
struct QuadratureOptions {
    double abs_tol = 1e-8;
    double rel_tol = 1e-8;
    std::size_t max_panels = 10000;

    static QuadratureOptions relative(double tol) { return {0.0, tol, 10000}; }
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

/// Declared local behaviour of the integrand near the ends of the range.
///
/// left_exponent = g means f(x) ~ (x - a)^g near a (g > -1); likewise
/// right_exponent near b. For semi-infinite ranges tail_exponent = p means
/// f(x) ~ x^(-p) as x -> infinity (p > 1); infinity means faster than any power.
struct EndpointBehavior {
    double left_exponent = 0.0;
    double right_exponent = 0.0;
    double tail_exponent = std::numeric_limits<double>::infinity();
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
///
/// Singular endpoints are removed with the substitution x = a + (c-a) u^p,
/// p = 1/(1+g). Interior breakpoints (kinks, regime switches) start the
/// subdivision; breakpoints outside (a, b) are ignored. Non-convergence after
/// max_panels panels is reported through converged = false, never thrown.
QuadratureResult integrate(const ScalarFunction& f, double a, double b,
                           const QuadratureOptions& options = {},
                           const EndpointBehavior& behavior = {},
                           std::span<const double> breakpoints = {});

QuadratureResult integrate(const ScalarFunction& f, double a, double b, double tol);

/// Integral over [a, inf) via x = a + (1-t)/t. Breakpoints in (a, inf) split
/// off finite panels first.
QuadratureResult integrate_semi_infinite(const ScalarFunction& f, double a,
                                         const QuadratureOptions& options = {},
                                         const EndpointBehavior& behavior = {},
                                         std::span<const double> breakpoints = {});

QuadratureResult integrate_semi_infinite(const ScalarFunction& f, double a, double tol);

/// Sum of independent results: values and error estimates add, convergence ANDs.
QuadratureResult& operator+=(QuadratureResult& lhs, const QuadratureResult& rhs);

}  // namespace decay
