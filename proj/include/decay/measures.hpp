#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "decay/quadrature.hpp"

namespace decay {

/// Point mass of a Laplace measure at tau = location.
struct Atom {
    double location;
    double weight;
};

/// dalpha(tau) = w(tau) dtau + sum of atoms, so that
/// f(x) = int_0^inf exp(-x tau) dalpha(tau) for x > 0.
///
/// The density is stored through its logarithm so integrands can combine it
/// with exponentially small kernels without overflow (exp_inv grows like
/// exp(2 sqrt(tau))).
struct LaplaceMeasure {
    std::string name;
    ScalarFunction log_density;  // empty for purely atomic measures
    double support_lo = 0.0;
    double support_hi = std::numeric_limits<double>::infinity();
    double left_exponent = 0.0;  // w(tau) ~ (tau - support_lo)^g
    std::vector<Atom> atoms;     // locations >= 0
    ScalarFunction f;            // closed form

    bool has_density() const noexcept { return static_cast<bool>(log_density); }
    /// w(tau); zero outside the support.
    double density(double tau) const;
};

/// Names: inv, exp, phi1, inv_sqrt, inv_pow:<sigma>, log1p_inv, exp_inv.
LaplaceMeasure laplace_catalog(std::string_view name);

/// Cauchy-Stieltjes measure on (-inf, support_upper], written in s = -omega:
/// f(x) = int v(s) / (x + s) ds over s >= s_lo, with s_lo = -support_upper.
struct CauchyMeasure {
    std::string name;
    ScalarFunction v;             // density in s (may change sign)
    double s_lo = 0.0;
    double left_exponent = 0.0;   // |v(s)| ~ (s - s_lo)^g
    double tail_exponent = 1.0;   // |v(s)| <= c s^-p for large s
    /// k-th sign change of v (k = 1, 2, ...); empty when v has one sign.
    std::function<double(std::size_t)> sign_change;
    ScalarFunction v_majorant;    // smooth |v| majorant, used past the tabulated sign changes
    ScalarFunction f;             // closed form
    ScalarFunction g;             // closed-form Laplace transform, may be empty
    double g_left_exponent = 0.0; // |g(tau)| ~ tau^e as tau -> 0

    double support_upper() const noexcept { return -s_lo; }
    /// Density in the original variable omega <= support_upper.
    double density(double omega) const;
    bool is_signed() const noexcept { return static_cast<bool>(sign_change); }
};

/// Names: inv_sqrt, expsqrt:<t>, log1p_over_z.
CauchyMeasure cauchy_catalog(std::string_view name);

/// g(tau) = int exp(tau omega) dgamma(omega); closed form when stored,
/// adaptive quadrature otherwise. Requires tau > 0.
double laplace_transform_of_cauchy(const CauchyMeasure& measure, double tau,
                                   const QuadratureOptions& options = QuadratureOptions::relative(1e-10));

/// Numerical f(x) from the representation (consistency check of a catalog entry).
QuadratureResult reconstruct(const LaplaceMeasure& measure, double x,
                             const QuadratureOptions& options = QuadratureOptions::relative(1e-10));
QuadratureResult reconstruct(const CauchyMeasure& measure, double x,
                             const QuadratureOptions& options = QuadratureOptions::relative(1e-10));

}  // namespace decay
