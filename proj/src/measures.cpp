#include "decay/measures.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "decay/error.hpp"

namespace decay {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_parameter(std::string_view name, std::string_view args) {
    std::string token(args);
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used == token.size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidArgument("bad parameter '" + token + "' in function name '" + std::string(name) + "'");
}

// log I_1(z) for z > 0, switching to the large-argument expansion before overflow.
double log_bessel_i1(double z) {
    if (z < 600.0) return std::log(std::cyl_bessel_i(1.0, z));
    const double r = 1.0 / (8.0 * z);
    return z - 0.5 * std::log(2.0 * std::numbers::pi * z) + std::log1p(-3.0 * r - 7.5 * r * r);
}

}  // namespace

double LaplaceMeasure::density(double tau) const {
    if (!log_density || tau < support_lo || tau > support_hi) return 0.0;
    return std::exp(log_density(tau));
}

double CauchyMeasure::density(double omega) const {
    const double s = -omega;
    return s >= s_lo && s > 0.0 ? v(s) : 0.0;
}

LaplaceMeasure laplace_catalog(std::string_view name) {
    LaplaceMeasure m;
    m.name = std::string(name);
    if (name == "inv") {
        m.log_density = [](double) { return 0.0; };
        m.f = [](double x) { return 1.0 / x; };
    } else if (name == "exp") {
        m.atoms = {{1.0, 1.0}};
        m.f = [](double x) { return std::exp(-x); };
    } else if (name == "phi1") {
        m.log_density = [](double) { return 0.0; };
        m.support_hi = 1.0;
        m.f = [](double x) { return -std::expm1(-x) / x; };
    } else if (name == "inv_sqrt") {
        const double log_norm = 0.5 * std::log(std::numbers::pi);
        m.log_density = [log_norm](double tau) { return -0.5 * std::log(tau) - log_norm; };
        m.left_exponent = -0.5;
        m.f = [](double x) { return 1.0 / std::sqrt(x); };
    } else if (name.rfind("inv_pow:", 0) == 0) {
        const double sigma = parse_parameter(name, name.substr(8));
        if (!(sigma > 0.0)) throw InvalidArgument("inv_pow needs sigma > 0");
        const double log_gamma = std::lgamma(sigma);
        m.log_density = [sigma, log_gamma](double tau) { return (sigma - 1.0) * std::log(tau) - log_gamma; };
        m.left_exponent = sigma - 1.0;
        m.f = [sigma](double x) { return std::pow(x, -sigma); };
    } else if (name == "log1p_inv") {
        // Frullani: int exp(-x tau) (1 - exp(-tau)) / tau dtau = log(1 + 1/x).
        m.log_density = [](double tau) { return std::log(-std::expm1(-tau) / tau); };
        m.f = [](double x) { return std::log1p(1.0 / x); };
    } else if (name == "exp_inv") {
        // exp(1/x) = 1 + sum_k x^-k / k!; the series sums to I_1(2 sqrt(tau)) / sqrt(tau).
        m.log_density = [](double tau) {
            if (tau < 1e-12) return std::log1p(tau / 2.0);
            const double r = std::sqrt(tau);
            return log_bessel_i1(2.0 * r) - std::log(r);
        };
        m.atoms = {{0.0, 1.0}};
        m.f = [](double x) { return std::exp(1.0 / x); };
    } else {
        throw InvalidArgument("unknown Laplace-Stieltjes function '" + std::string(name) + "'");
    }
    return m;
}

CauchyMeasure cauchy_catalog(std::string_view name) {
    CauchyMeasure m;
    m.name = std::string(name);
    const double pi = std::numbers::pi;
    if (name == "inv_sqrt") {
        m.v = [pi](double s) { return 1.0 / (pi * std::sqrt(s)); };
        m.left_exponent = -0.5;
        m.tail_exponent = 0.5;
        m.f = [](double x) { return 1.0 / std::sqrt(x); };
        m.g = [pi](double tau) { return 1.0 / std::sqrt(pi * tau); };
        m.g_left_exponent = -0.5;
    } else if (name.rfind("expsqrt:", 0) == 0 || name.rfind("expsqrt_t:", 0) == 0) {
        const double t = parse_parameter(name, name.substr(name.find(':') + 1));
        if (!(t > 0.0)) throw InvalidArgument("expsqrt needs t > 0");
        m.v = [t, pi](double s) { return std::sin(t * std::sqrt(s)) / (pi * s); };
        m.left_exponent = -0.5;
        m.tail_exponent = 1.0;
        m.sign_change = [t, pi](std::size_t k) {
            const double u = static_cast<double>(k) * pi / t;
            return u * u;
        };
        m.v_majorant = [pi](double s) { return 1.0 / (pi * s); };
        m.f = [t](double x) { return -std::expm1(-t * std::sqrt(x)) / x; };
        m.g = [t](double tau) { return std::erf(t / (2.0 * std::sqrt(tau))); };
        m.g_left_exponent = 0.0;
    } else if (name == "log1p_over_z") {
        m.v = [](double s) { return 1.0 / s; };
        m.s_lo = 1.0;
        m.tail_exponent = 1.0;
        m.f = [](double x) { return std::log1p(x) / x; };
        // E_1(tau) = -Ei(-tau)
        m.g = [](double tau) { return -std::expint(-tau); };
        m.g_left_exponent = -0.5;  // logarithmic; any negative exponent regularizes it
    } else {
        throw InvalidArgument("unknown Cauchy-Stieltjes function '" + std::string(name) + "'");
    }
    return m;
}

double laplace_transform_of_cauchy(const CauchyMeasure& measure, double tau, const QuadratureOptions& options) {
    if (!(tau > 0.0)) {
        throw DomainError("Laplace transform of a Cauchy measure needs tau > 0; at tau = " + std::to_string(tau) +
                          " the integral of the measure diverges");
    }
    if (measure.g) return measure.g(tau);

    std::vector<double> breaks;
    if (measure.sign_change) {
        const double horizon = measure.s_lo + 60.0 / tau;
        for (std::size_t k = 1; k <= 256; ++k) {
            const double s = measure.sign_change(k);
            if (s > horizon) break;
            breaks.push_back(s);
        }
    }
    const double lo = measure.s_lo;
    const auto r = integrate_semi_infinite(
        [&](double s) {
            const double e = std::exp(-tau * s);
            return e == 0.0 ? 0.0 : e * measure.v(s);
        },
        lo, options, EndpointBehavior{measure.left_exponent, 0.0, kInf}, breaks);
    if (!r.converged) {
        throw NumericalError("Laplace transform of '" + measure.name + "' did not converge at tau = " +
                             std::to_string(tau));
    }
    return r.value;
}

QuadratureResult reconstruct(const LaplaceMeasure& measure, double x, const QuadratureOptions& options) {
    if (!(x > 0.0)) throw DomainError("Laplace-Stieltjes representation holds for x > 0");
    QuadratureResult total;
    for (const Atom& a : measure.atoms) total.value += a.weight * std::exp(-x * a.location);
    if (!measure.has_density()) return total;

    const ScalarFunction integrand = [&](double tau) {
        const double e = -x * tau + measure.log_density(tau);
        return std::exp(e);
    };
    const EndpointBehavior behavior{measure.left_exponent, 0.0, kInf};
    if (std::isfinite(measure.support_hi)) {
        total += integrate(integrand, measure.support_lo, measure.support_hi, options, behavior);
    } else {
        const double breaks[] = {1.0 / x, 1.0 / (x * x), 10.0 / x};
        total += integrate_semi_infinite(integrand, measure.support_lo, options, behavior, breaks);
    }
    return total;
}

QuadratureResult reconstruct(const CauchyMeasure& measure, double x, const QuadratureOptions& options) {
    if (!(x > 0.0)) throw DomainError("Cauchy-Stieltjes representation is evaluated here for x > 0");
    const ScalarFunction integrand = [&](double s) { return measure.v(s) / (x + s); };

    if (!measure.sign_change) {
        return integrate_semi_infinite(integrand, measure.s_lo, options,
                                       EndpointBehavior{measure.left_exponent, 0.0, measure.tail_exponent + 1.0});
    }

    // Sign-alternating density with decreasing amplitude: sum the half-period
    // panels until the last one is negligible; it majorizes the remaining tail.
    QuadratureResult total;
    double lo = measure.s_lo;
    for (std::size_t k = 1; k <= 100000; ++k) {
        const double hi = measure.sign_change(k);
        const EndpointBehavior behavior{k == 1 ? measure.left_exponent : 0.0, 0.0, kInf};
        const QuadratureResult panel = integrate(integrand, lo, hi, options, behavior);
        total += panel;
        lo = hi;
        if (k >= 4 && std::abs(panel.value) <= 0.01 * options.rel_tol * std::abs(total.value)) {
            total.error_estimate += std::abs(panel.value);
            return total;
        }
    }
    total.converged = false;
    return total;
}

}  // namespace decay
