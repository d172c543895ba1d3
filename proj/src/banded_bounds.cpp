#include "decay/banded_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "decay/error.hpp"

namespace decay {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog10 = std::log(10.0);

void require_positive_definite(const SpectralInterval& spec, const char* what) {
    if (!(spec.lambda_min() > 0.0)) {
        throw DomainError(std::string(what) + " needs a positive definite matrix (lambda_min = " +
                          std::to_string(spec.lambda_min()) + ")");
    }
}

void require_off_diagonal(double d, const char* what) {
    if (!(d > 0.0)) throw InvalidArgument(std::string(what) + " is not claimed on the diagonal (distance 0)");
}

DecayBoundReport with_indices(DecayBoundReport r, Index k, Index t) {
    r.row = k;
    r.column = t;
    return r;
}

// exp(log_a + log_b) where either may be -inf.
double exp_sum(double a, double b) {
    if (a == -kInf || b == -kInf) return 0.0;
    return std::exp(a + b);
}

}  // namespace

double log_exp_envelope(double rho_tau, double d) {
    if (!(rho_tau >= 0.0)) throw InvalidArgument("rho*tau must be nonnegative");
    if (std::isnan(d)) throw InvalidArgument("distance is NaN");
    if (d <= 0.0) return 0.0;
    if (d == kInf) return -kInf;
    // exp(0 * Mhat) = I has no off-diagonal part.
    if (rho_tau == 0.0) return -kInf;

    double best = 0.0;
    if (d >= 2.0 * rho_tau) {
        const double log_ii = kLog10 - rho_tau - std::log(rho_tau) + d * (1.0 + std::log(rho_tau) - std::log(d));
        best = std::min(best, log_ii);
    }
    if (rho_tau >= 1.0 && d >= std::sqrt(4.0 * rho_tau)) {
        const double m = std::min(d, 2.0 * rho_tau);
        best = std::min(best, kLog10 - m * m / (5.0 * rho_tau));
    }
    return best;
}

double exp_envelope(double rho_tau, double d) { return std::exp(log_exp_envelope(rho_tau, d)); }

double phi(const ExpEnvelopeParams& params, double d) {
    require_off_diagonal(d, "the exponential envelope");
    if (!(params.rho >= 0.0) || !(params.tau >= 0.0)) throw InvalidArgument("rho and tau must be nonnegative");
    return exp_envelope(params.rho_tau(), d);
}

double band_distance(Index k, Index t, std::size_t beta) {
    if (k < 1 || t < 1) throw InvalidArgument("indices are 1-based");
    const std::size_t gap = k > t ? k - t : t - k;
    if (gap == 0) return 0.0;
    if (beta == 0) return kInf;
    return static_cast<double>(gap) / static_cast<double>(beta);
}

double exp_entry_bound(const SpectralInterval& spec, double tau, double d) {
    require_off_diagonal(d, "the exponential bound");
    if (!(tau >= 0.0)) throw InvalidArgument("tau must be nonnegative");
    return exp_sum(-tau * spec.lambda_min(), log_exp_envelope(spec.rho() * tau, d));
}

double exp_entry_bound(const SpectralInterval& spec, std::size_t beta, double tau, Index k, Index t) {
    return exp_entry_bound(spec, tau, band_distance(k, t, beta));
}

double envelope_product(std::span<const EnvelopeFactor> factors, double tau) {
    if (tau == 0.0) {
        for (const auto& f : factors) {
            if (f.d > 0.0) return 0.0;
        }
        return 1.0;
    }
    double log_sum = 0.0;
    for (const auto& f : factors) {
        const double e = log_exp_envelope(f.rho * tau, f.d);
        if (e == -kInf) return 0.0;
        log_sum += e - f.lambda_min * tau;
    }
    return std::exp(log_sum);
}

QuadratureResult envelope_integral(std::span<const EnvelopeFactor> factors, const LogWeight& weight, double a,
                                   double b, const QuadratureOptions& options) {
    const double lo = std::max(a, weight.lo);
    const double hi = std::min(b, weight.hi);
    if (!(hi > lo)) return {};

    std::vector<double> breaks;
    double decay_rate = 0.0;
    double growth = 0.0;
    for (const auto& f : factors) {
        decay_rate += f.lambda_min + f.rho;
        if (f.d > 1.0 && std::isfinite(f.d)) growth += f.d - 1.0;
        if (f.rho > 0.0 && std::isfinite(f.d)) {
            breaks.push_back(f.d / (2.0 * f.rho));
            breaks.push_back(f.d * f.d / (4.0 * f.rho));
            breaks.push_back(1.0 / f.rho);
        }
    }
    // Approximate location of the integrand's maximum in the superexponential regime.
    if (decay_rate > 0.0 && growth > 0.0) {
        const double peak = growth / decay_rate;
        for (double c : {0.25, 0.5, 1.0, 2.0, 4.0}) breaks.push_back(c * peak);
    }

    const ScalarFunction integrand = [&](double tau) {
        const double env = envelope_product(factors, tau);
        if (env == 0.0) return 0.0;
        const double lw = weight.log_w(tau);
        return lw == -kInf ? 0.0 : env * std::exp(lw);
    };
    const EndpointBehavior behavior{lo == weight.lo ? weight.left_exponent : 0.0, 0.0, kInf};
    if (std::isfinite(hi)) return integrate(integrand, lo, hi, options, behavior, breaks);
    return integrate_semi_infinite(integrand, lo, options, behavior, breaks);
}

// ---------------------------------------------------------------------------

double demko_constant(double lambda_min, double lambda_max) {
    if (!(lambda_min > 0.0) || lambda_max < lambda_min) {
        throw DomainError("the Demko constant needs 0 < lambda_min <= lambda_max");
    }
    const double kappa = lambda_max / lambda_min;
    const double r = 1.0 + std::sqrt(kappa);
    return std::max(1.0 / lambda_min, r * r / (2.0 * lambda_max));
}

ResolventParams resolvent_params(const SpectralInterval& spec, double omega) {
    if (omega > 0.0) throw InvalidArgument("resolvent shifts omega must be <= 0");
    ResolventParams p;
    p.omega = omega;
    p.lambda_min = spec.lambda_min() - omega;
    p.lambda_max = spec.lambda_max() - omega;
    if (!(p.lambda_min > 0.0)) throw DomainError("M - omega I is not positive definite");
    p.kappa = p.lambda_max / p.lambda_min;
    const double s = std::sqrt(p.kappa);
    p.q = (s - 1.0) / (s + 1.0);
    p.C = demko_constant(p.lambda_min, p.lambda_max);
    return p;
}

double demko_bound(const SpectralInterval& spec, double d, double diagonal_scale) {
    require_positive_definite(spec, "the Demko bound");
    if (!(diagonal_scale > 0.0)) throw InvalidArgument("diagonal scale must be positive");
    if (!(d >= 0.0)) throw InvalidArgument("distance must be nonnegative");
    const double lo = spec.lambda_min() / diagonal_scale;
    const double hi = spec.lambda_max() / diagonal_scale;
    const double s = std::sqrt(hi / lo);
    const double q = (s - 1.0) / (s + 1.0);
    const double c_scaled = demko_constant(lo, hi);
    return c_scaled / diagonal_scale * std::pow(q, d);
}

double demko_bound(const BandedHermitianMatrix& m, const SpectralInterval& spec, Index k, Index t) {
    return demko_bound(spec, band_distance(k, t, m.bandwidth()), m.max_diagonal());
}

FreundParams freund_params(const SpectralInterval& spec, double zeta, double omega) {
    if (!(spec.lambda_max() > spec.lambda_min())) {
        throw DomainError("the Freund bound is undefined for a single-point spectrum (lambda_min = lambda_max)");
    }
    FreundParams p;
    p.zeta = zeta;
    p.lambda1 = Complex(spec.lambda_min() - omega, -zeta);
    p.lambda2 = Complex(spec.lambda_max() - omega, -zeta);
    const double gap = std::abs(p.lambda2 - p.lambda1);
    p.alpha = (std::abs(p.lambda1) + std::abs(p.lambda2)) / gap;
    p.R = p.alpha + std::sqrt(std::max(0.0, p.alpha * p.alpha - 1.0));
    if (!(p.R > 1.0)) throw DomainError("the Freund ellipse degenerates (R = 1); the shift touches the spectrum");
    const double r2 = p.R * p.R;
    p.C = 2.0 * p.R / gap * 4.0 * r2 / ((r2 - 1.0) * (r2 - 1.0));
    return p;
}

double freund_resolvent_bound(const SpectralInterval& spec, double zeta, double d) {
    require_off_diagonal(d, "the Freund bound");
    const FreundParams p = freund_params(spec, zeta);
    return p.C * std::pow(p.R, -d);
}

double freund_resolvent_bound(const SpectralInterval& spec, std::size_t beta, double zeta, Index k, Index t) {
    return freund_resolvent_bound(spec, zeta, band_distance(k, t, beta));
}

// ---------------------------------------------------------------------------

DecayBoundReport laplace_entry_bound(const SpectralInterval& spec, const LaplaceMeasure& measure, double d,
                                     const BoundOptions& options) {
    require_positive_definite(spec, "the Laplace-Stieltjes bound");
    if (!(d >= 0.0)) throw InvalidArgument("distance must be nonnegative");
    if (options.validity == Validity::strict && d < 2.0) {
        throw DomainError("the Laplace-Stieltjes bound holds for |k-t|/beta >= 2 (got " + std::to_string(d) + ")");
    }

    DecayBoundReport r;
    r.distance = d;
    r.extended_regime = d < 2.0;
    const double rho = spec.rho();
    const double tau1 = rho > 0.0 ? d / (2.0 * rho) : kInf;
    const double tau2 = rho > 0.0 ? std::max(tau1, d * d / (4.0 * rho)) : kInf;
    const double cuts[] = {0.0, tau1, tau2, kInf};
    r.pieces.assign(3, 0.0);

    const EnvelopeFactor factor{spec.lambda_min(), rho, d};
    const std::span<const EnvelopeFactor> factors(&factor, 1);
    for (const Atom& a : measure.atoms) {
        const std::size_t piece = a.location <= tau1 ? 0 : (a.location <= tau2 ? 1 : 2);
        r.pieces[piece] += a.weight * envelope_product(factors, a.location);
    }
    if (measure.has_density()) {
        const LogWeight weight{measure.log_density, measure.support_lo, measure.support_hi, measure.left_exponent};
        for (std::size_t i = 0; i < 3; ++i) {
            if (!(cuts[i + 1] > cuts[i])) continue;
            const QuadratureResult q = envelope_integral(factors, weight, cuts[i], cuts[i + 1], options.quadrature);
            r.pieces[i] += q.value;
            r.error_estimate += q.error_estimate;
            r.converged = r.converged && q.converged;
        }
    }
    r.value = r.pieces[0] + r.pieces[1] + r.pieces[2];
    return r;
}

DecayBoundReport laplace_entry_bound(const SpectralInterval& spec, std::size_t beta, const LaplaceMeasure& measure,
                                     Index k, Index t, const BoundOptions& options) {
    return with_indices(laplace_entry_bound(spec, measure, band_distance(k, t, beta), options), k, t);
}

DecayBoundReport laplace_entry_bound_shifted(const SpectralInterval& spec, std::size_t beta,
                                             const LaplaceMeasure& measure, double zeta, Index k, Index t,
                                             const BoundOptions& options) {
    // |exp(-i zeta tau)| = 1, so the bound does not depend on zeta.
    if (!std::isfinite(zeta)) throw InvalidArgument("zeta must be finite");
    return laplace_entry_bound(spec, beta, measure, k, t, options);
}

namespace {

// int_{s_lo}^inf kernel(s) |v(s)| ds for a Cauchy measure, where log_kernel
// decays like s^-(kernel_tail) for large s.
DecayBoundReport cauchy_integral(const CauchyMeasure& measure, const std::function<double(double)>& log_kernel,
                                 double kernel_tail, double scale, double d, const BoundOptions& options) {
    constexpr std::size_t kSignChanges = 64;
    std::vector<double> breaks;
    const double base = measure.s_lo + scale;
    for (double c : {1.0, 10.0, 100.0}) {
        breaks.push_back(measure.s_lo + scale * c / std::max(d, 1.0));
        breaks.push_back(measure.s_lo + base * c);
    }
    if (measure.sign_change) {
        for (std::size_t k = 1; k <= kSignChanges; ++k) breaks.push_back(measure.sign_change(k));
    }
    const ScalarFunction integrand = [&](double s) {
        const double v = std::abs(measure.v(s));
        if (v == 0.0) return 0.0;
        const double lk = log_kernel(s);
        return lk == -kInf ? 0.0 : std::exp(lk) * v;
    };
    const EndpointBehavior behavior{measure.left_exponent, 0.0, kernel_tail + measure.tail_exponent};
    QuadratureResult q;
    if (measure.sign_change && measure.v_majorant) {
        // |v| has a kink at every sign change; past the last tabulated one
        // the smooth majorant keeps the tail integrable at the same tolerance.
        const double cut = measure.sign_change(kSignChanges);
        const ScalarFunction tail = [&](double s) {
            const double lk = log_kernel(s);
            return lk == -kInf ? 0.0 : std::exp(lk) * measure.v_majorant(s);
        };
        q = integrate(integrand, measure.s_lo, cut, options.quadrature, {measure.left_exponent, 0.0}, breaks);
        q += integrate_semi_infinite(tail, cut, options.quadrature, {0.0, 0.0, behavior.tail_exponent});
    } else {
        q = integrate_semi_infinite(integrand, measure.s_lo, options.quadrature, behavior, breaks);
    }
    DecayBoundReport r;
    r.distance = d;
    r.value = q.value;
    r.pieces = {q.value};
    r.error_estimate = q.error_estimate;
    r.converged = q.converged;
    return r;
}

}  // namespace

DecayBoundReport cauchy_entry_bound(const SpectralInterval& spec, const CauchyMeasure& measure, double d,
                                    const BoundOptions& options) {
    require_positive_definite(spec, "the Cauchy-Stieltjes bound");
    if (!(d >= 0.0)) throw InvalidArgument("distance must be nonnegative");
    const auto log_kernel = [&spec, d](double s) {
        const ResolventParams p = resolvent_params(spec, -s);
        if (d == 0.0) return std::log(p.C);
        if (p.q == 0.0) return -kInf;
        return std::log(p.C) + d * std::log(p.q);
    };
    return cauchy_integral(measure, log_kernel, 1.0 + (std::isfinite(d) ? d : 0.0), spec.lambda_min(), d, options);
}

DecayBoundReport cauchy_entry_bound(const SpectralInterval& spec, std::size_t beta, const CauchyMeasure& measure,
                                    Index k, Index t, const BoundOptions& options) {
    return with_indices(cauchy_entry_bound(spec, measure, band_distance(k, t, beta), options), k, t);
}

double invsqrt_c2(double kappa0) {
    const double s = std::sqrt(kappa0);
    // The first two candidates are the ones printed for this closed form; the
    // last one is what C(tau) <= C2 / tau actually requires with the Demko
    // constant (1 + sqrt(kappa))^2 / (2 lambda_max).
    return std::max({1.0, std::sqrt(1.0 + 0.5 * s), std::sqrt(1.0 + s) / 2.0, (1.0 + s) * (1.0 + s) / 2.0});
}

double invsqrt_closed_bound(const SpectralInterval& spec, double d, double diagonal_scale) {
    require_positive_definite(spec, "the closed-form inverse square root bound");
    require_off_diagonal(d, "the closed-form inverse square root bound");
    if (!(diagonal_scale > 0.0)) throw InvalidArgument("diagonal scale must be positive");
    const double lo = spec.lambda_min() / diagonal_scale;
    const double hi = spec.lambda_max() / diagonal_scale;
    const double q0 = (std::sqrt(hi) - std::sqrt(lo)) / (std::sqrt(hi) + std::sqrt(lo));
    const double c0 = demko_constant(lo, hi);
    const double c2 = invsqrt_c2(hi / lo);
    return 2.0 / std::numbers::pi * (c0 + c2) * std::pow(q0, d) / std::sqrt(diagonal_scale);
}

double invsqrt_closed_bound(const BandedHermitianMatrix& m, const SpectralInterval& spec, Index k, Index t) {
    return invsqrt_closed_bound(spec, band_distance(k, t, m.bandwidth()), m.max_diagonal());
}

DecayBoundReport cauchy_shifted_bound(const SpectralInterval& spec, const CauchyMeasure& measure, double zeta,
                                      double d, const BoundOptions& options) {
    require_off_diagonal(d, "the shifted Cauchy-Stieltjes bound");
    if (!std::isfinite(zeta)) throw InvalidArgument("zeta must be finite");
    freund_params(spec, zeta);  // rejects degenerate spectra up front
    const auto log_kernel = [&spec, zeta, d](double s) {
        const FreundParams p = freund_params(spec, zeta, -s);
        return std::log(p.C) - d * std::log(p.R);
    };
    const double scale = std::max(std::hypot(spec.lambda_min(), zeta), 1e-300);
    return cauchy_integral(measure, log_kernel, 1.0 + (std::isfinite(d) ? d : 0.0), scale, d, options);
}

DecayBoundReport cauchy_shifted_bound(const SpectralInterval& spec, std::size_t beta, const CauchyMeasure& measure,
                                      double zeta, Index k, Index t, const BoundOptions& options) {
    return with_indices(cauchy_shifted_bound(spec, measure, zeta, band_distance(k, t, beta), options), k, t);
}

}  // namespace decay
