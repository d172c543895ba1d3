#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <span>

#include "decay/banded_matrix.hpp"
#include "decay/measures.hpp"
#include "decay/quadrature.hpp"
#include "decay/report.hpp"
#include "decay/spectral.hpp"

namespace decay {

/// strict: only the region where the derivation holds (d >= 2 for the
/// Laplace bound). extended: the envelope capped at 1 is used at every
/// distance; valid because |exp(-tau Mhat)_{kt}| <= 1 for PSD Mhat.
enum class Validity { strict, extended };

struct BoundOptions {
    QuadratureOptions quadrature = QuadratureOptions::relative(1e-8);
    Validity validity = Validity::strict;
};

// ---------------------------------------------------------------------------
// Exponential envelope

struct ExpEnvelopeParams {
    double rho = 0.0;
    double tau = 0.0;
    std::size_t beta = 1;
    double lambda_min = 0.0;

    double rho_tau() const noexcept { return rho * tau; }
};

/// Envelope for |exp(-tau Mhat)_{kt}| at distance d, as a function of
/// rho*tau only. Takes the running minimum of the two Krylov regimes over
/// distances up to d and caps at 1, so it is nonincreasing in d.
/// Returns 1 for d <= 0 and 0 for d = inf.
double exp_envelope(double rho_tau, double d);
/// Natural log of exp_envelope (-inf where the envelope underflows).
double log_exp_envelope(double rho_tau, double d);

/// exp_envelope at the parameters' rho*tau; d > 0 required.
double phi(const ExpEnvelopeParams& params, double d);

/// |k - t| / beta (beta = 0 gives inf off the diagonal).
double band_distance(Index k, Index t, std::size_t beta);

/// exp(-tau lambda_min) * phi(d): bound on |exp(-tau M)_{kt}| for the
/// unshifted M whose spectrum is enclosed by spec. d > 0 required.
double exp_entry_bound(const SpectralInterval& spec, double tau, double d);
double exp_entry_bound(const SpectralInterval& spec, std::size_t beta, double tau, Index k, Index t);

/// One factor exp(-lambda_min tau) * exp_envelope(rho tau, d) of a product envelope.
struct EnvelopeFactor {
    double lambda_min = 0.0;
    double rho = 0.0;
    double d = 0.0;
};

/// Product of the factors at tau. At tau = 0 each factor is exactly
/// delta(d, 0), since exp(0) = I.
double envelope_product(std::span<const EnvelopeFactor> factors, double tau);

/// Absolutely continuous weight w(tau) = exp(log_w(tau)) on [lo, hi].
struct LogWeight {
    ScalarFunction log_w;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    double left_exponent = 0.0;  // w ~ (tau - lo)^g
};

/// int_a^b envelope_product(tau) w(tau) dtau with [a, b] clipped to the weight's
/// support. The regime switches d/(2 rho), d^2/(4 rho), 1/rho of every factor
/// are used as breakpoints.
QuadratureResult envelope_integral(std::span<const EnvelopeFactor> factors, const LogWeight& weight, double a,
                                   double b, const QuadratureOptions& options);

// ---------------------------------------------------------------------------
// Resolvent kernels

/// Demko data of M - omega I (omega <= 0).
struct ResolventParams {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double omega = 0.0;
    double kappa = 1.0;
    double q = 0.0;
    double C = 0.0;
};

ResolventParams resolvent_params(const SpectralInterval& spec, double omega);

/// max{1/lambda_min, (1 + sqrt(kappa))^2 / (2 lambda_max)}.
double demko_constant(double lambda_min, double lambda_max);

/// Bound on |M^{-1}|_{kt} at distance d. The matrix is treated as divided by
/// diagonal_scale (its largest diagonal entry), and the bound is multiplied
/// back by 1/diagonal_scale; the constant is homogeneous, so the value does not
/// depend on the scale.
double demko_bound(const SpectralInterval& spec, double d, double diagonal_scale = 1.0);
double demko_bound(const BandedHermitianMatrix& m, const SpectralInterval& spec, Index k, Index t);

struct FreundParams {
    double zeta = 0.0;
    Complex lambda1;
    Complex lambda2;
    double alpha = 0.0;
    double R = 1.0;
    double C = 0.0;
};

/// Data for (M - omega I - i zeta I)^{-1}.
FreundParams freund_params(const SpectralInterval& spec, double zeta, double omega = 0.0);

/// C(zeta) R^{-d}, d > 0.
double freund_resolvent_bound(const SpectralInterval& spec, double zeta, double d);
double freund_resolvent_bound(const SpectralInterval& spec, std::size_t beta, double zeta, Index k, Index t);

// ---------------------------------------------------------------------------
// Laplace-Stieltjes and Cauchy-Stieltjes bounds

/// int exp(-lambda_min tau) exp_envelope(rho tau, d) dalpha(tau), split into
/// the pieces I, II, III. Strict validity requires d >= 2.
DecayBoundReport laplace_entry_bound(const SpectralInterval& spec, const LaplaceMeasure& measure, double d,
                                     const BoundOptions& options = {});
DecayBoundReport laplace_entry_bound(const SpectralInterval& spec, std::size_t beta, const LaplaceMeasure& measure,
                                     Index k, Index t, const BoundOptions& options = {});

/// Same value, claimed for |f(M + i zeta I)|_{kt}.
DecayBoundReport laplace_entry_bound_shifted(const SpectralInterval& spec, std::size_t beta,
                                             const LaplaceMeasure& measure, double zeta, Index k, Index t,
                                             const BoundOptions& options = {});

/// int C(omega) q(omega)^d |dgamma(omega)| with the Demko kernel. Any d >= 0.
DecayBoundReport cauchy_entry_bound(const SpectralInterval& spec, const CauchyMeasure& measure, double d,
                                    const BoundOptions& options = {});
DecayBoundReport cauchy_entry_bound(const SpectralInterval& spec, std::size_t beta, const CauchyMeasure& measure,
                                    Index k, Index t, const BoundOptions& options = {});

/// Closed-form bound on |M^{-1/2}|_{kt}: (2/pi)(C(0) + C2) q0^d, computed for
/// the matrix divided by diagonal_scale and scaled back by 1/sqrt(diagonal_scale).
double invsqrt_closed_bound(const SpectralInterval& spec, double d, double diagonal_scale = 1.0);
double invsqrt_closed_bound(const BandedHermitianMatrix& m, const SpectralInterval& spec, Index k, Index t);

/// The C2 constant of the closed form (see invsqrt_closed_bound).
double invsqrt_c2(double kappa0);

/// int C(zeta,omega) R(zeta,omega)^{-d} |dgamma(omega)| with the Freund kernel, d > 0.
DecayBoundReport cauchy_shifted_bound(const SpectralInterval& spec, const CauchyMeasure& measure, double zeta,
                                      double d, const BoundOptions& options = {});
DecayBoundReport cauchy_shifted_bound(const SpectralInterval& spec, std::size_t beta, const CauchyMeasure& measure,
                                      double zeta, Index k, Index t, const BoundOptions& options = {});

}  // namespace decay
