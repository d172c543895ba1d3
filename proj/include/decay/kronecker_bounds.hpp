#pragma once

#include <vector>

#include "decay/banded_bounds.hpp"
#include "decay/kronecker_sum.hpp"
#include "decay/measures.hpp"
#include "decay/oracle.hpp"
#include "decay/report.hpp"
#include "decay/spectral.hpp"

namespace decay {

// ---------------------------------------------------------------------------
// Exact identities

/// exp(-tau A)_{kt} as the product of the factor entries exp(-tau M_l)_{k_l t_l}.
Complex exp_kron_entry_exact(const KroneckerSum& a, double tau, const MultiIndex& k, const MultiIndex& t);

enum class TrigFunction { sin, cos };

/// sin(A)_{kt} or cos(A)_{kt} for two factors, from
/// sin(A) = sin(M1) (x) cos(M2) + cos(M1) (x) sin(M2) and
/// cos(A) = cos(M1) (x) cos(M2) - sin(M1) (x) sin(M2) (in the index order of a).
Complex sincos_kron_exact(const KroneckerSum& a, const MultiIndex& k, const MultiIndex& t, TrigFunction which);

// ---------------------------------------------------------------------------
// Bounds

/// Per-factor spectral data for Kronecker bounds.
struct KroneckerBoundContext {
    std::vector<SpectralInterval> spectra;
    std::vector<std::size_t> bandwidths;
    BoundOptions options;

    static KroneckerBoundContext from(const KroneckerSum& a, SpectralSource mode = SpectralSource::exact,
                                      const BoundOptions& options = {});
    std::size_t dimension() const noexcept { return spectra.size(); }
    /// d_l = |k_l - t_l| / beta_l.
    std::vector<double> distances(const MultiIndex& k, const MultiIndex& t) const;
};

/// prod_l exp(-tau lambda_min,l) phi_l(d_l). Factors with d_l below
/// sqrt(4 rho_l tau) contribute their cap and set extended_regime. k = t is rejected.
DecayBoundReport exp_kron_bound(const KroneckerBoundContext& ctx, double tau, const MultiIndex& k,
                                const MultiIndex& t);

/// int prod_l E_l(tau, d_l) dalpha(tau), E_l = exp(-lambda_min,l tau) * capped envelope.
/// Strict validity requires every d_l >= 2; extended validity accepts any
/// distances, including k = t.
DecayBoundReport laplace_kron_bound(const KroneckerBoundContext& ctx, const LaplaceMeasure& measure,
                                    const MultiIndex& k, const MultiIndex& t);

/// Three-factor form of laplace_kron_bound.
DecayBoundReport laplace_kron_bound_3d(const KroneckerBoundContext& ctx, const LaplaceMeasure& measure,
                                       const MultiIndex& k, const MultiIndex& t);

/// int prod_l E_l(tau, d_l) |g(tau)| dtau with g the Laplace transform of the
/// Cauchy measure. Same validity rules as laplace_kron_bound.
DecayBoundReport cauchy_kron_bound(const KroneckerBoundContext& ctx, const CauchyMeasure& measure,
                                   const MultiIndex& k, const MultiIndex& t);

/// Cauchy-Schwarz variants: prod_l (int E_l^d |w|)^{1/d}, an upper bound on
/// the direct product integral. Atoms are not supported.
DecayBoundReport laplace_kron_bound_split(const KroneckerBoundContext& ctx, const LaplaceMeasure& measure,
                                          const MultiIndex& k, const MultiIndex& t);
DecayBoundReport cauchy_kron_bound_split(const KroneckerBoundContext& ctx, const CauchyMeasure& measure,
                                         const MultiIndex& k, const MultiIndex& t);

}  // namespace decay
