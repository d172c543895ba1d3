#pragma once

#include <string>
#include <variant>
#include <vector>

#include "decay/banded_bounds.hpp"
#include "decay/graph_distance.hpp"
#include "decay/measures.hpp"
#include "decay/report.hpp"
#include "decay/spectral.hpp"

namespace decay {

/// |exp(-tau M)_{kt}|.
struct ExpKernel {
    double tau = 1.0;
};
/// |M^{-1}_{kt}| via the Demko bound.
struct DemkoKernel {};
/// |(M - i zeta I)^{-1}_{kt}| via the Freund bound.
struct FreundKernel {
    double zeta = 0.0;
};
struct LaplaceKernel {
    LaplaceMeasure measure;
};
struct CauchyKernel {
    CauchyMeasure measure;
};
struct CauchyShiftedKernel {
    CauchyMeasure measure;
    double zeta = 0.0;
};
/// |M^{-1/2}_{kt}| via the closed form.
struct InvSqrtClosedKernel {};

using BoundKind = std::variant<ExpKernel, DemkoKernel, FreundKernel, LaplaceKernel, CauchyKernel,
                               CauchyShiftedKernel, InvSqrtClosedKernel>;

std::string describe(const BoundKind& kind);

/// Everything a distance-driven bound needs besides the distance.
struct BoundContext {
    SpectralInterval spectrum;
    double diagonal_scale = 1.0;  // largest diagonal entry, for Demko-type constants
    BoundOptions options;
};

/// Whether the bound is claimed at distance d (d = 0 is the diagonal).
bool bound_applicable(const BoundKind& kind, const BoundContext& context, double d);

/// Evaluates the bound at distance d; throws DomainError or InvalidArgument
/// outside its validity region.
DecayBoundReport evaluate_bound(const BoundKind& kind, const BoundContext& context, double d);

/// One report per node j = 1..n, with d = dist(j) in place of |j - t|/beta.
/// Entries where the bound is not claimed (j = t, strict-regime failures)
/// have valid = false; unreachable nodes are flagged and carry no value.
std::vector<DecayBoundReport> bound_with_distance(const BoundKind& kind, const BoundContext& context,
                                                  const DistanceVector& dist);

}  // namespace decay
