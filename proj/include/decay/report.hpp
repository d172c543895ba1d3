#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace decay {

/// One entry-level bound evaluation.
struct DecayBoundReport {
    std::size_t row = 0;     // k, 1-based (0 when the bound was queried by distance only)
    std::size_t column = 0;  // t, 1-based
    double distance = 0.0;
    /// Per-factor distances for Kronecker bounds.
    std::vector<double> component_distances;

    /// False when the entry is outside the bound's stated validity region
    /// (diagonal, d < 2 for the strict Laplace bound, unreachable node, ...).
    bool valid = true;
    double value = std::numeric_limits<double>::quiet_NaN();

    /// Laplace bounds: the pieces I, II, III over tau in (0, d/2rho], [d/2rho, d^2/4rho], [d^2/4rho, inf).
    std::vector<double> pieces;
    double error_estimate = 0.0;
    bool converged = true;

    /// Some factor was evaluated with the capped envelope outside the regimes
    /// the derivation covers (still a valid bound, outside the strict region).
    bool extended_regime = false;
    bool unreachable = false;

    std::optional<double> oracle;
};

}  // namespace decay
