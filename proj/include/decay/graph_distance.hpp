#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "decay/banded_matrix.hpp"
#include "decay/sparse_matrix.hpp"

namespace decay {

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Geodesic distances d(t, j) from one source node in the pattern graph.
struct DistanceVector {
    Index source = 0;                  // 1-based
    std::vector<std::size_t> hops;     // hops[j-1] = d(t, j), kUnreachable across components

    std::size_t size() const noexcept { return hops.size(); }
    bool reachable(Index j) const { return hops.at(j - 1) != kUnreachable; }
    /// d(t, j) as a real number, inf when unreachable.
    double operator()(Index j) const;
};

/// Breadth-first search from t (1-based). Diagonal entries are not edges;
/// off-diagonal entries with |M_ij| <= drop_tol are ignored (drop_tol = 0
/// keeps every stored position, including explicit zeros).
DistanceVector geodesic_from(const SparseHermitianMatrix& m, Index t, double drop_tol = 0.0);
DistanceVector geodesic_from(const BandedHermitianMatrix& m, Index t, double drop_tol = 0.0);

}  // namespace decay
