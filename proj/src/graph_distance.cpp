#include "decay/graph_distance.hpp"

#include <deque>
#include <string>

#include "decay/error.hpp"

namespace decay {

double DistanceVector::operator()(Index j) const {
    const std::size_t h = hops.at(j - 1);
    return h == kUnreachable ? std::numeric_limits<double>::infinity() : static_cast<double>(h);
}

DistanceVector geodesic_from(const SparseHermitianMatrix& m, Index t, double drop_tol) {
    const std::size_t n = m.order();
    if (t < 1 || t > n) throw InvalidArgument("source node " + std::to_string(t) + " out of range");
    if (drop_tol < 0.0) throw InvalidArgument("pattern drop tolerance must be nonnegative");

    DistanceVector out;
    out.source = t;
    out.hops.assign(n, kUnreachable);
    out.hops[t - 1] = 0;
    std::deque<std::size_t> frontier{t - 1};
    while (!frontier.empty()) {
        const std::size_t i = frontier.front();
        frontier.pop_front();
        const auto cols = m.row_pattern(i);
        const auto vals = m.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            const std::size_t j = cols[p];
            if (j == i || out.hops[j] != kUnreachable) continue;
            if (drop_tol > 0.0 && std::abs(vals[p]) <= drop_tol) continue;
            out.hops[j] = out.hops[i] + 1;
            frontier.push_back(j);
        }
    }
    return out;
}

DistanceVector geodesic_from(const BandedHermitianMatrix& m, Index t, double drop_tol) {
    return geodesic_from(m.to_sparse(), t, drop_tol);
}

}  // namespace decay
