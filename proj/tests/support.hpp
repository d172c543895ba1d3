#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "decay/banded_matrix.hpp"
#include "decay/oracle.hpp"

namespace decay::testing {

inline bool dominates(double bound, double oracle) { return bound >= oracle * (1.0 - 1e-10); }

/// |column| with entries at or below the rounding floor set to zero.
inline Eigen::VectorXd resolved_abs(const Eigen::VectorXcd& col, double floor) {
    return col.cwiseAbs().unaryExpr([floor](double v) { return v <= floor ? 0.0 : v; });
}

inline Eigen::VectorXd resolved_abs(const OracleColumn& col) { return resolved_abs(col.values, col.noise_floor); }

/// Floor for a direct dense solve of a well-conditioned system.
inline double solve_floor(const Eigen::VectorXcd& x) {
    return 64.0 * static_cast<double>(x.size()) * std::numeric_limits<double>::epsilon() * x.cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

/// Column t of f(M) by full dense diagonalization, independent of EigenDecomposition::column.
inline Eigen::VectorXcd dense_column(const Eigen::MatrixXcd& m, const SpectralFunction& f, Index t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    Eigen::VectorXcd fv(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f(es.eigenvalues()(i));
    const Eigen::MatrixXcd full = es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
    return full.col(static_cast<Eigen::Index>(t - 1));
}

/// All-pairs hop counts by Floyd-Warshall on the off-diagonal pattern.
inline std::vector<std::vector<double>> floyd_warshall(const std::vector<std::vector<bool>>& adj) {
    const std::size_t n = adj.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (std::size_t i = 0; i < n; ++i) {
        d[i][i] = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && adj[i][j]) d[i][j] = 1.0;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
        }
    }
    return d;
}

}  // namespace decay::testing
