#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "decay/banded_matrix.hpp"
#include "decay/sparse_matrix.hpp"

namespace decay {

enum class SpectralSource { exact, gershgorin };

SpectralSource parse_spectral_source(std::string_view name);

/// Enclosure [lambda_min, lambda_max] of a Hermitian spectrum.
///
/// rho = (lambda_max - lambda_min) / 4, so the shifted matrix
/// M - lambda_min I has its spectrum in [0, 4 rho].
class SpectralInterval {
public:
    SpectralInterval(double lambda_min, double lambda_max, SpectralSource source);

    double lambda_min() const noexcept { return lambda_min_; }
    double lambda_max() const noexcept { return lambda_max_; }
    double rho() const noexcept { return rho_; }
    SpectralSource source() const noexcept { return source_; }

    /// lambda_max / lambda_min; requires lambda_min > 0.
    double kappa() const;
    bool is_positive_definite() const noexcept { return lambda_min_ > 0.0; }

    /// Interval of M + delta I.
    SpectralInterval shifted(double delta) const;

private:
    double lambda_min_;
    double lambda_max_;
    double rho_;
    SpectralSource source_;
};

/// Exact mode runs the dense eigensolver (desk scale, n up to a few thousand);
/// Gershgorin mode returns a cheap enclosure of the exact interval.
SpectralInterval spectral_interval(const BandedHermitianMatrix& m,
                                   SpectralSource mode = SpectralSource::exact);
SpectralInterval spectral_interval(const SparseHermitianMatrix& m,
                                   SpectralSource mode = SpectralSource::exact);
SpectralInterval spectral_interval(const Eigen::MatrixXcd& dense_hermitian,
                                   SpectralSource mode = SpectralSource::exact);

}  // namespace decay
