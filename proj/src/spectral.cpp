#include "decay/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "decay/error.hpp"

namespace decay {

SpectralSource parse_spectral_source(std::string_view name) {
    if (name == "exact") return SpectralSource::exact;
    if (name == "gershgorin") return SpectralSource::gershgorin;
    throw InvalidArgument("unknown spectral mode '" + std::string(name) + "'");
}

SpectralInterval::SpectralInterval(double lambda_min, double lambda_max, SpectralSource source)
    : lambda_min_(lambda_min), lambda_max_(lambda_max), rho_((lambda_max - lambda_min) / 4.0), source_(source) {
    if (!(std::isfinite(lambda_min) && std::isfinite(lambda_max))) {
        throw InvalidArgument("spectral interval ends must be finite");
    }
    if (lambda_min > lambda_max) throw InvalidArgument("spectral interval requires lambda_min <= lambda_max");
}

double SpectralInterval::kappa() const {
    if (!(lambda_min_ > 0.0)) throw DomainError("condition number needs a positive definite interval");
    return lambda_max_ / lambda_min_;
}

SpectralInterval SpectralInterval::shifted(double delta) const {
    return SpectralInterval(lambda_min_ + delta, lambda_max_ + delta, source_);
}

namespace {

SpectralInterval exact_interval(const Eigen::MatrixXcd& a) {
    double lo = 0.0;
    double hi = 0.0;
    if (a.imag().cwiseAbs().maxCoeff() == 0.0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.real(), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
        lo = es.eigenvalues().minCoeff();
        hi = es.eigenvalues().maxCoeff();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
        lo = es.eigenvalues().minCoeff();
        hi = es.eigenvalues().maxCoeff();
    }
    return SpectralInterval(lo, hi, SpectralSource::exact);
}

template <class RowFn>
SpectralInterval gershgorin(std::size_t n, RowFn row) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        const auto [centre, radius] = row(i);
        lo = std::min(lo, centre - radius);
        hi = std::max(hi, centre + radius);
    }
    return SpectralInterval(lo, hi, SpectralSource::gershgorin);
}

}  // namespace

SpectralInterval spectral_interval(const BandedHermitianMatrix& m, SpectralSource mode) {
    if (mode == SpectralSource::exact) return exact_interval(m.to_dense());
    const std::size_t n = m.order();
    const std::size_t b = m.bandwidth();
    return gershgorin(n, [&](std::size_t i) {
        double radius = 0.0;
        const std::size_t lo = i >= b ? i - b : 0;
        const std::size_t hi = std::min(n - 1, i + b);
        for (std::size_t j = lo; j <= hi; ++j) {
            if (j != i) radius += std::abs(m.entry(i + 1, j + 1));
        }
        return std::pair{m.entry(i + 1, i + 1).real(), radius};
    });
}

SpectralInterval spectral_interval(const SparseHermitianMatrix& m, SpectralSource mode) {
    if (mode == SpectralSource::exact) return exact_interval(m.to_dense());
    return gershgorin(m.order(), [&](std::size_t i) {
        double radius = 0.0;
        double centre = 0.0;
        const auto cols = m.row_pattern(i);
        const auto vals = m.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            if (cols[p] == i) {
                centre = vals[p].real();
            } else {
                radius += std::abs(vals[p]);
            }
        }
        return std::pair{centre, radius};
    });
}

SpectralInterval spectral_interval(const Eigen::MatrixXcd& a, SpectralSource mode) {
    if (a.rows() != a.cols() || a.rows() == 0) throw InvalidArgument("matrix must be square and nonempty");
    if (mode == SpectralSource::exact) return exact_interval(a);
    return gershgorin(static_cast<std::size_t>(a.rows()), [&](std::size_t i) {
        const auto r = static_cast<Eigen::Index>(i);
        const double centre = a(r, r).real();
        return std::pair{centre, a.row(r).cwiseAbs().sum() - std::abs(a(r, r))};
    });
}

}  // namespace decay
