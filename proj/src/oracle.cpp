#include "decay/oracle.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "decay/error.hpp"
#include "decay/quadrature.hpp"

namespace decay {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_square(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols() || a.rows() == 0) throw InvalidArgument("matrix must be square and nonempty");
}

Eigen::Index checked_index(Index t, std::size_t n) {
    if (t < 1 || t > n) throw InvalidArgument("column " + std::to_string(t) + " out of range");
    return static_cast<Eigen::Index>(t - 1);
}

}  // namespace

EigenDecomposition::EigenDecomposition(const Eigen::MatrixXcd& a) {
    check_square(a);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw InvalidArgument("matrix is not Hermitian");
    if (a.imag().cwiseAbs().maxCoeff() == 0.0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.real());
        if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
        eigenvalues_ = es.eigenvalues();
        eigenvectors_ = es.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
        if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
        eigenvalues_ = es.eigenvalues();
        eigenvectors_ = es.eigenvectors();
    }
    norm2_ = eigenvalues_.cwiseAbs().maxCoeff();
}

Eigen::VectorXcd EigenDecomposition::spectrum_values(const SpectralFunction& f) const {
    Eigen::VectorXcd fv(eigenvalues_.size());
    for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
        fv(i) = f(eigenvalues_(i));
        if (!std::isfinite(fv(i).real()) || !std::isfinite(fv(i).imag())) {
            std::ostringstream msg;
            msg << "function is undefined at eigenvalue " << eigenvalues_(i);
            throw DomainError(msg.str());
        }
    }
    return fv;
}

Eigen::MatrixXcd EigenDecomposition::apply(const SpectralFunction& f) const {
    const Eigen::VectorXcd fv = spectrum_values(f);
    Eigen::MatrixXcd out = eigenvectors_ * fv.asDiagonal() * eigenvectors_.adjoint();
    if (fv.imag().cwiseAbs().maxCoeff() == 0.0) out = 0.5 * (out + out.adjoint()).eval();
    return out;
}

Eigen::VectorXcd EigenDecomposition::column(const SpectralFunction& f, Index t) const {
    const Eigen::Index c = checked_index(t, order());
    const Eigen::VectorXcd fv = spectrum_values(f);
    const Eigen::VectorXcd coeff = fv.cwiseProduct(eigenvectors_.row(c).adjoint());
    return eigenvectors_ * coeff;
}

Eigen::MatrixXcd matrix_function(const Eigen::MatrixXcd& hermitian, const SpectralFunction& f) {
    return EigenDecomposition(hermitian).apply(f);
}

OracleColumn matrix_function_column(const EigenDecomposition& eig, const SpectralFunction& f, Index t) {
    OracleColumn out;
    out.values = eig.column(f, t);
    // Backward-stable eigensolver: U and Lambda are exact for M + E with
    // ||E|| ~ n eps ||M||, which moves f(M) by about ||E|| times the largest
    // divided difference of f, plus the rounding of the final product.
    const Eigen::VectorXcd fv = eig.spectrum_values(f);
    const Eigen::VectorXd& lam = eig.eigenvalues();
    double max_f = fv.cwiseAbs().maxCoeff();
    double max_slope = 0.0;
    for (Eigen::Index i = 0; i + 1 < lam.size(); ++i) {
        const double gap = lam(i + 1) - lam(i);
        if (gap > 0.0) max_slope = std::max(max_slope, std::abs(fv(i + 1) - fv(i)) / gap);
    }
    const double n = static_cast<double>(eig.order());
    out.noise_floor = 4.0 * n * kEps * (max_f + eig.norm2() * max_slope);
    return out;
}

Eigen::VectorXcd resolvent_column(const Eigen::MatrixXcd& m, Complex shift, Index t) {
    check_square(m);
    const auto n = static_cast<std::size_t>(m.rows());
    const Eigen::Index c = checked_index(t, n);
    const Eigen::MatrixXcd shifted = m - shift * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
    const double rcond = lu.rcond();
    if (!(rcond > static_cast<double>(n) * kEps)) {
        std::ostringstream msg;
        msg << "shift " << shift << " is numerically an eigenvalue (rcond = " << rcond << ")";
        throw NumericalError(msg.str());
    }
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m.rows());
    e(c) = 1.0;
    return lu.solve(e);
}

Eigen::MatrixXcd lancaster_column(const EigenDecomposition& m1, const EigenDecomposition& m2, double omega,
                                  const MultiIndex& t, double tol) {
    if (t.dimension() != 2) throw InvalidArgument("lancaster_column needs a 2-component index");
    if (omega > 0.0) throw InvalidArgument("omega must be <= 0");
    if (!(m1.eigenvalues().minCoeff() > 0.0) || !(m2.eigenvalues().minCoeff() > 0.0)) {
        throw DomainError("the integral representation needs positive definite factors");
    }
    const std::size_t n1 = m1.order();
    const std::size_t n2 = m2.order();
    const Eigen::Index t1 = checked_index(t[0], n1);
    const Eigen::Index t2 = checked_index(t[1], n2);

    // exp(-tau M)_{k t} = sum_i U_{k i} exp(-tau lambda_i) conj(U_{t i})
    const Eigen::MatrixXcd w1 = m1.eigenvectors() * m1.eigenvectors().row(t1).adjoint().asDiagonal();
    const Eigen::MatrixXcd w2 = m2.eigenvectors() * m2.eigenvectors().row(t2).adjoint().asDiagonal();
    const Eigen::VectorXd& l1 = m1.eigenvalues();
    const Eigen::VectorXd l2 = m2.eigenvalues().array() - omega;
    const double rate = l1.minCoeff() + l2.minCoeff();
    const double breaks[] = {0.5 / rate, 2.0 / rate, 8.0 / rate};

    const QuadratureOptions options{tol, tol, 10000};
    Eigen::MatrixXcd x(n1, n2);
    for (std::size_t a = 0; a < n1; ++a) {
        for (std::size_t b = 0; b < n2; ++b) {
            const auto ra = static_cast<Eigen::Index>(a);
            const auto rb = static_cast<Eigen::Index>(b);
            auto entry = [&](double tau, bool imag) {
                const Complex e1 = (w1.row(ra).transpose().array() * (-tau * l1.array()).exp().cast<Complex>()).sum();
                const Complex e2 = (w2.row(rb).transpose().array() * (-tau * l2.array()).exp().cast<Complex>()).sum();
                const Complex p = e1 * e2;
                return imag ? p.imag() : p.real();
            };
            const auto re = integrate_semi_infinite([&](double tau) { return entry(tau, false); }, 0.0, options, {},
                                                    breaks);
            double im = 0.0;
            if (w1.imag().cwiseAbs().maxCoeff() > 0.0 || w2.imag().cwiseAbs().maxCoeff() > 0.0) {
                const auto q = integrate_semi_infinite([&](double tau) { return entry(tau, true); }, 0.0, options,
                                                       {}, breaks);
                if (!q.converged) throw NumericalError("Lancaster quadrature did not converge");
                im = q.value;
            }
            if (!re.converged) throw NumericalError("Lancaster quadrature did not converge");
            x(ra, rb) = Complex(re.value, im);
        }
    }
    return x;
}

Complex kron_exp_entry(const std::vector<EigenDecomposition>& factors, double tau, const MultiIndex& k,
                       const MultiIndex& t) {
    if (k.dimension() != factors.size() || t.dimension() != factors.size()) {
        throw InvalidArgument("multi-index dimension does not match the number of factors");
    }
    Complex prod = 1.0;
    for (std::size_t l = 0; l < factors.size(); ++l) {
        const auto col = factors[l].column([tau](double x) { return Complex(std::exp(-tau * x)); }, t[l]);
        prod *= col(checked_index(k[l], factors[l].order()));
    }
    return prod;
}

}  // namespace decay
