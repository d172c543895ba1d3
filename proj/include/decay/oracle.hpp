#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "decay/banded_matrix.hpp"
#include "decay/kronecker_sum.hpp"
#include "decay/sparse_matrix.hpp"

namespace decay {

/// Scalar function applied to the (real) eigenvalues.
using SpectralFunction = std::function<Complex(double)>;

/// M = U diag(lambda) U^*, eigenvalues ascending. Real symmetric input is
/// decomposed in real arithmetic.
class EigenDecomposition {
public:
    explicit EigenDecomposition(const Eigen::MatrixXcd& hermitian);
    explicit EigenDecomposition(const BandedHermitianMatrix& m) : EigenDecomposition(m.to_dense()) {}
    explicit EigenDecomposition(const SparseHermitianMatrix& m) : EigenDecomposition(m.to_dense()) {}

    std::size_t order() const noexcept { return static_cast<std::size_t>(eigenvalues_.size()); }
    const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
    const Eigen::MatrixXcd& eigenvectors() const noexcept { return eigenvectors_; }
    /// Largest |lambda|.
    double norm2() const noexcept { return norm2_; }

    /// U f(Lambda) U^*, Hermitian part taken when f is real on the spectrum.
    Eigen::MatrixXcd apply(const SpectralFunction& f) const;
    /// Column t (1-based) of f(M), O(n^2).
    Eigen::VectorXcd column(const SpectralFunction& f, Index t) const;

    /// f at every eigenvalue; throws DomainError if f is undefined (non-finite) there.
    Eigen::VectorXcd spectrum_values(const SpectralFunction& f) const;

private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
    double norm2_ = 0.0;
};

/// Oracle column together with an estimate of its absolute rounding error.
struct OracleColumn {
    Eigen::VectorXcd values;
    /// Entries with |value| below this are not resolved by the eigensolver
    /// and cannot be used to test a bound.
    double noise_floor = 0.0;
};

Eigen::MatrixXcd matrix_function(const Eigen::MatrixXcd& hermitian, const SpectralFunction& f);
OracleColumn matrix_function_column(const EigenDecomposition& eig, const SpectralFunction& f, Index t);

/// Solution of (M - shift I) x = e_t. Throws NumericalError when the shift is
/// (numerically) an eigenvalue.
Eigen::VectorXcd resolvent_column(const Eigen::MatrixXcd& m, Complex shift, Index t);

/// X_t with X(k1, k2) = int_0^inf exp(-tau M1)_{k1 t1} exp(-tau (M2 - omega I))_{k2 t2} dtau,
/// so that vec(X_t) (first index fastest) is the column t of (M1 (+) M2 - omega I)^{-1}.
/// Requires M1, M2 positive definite and omega <= 0.
Eigen::MatrixXcd lancaster_column(const EigenDecomposition& m1, const EigenDecomposition& m2, double omega,
                                  const MultiIndex& t, double tol = 1e-10);

/// Entry-wise oracle for exp(-tau A) of a Kronecker sum: the product of the
/// per-factor exponential entries.
Complex kron_exp_entry(const std::vector<EigenDecomposition>& factors, double tau, const MultiIndex& k,
                       const MultiIndex& t);

}  // namespace decay
