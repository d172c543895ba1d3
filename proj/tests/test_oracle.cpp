#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "decay/error.hpp"
#include "decay/kronecker_sum.hpp"
#include "decay/oracle.hpp"
#include "support.hpp"

using namespace decay;

TEST_CASE("eigendecomposition invariants") {
    for (auto kind : {TestMatrixKind::tridiag, TestMatrixKind::pentadiag}) {
        const Eigen::MatrixXcd m = make_test_matrix(kind, 120).to_dense();
        const EigenDecomposition eig(m);
        const Eigen::MatrixXcd& u = eig.eigenvectors();
        const Eigen::MatrixXcd lam = eig.eigenvalues().cast<Complex>().asDiagonal();
        CHECK((m * u - u * lam).cwiseAbs().maxCoeff() <= 1e-10 * m.cwiseAbs().maxCoeff());
        CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(120, 120)).cwiseAbs().maxCoeff() <= 1e-12);
        for (Eigen::Index i = 1; i < eig.eigenvalues().size(); ++i) {
            CHECK(eig.eigenvalues()(i - 1) <= eig.eigenvalues()(i));
        }
    }
}

TEST_CASE("matrix functions") {
    const Eigen::MatrixXcd m = make_test_matrix(TestMatrixKind::pentadiag, 50).to_dense();
    CHECK(testing::max_abs_diff(matrix_function(m, [](double x) { return Complex(x); }), m) <= 1e-12);
    CHECK(testing::max_abs_diff(matrix_function(m, [](double x) { return Complex(x * x); }), m * m) <= 1e-10);
    CHECK(testing::max_abs_diff(matrix_function(m, [](double x) { return Complex(1.0 / x); }), m.inverse()) <=
          1e-10);

    const auto e = [](double tau) {
        return [tau](double x) { return Complex(std::exp(-tau * x)); };
    };
    const Eigen::MatrixXcd e1 = matrix_function(m, e(0.3));
    const Eigen::MatrixXcd e2 = matrix_function(m, e(1.1));
    CHECK(testing::max_abs_diff(e1 * e2, matrix_function(m, e(1.4))) <= 1e-9);

    const Eigen::MatrixXcd s = matrix_function(m, [](double x) { return Complex(std::sin(x)); });
    CHECK(testing::max_abs_diff(s, s.adjoint()) <= 1e-12);
}

TEST_CASE("complex Hermitian input") {
    const std::vector<Complex> symbol = {Complex(5.0), Complex(0.5, 1.0), Complex(0.0, -0.3)};
    const Eigen::MatrixXcd m = BandedHermitianMatrix::toeplitz(30, symbol).to_dense();
    const Eigen::MatrixXcd r = matrix_function(m, [](double x) { return Complex(1.0 / std::sqrt(x)); });
    CHECK(testing::max_abs_diff(r, r.adjoint()) <= 1e-12);
    CHECK(testing::max_abs_diff(r * r, m.inverse()) <= 1e-10);
}

TEST_CASE("oracle column of exp(-4 M) decays superexponentially") {
    const auto m = make_test_matrix(TestMatrixKind::tridiag, 200);
    const EigenDecomposition eig(m);
    const SpectralFunction f = [](double x) { return Complex(std::exp(-4.0 * x)); };
    const OracleColumn col = matrix_function_column(eig, f, 127);
    const Eigen::VectorXcd reference = testing::dense_column(m.to_dense(), f, 127);
    CHECK((col.values - reference).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(col.noise_floor > 0.0);
    CHECK(col.noise_floor < 1e-10);
    // log|f_{k,127}| is concave in the distance while resolved: the ratio of successive entries shrinks.
    double prev_ratio = 1.0;
    for (Index k = 128; k < 140; ++k) {
        const double a = std::abs(col.values(k - 1));
        const double b = std::abs(col.values(k));
        if (b <= col.noise_floor) break;
        const double ratio = b / a;
        CHECK(ratio < prev_ratio);
        prev_ratio = ratio;
    }
}

TEST_CASE("function undefined on the spectrum") {
    const Eigen::MatrixXcd m = BandedHermitianMatrix::toeplitz(6, std::vector<double>{0.0, 1.0}).to_dense();
    CHECK_THROWS_AS(matrix_function(m, [](double x) { return Complex(1.0 / std::sqrt(x)); }), DomainError);
}

TEST_CASE("resolvent columns") {
    // Inverse of tridiag(-1,4,-1): U_{i-1}(2) U_{n-j}(2) / U_n(2) for i <= j.
    const std::size_t n = 5;
    std::vector<double> u = {1.0, 4.0};
    for (std::size_t k = 2; k <= n; ++k) u.push_back(4.0 * u[k - 1] - u[k - 2]);
    const Eigen::MatrixXcd m = make_test_matrix(TestMatrixKind::tridiag, n).to_dense();
    for (Index t = 1; t <= n; ++t) {
        const Eigen::VectorXcd x = resolvent_column(m, 0.0, t);
        for (Index k = 1; k <= n; ++k) {
            const Index i = std::min(k, t);
            const Index j = std::max(k, t);
            CHECK(std::abs(x(k - 1) - u[i - 1] * u[n - j] / u[n]) <= 1e-14);
        }
    }
    const Eigen::VectorXcd xi = resolvent_column(m, Complex(0.0, 1.0), 2);
    CHECK(xi.allFinite());
    const Eigen::MatrixXcd shifted = m - Complex(0.0, 1.0) * Eigen::MatrixXcd::Identity(5, 5);
    CHECK((shifted * xi - Eigen::VectorXcd::Unit(5, 1)).cwiseAbs().maxCoeff() <= 1e-14);
    // 4 is an eigenvalue of tridiag(-1,4,-1) of odd order.
    CHECK_THROWS_AS(resolvent_column(m, 4.0, 1), NumericalError);
}

TEST_CASE("Lancaster representation of Kronecker resolvent columns") {
    const auto m = make_test_matrix(TestMatrixKind::tridiag, 10);
    const EigenDecomposition eig(m);
    const KroneckerSum a({m, m});
    const double omega = -1.0;
    for (const MultiIndex& t : {MultiIndex{4, 7}, MultiIndex{1, 1}, MultiIndex{10, 3}}) {
        const Eigen::MatrixXcd x = lancaster_column(eig, eig, omega, t);
        const Eigen::VectorXcd direct = resolvent_column(a.to_dense(), omega, a.linearize(t));
        double dev = 0.0;
        for (std::size_t k1 = 1; k1 <= 10; ++k1) {
            for (std::size_t k2 = 1; k2 <= 10; ++k2) {
                const auto k = a.linearize(MultiIndex{k1, k2});
                dev = std::max(dev, std::abs(x(k1 - 1, k2 - 1) - direct(k - 1)));
            }
        }
        CHECK(dev <= 1e-6);
        CHECK(x.imag().cwiseAbs().maxCoeff() == 0.0);
    }

    const auto id = parse_generator("identity", 4);
    const EigenDecomposition ide(id);
    const Eigen::MatrixXcd xi = lancaster_column(ide, ide, 0.0, MultiIndex{2, 3});
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) {
            CHECK(std::abs(xi(i, j) - (i == 1 && j == 2 ? 0.5 : 0.0)) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(lancaster_column(eig, eig, 1.0, MultiIndex{1, 1}), InvalidArgument);
}

TEST_CASE("Kronecker exponential entries") {
    const auto m1 = make_test_matrix(TestMatrixKind::tridiag, 6);
    const auto m2 = make_test_matrix(TestMatrixKind::pentadiag, 7);
    const KroneckerSum a({m1, m2});
    const Eigen::MatrixXcd dense = matrix_function(a.to_dense(), [](double x) { return Complex(std::exp(-0.7 * x)); });
    const std::vector<EigenDecomposition> factors = {EigenDecomposition(m1), EigenDecomposition(m2)};
    for (std::size_t k = 1; k <= a.order(); k += 5) {
        for (std::size_t t = 1; t <= a.order(); t += 3) {
            const Complex e = kron_exp_entry(factors, 0.7, a.delinearize(k), a.delinearize(t));
            CHECK(std::abs(e - dense(k - 1, t - 1)) <= 1e-12);
        }
    }
}
