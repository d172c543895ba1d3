#include <doctest.h>

#include <random>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "decay/banded_matrix.hpp"
#include "decay/error.hpp"
#include "decay/kronecker_sum.hpp"
#include "decay/matrix_market.hpp"
#include "decay/oracle.hpp"
#include "decay/sparse_matrix.hpp"
#include "decay/spectral.hpp"
#include "support.hpp"

using namespace decay;

TEST_CASE("tridiag test matrix of order 3") {
    const auto m = make_test_matrix(TestMatrixKind::tridiag, 3);
    CHECK(m.bandwidth() == 1);
    const double expected[3][3] = {{4, -1, 0}, {-1, 4, -1}, {0, -1, 4}};
    for (Index i = 1; i <= 3; ++i) {
        for (Index j = 1; j <= 3; ++j) CHECK(m.entry(i, j) == Complex(expected[i - 1][j - 1]));
    }
}

TEST_CASE("pentadiag test matrix row 3") {
    const auto m = make_test_matrix(TestMatrixKind::pentadiag, 5);
    CHECK(m.bandwidth() == 2);
    const double row[5] = {-0.5, -1, 4, -1, -0.5};
    for (Index j = 1; j <= 5; ++j) CHECK(m.entry(3, j) == Complex(row[j - 1]));
}

TEST_CASE("test matrix size guards") {
    CHECK_THROWS_AS(make_test_matrix(TestMatrixKind::tridiag, 2), InvalidArgument);
    CHECK_THROWS_AS(make_test_matrix(TestMatrixKind::pentadiag, 4), InvalidArgument);
    CHECK_THROWS_AS(parse_test_matrix_kind("hexadiag"), InvalidArgument);
}

TEST_CASE("banded storage is Hermitian and zero outside the band") {
    const std::vector<Complex> symbol = {Complex(3.0), Complex(0.5, -0.25), Complex(-0.1, 0.2)};
    const auto m = BandedHermitianMatrix::toeplitz(9, symbol);
    CHECK_FALSE(m.is_real());
    for (Index i = 1; i <= 9; ++i) {
        for (Index j = 1; j <= 9; ++j) {
            CHECK(m.entry(i, j) == std::conj(m.entry(j, i)));
            if ((i > j ? i - j : j - i) > 2) CHECK(m.entry(i, j) == Complex(0.0));
        }
    }
    const Eigen::MatrixXcd d = m.to_dense();
    CHECK(testing::max_abs_diff(d, d.adjoint()) == 0.0);
    CHECK(testing::max_abs_diff(d, m.to_sparse().to_dense()) == 0.0);
}

TEST_CASE("generator strings") {
    CHECK(parse_generator("tridiag:-2,5,-2", 6).entry(2, 3) == Complex(-2.0));
    CHECK(parse_generator("pentadiag:-0.5,-1,4,-1,-0.5", 7).entry(1, 3) == Complex(-0.5));
    CHECK(parse_generator("toeplitz:3,1,0.5", 7).entry(5, 7) == Complex(0.5));
    CHECK(parse_generator("identity", 4).entry(2, 2) == Complex(1.0));
    CHECK(parse_generator("identity", 4).entry(2, 3) == Complex(0.0));
    CHECK(is_generator_spec("tridiag"));
    CHECK_FALSE(is_generator_spec("matrix.mtx"));
    CHECK_THROWS_AS(parse_generator("tridiag:-1,4,-2", 5), InvalidArgument);
    CHECK_THROWS_AS(parse_generator("tridiag:-1,4", 5), InvalidArgument);
    CHECK_THROWS_AS(parse_generator("tridiag:-1,x,-1", 5), InvalidArgument);
}

TEST_CASE("sparse matrix rejects non-Hermitian input") {
    using T = SparseHermitianMatrix::Triplet;
    const std::vector<T> asym = {{0, 0, 1.0}, {0, 1, 2.0}};
    CHECK_THROWS_AS(SparseHermitianMatrix(2, asym), InvalidArgument);
    const std::vector<T> bad_values = {{0, 1, 2.0}, {1, 0, 3.0}};
    CHECK_THROWS_AS(SparseHermitianMatrix(2, bad_values), InvalidArgument);
    const std::vector<T> hermitian = {{0, 1, Complex(1, 1)}, {1, 0, Complex(1, -1)}, {0, 0, 2.0}, {0, 0, 1.0}};
    const SparseHermitianMatrix m(2, hermitian);
    CHECK(m.entry(1, 1) == Complex(3.0));  // duplicates are summed
    CHECK(m.entry(2, 1) == Complex(1, -1));
}

TEST_CASE("spectral interval of the test matrices") {
    const auto tri = spectral_interval(make_test_matrix(TestMatrixKind::tridiag, 200));
    const double pi = std::numbers::pi;
    // eigenvalues 4 - 2 cos(j pi / (n + 1))
    CHECK(tri.lambda_min() == doctest::Approx(4.0 - 2.0 * std::cos(pi / 201.0)).epsilon(1e-12));
    CHECK(tri.lambda_max() == doctest::Approx(4.0 + 2.0 * std::cos(pi / 201.0)).epsilon(1e-12));
    CHECK(4.0 * tri.rho() == doctest::Approx(3.9995).epsilon(1.25e-4));
    const auto penta = spectral_interval(make_test_matrix(TestMatrixKind::pentadiag, 200));
    CHECK(4.0 * penta.rho() == doctest::Approx(4.4989).epsilon(1.2e-4));
}

TEST_CASE("spectral interval of the identity") {
    const auto s = spectral_interval(parse_generator("identity", 10));
    CHECK(s.lambda_min() == doctest::Approx(1.0));
    CHECK(s.lambda_max() == doctest::Approx(1.0));
    CHECK(s.rho() == doctest::Approx(0.0));
}

TEST_CASE("Gershgorin interval encloses the exact interval") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 12 + trial;
        std::vector<std::vector<Complex>> upper(3);
        for (std::size_t p = 0; p < 3; ++p) {
            for (std::size_t i = 0; i + p < n; ++i) {
                upper[p].push_back(p == 0 ? Complex(5.0 * u(rng)) : Complex(u(rng), trial % 2 ? u(rng) : 0.0));
            }
        }
        const BandedHermitianMatrix m(n, upper);
        const auto exact = spectral_interval(m, SpectralSource::exact);
        const auto gersh = spectral_interval(m, SpectralSource::gershgorin);
        CHECK(gersh.lambda_min() <= exact.lambda_min() + 1e-12);
        CHECK(exact.lambda_max() <= gersh.lambda_max() + 1e-12);
        CHECK(exact.rho() >= 0.0);
    }
}

TEST_CASE("Kronecker index maps") {
    const auto m = make_test_matrix(TestMatrixKind::tridiag, 20);
    const KroneckerSum a({m, m});
    CHECK(a.order() == 400);
    CHECK(a.linearize(MultiIndex{1, 1}) == 1);
    CHECK(a.delinearize(94) == MultiIndex{14, 5});
    for (std::size_t k = 1; k <= a.order(); ++k) CHECK(a.linearize(a.delinearize(k)) == k);
    CHECK(a.linearize(a.delinearize(257)) == 257);
    CHECK_THROWS_AS(a.linearize(MultiIndex{21, 1}), InvalidArgument);
    CHECK_THROWS_AS(a.delinearize(401), InvalidArgument);

    const KroneckerSum rowmajor({m, m}, IndexOrder::first_slowest);
    for (std::size_t k = 1; k <= rowmajor.order(); ++k) CHECK(rowmajor.linearize(rowmajor.delinearize(k)) == k);
}

TEST_CASE("Kronecker sum assembly matches Eigen's Kronecker product") {
    const auto m1 = make_test_matrix(TestMatrixKind::tridiag, 4);
    const auto m2 = make_test_matrix(TestMatrixKind::pentadiag, 6);
    const Eigen::MatrixXcd d1 = m1.to_dense();
    const Eigen::MatrixXcd d2 = m2.to_dense();
    const Eigen::MatrixXcd i1 = Eigen::MatrixXcd::Identity(4, 4);
    const Eigen::MatrixXcd i2 = Eigen::MatrixXcd::Identity(6, 6);

    // first index fastest: I (x) M1 + M2 (x) I
    const Eigen::MatrixXcd ff = Eigen::kroneckerProduct(i2, d1).eval() + Eigen::kroneckerProduct(d2, i1).eval();
    CHECK(testing::max_abs_diff(KroneckerSum({m1, m2}).to_dense(), ff) == 0.0);

    // first index slowest: M1 (x) I + I (x) M2
    const Eigen::MatrixXcd fs = Eigen::kroneckerProduct(d1, i2).eval() + Eigen::kroneckerProduct(i1, d2).eval();
    CHECK(testing::max_abs_diff(KroneckerSum({m1, m2}, IndexOrder::first_slowest).to_dense(), fs) == 0.0);
}

TEST_CASE("Kronecker sum of HPD factors is HPD") {
    const auto m = make_test_matrix(TestMatrixKind::pentadiag, 8);
    const EigenDecomposition eig(KroneckerSum({m, m, m}).to_dense());
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("Matrix Market reader") {
    SUBCASE("symmetric lower triangle") {
        std::istringstream in(
            "%%MatrixMarket matrix coordinate real symmetric\n% comment\n3 3 5\n1 1 4\n2 1 -1\n2 2 4\n3 2 -1\n3 3 4\n");
        const auto m = read_matrix_market(in);
        CHECK(testing::max_abs_diff(m.to_dense(), make_test_matrix(TestMatrixKind::tridiag, 3).to_dense()) == 0.0);
    }
    SUBCASE("hermitian complex") {
        std::istringstream in("%%MatrixMarket matrix coordinate complex hermitian\n2 2 3\n1 1 2 0\n2 1 0 1\n2 2 2 0\n");
        const auto m = read_matrix_market(in);
        CHECK(m.entry(2, 1) == Complex(0, 1));
        CHECK(m.entry(1, 2) == Complex(0, -1));
    }
    SUBCASE("general header is rejected") {
        std::istringstream in("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1\n");
        CHECK_THROWS_AS(read_matrix_market(in), ParseError);
    }
    SUBCASE("empty input") {
        std::istringstream in("");
        CHECK_THROWS_AS(read_matrix_market(in), ParseError);
    }
    SUBCASE("truncated input") {
        std::istringstream in("%%MatrixMarket matrix coordinate real symmetric\n3 3 5\n1 1 4\n");
        CHECK_THROWS_AS(read_matrix_market(in), ParseError);
    }
}
