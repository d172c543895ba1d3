#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace decay {

using Complex = std::complex<double>;

/// Row/column position in a matrix. Public entry-level APIs are 1-based,
/// matching the way the test columns (t = 127, t = 94, ...) are usually quoted.
using Index = std::size_t;

class SparseHermitianMatrix;

/// Hermitian matrix with M(i,j) = 0 for |i-j| > bandwidth.
///
/// Only the main diagonal and the bandwidth() upper diagonals are stored;
/// the lower triangle is implied by M(j,i) = conj(M(i,j)).
/// Instances are immutable after construction.
class BandedHermitianMatrix {
public:
    /// upper[p][i] is M(i, i+p) with 0-based i; upper[p] must have n-p entries.
    /// The main diagonal upper[0] must be real.
    BandedHermitianMatrix(std::size_t n, std::vector<std::vector<Complex>> upper);

    /// Hermitian Toeplitz matrix; symbol[p] is the value on the p-th upper diagonal.
    static BandedHermitianMatrix toeplitz(std::size_t n, std::span<const Complex> symbol);
    static BandedHermitianMatrix toeplitz(std::size_t n, std::span<const double> symbol);

    std::size_t order() const noexcept { return n_; }
    std::size_t bandwidth() const noexcept { return upper_.size() - 1; }

    /// 1-based access; zero outside the band.
    Complex entry(Index i, Index j) const;

    bool is_real() const noexcept;
    double max_diagonal() const;

    Eigen::MatrixXcd to_dense() const;
    SparseHermitianMatrix to_sparse() const;

private:
    std::size_t n_;
    std::vector<std::vector<Complex>> upper_;
};

enum class TestMatrixKind { tridiag, pentadiag };

/// tridiag(-1,4,-1) or pentadiag(-0.5,-1,4,-1,-0.5) of order n.
BandedHermitianMatrix make_test_matrix(TestMatrixKind kind, std::size_t n);

TestMatrixKind parse_test_matrix_kind(std::string_view name);

/// Builds a banded matrix from a generator string:
///   "tridiag"               -> tridiag(-1,4,-1)
///   "pentadiag"             -> pentadiag(-0.5,-1,4,-1,-0.5)
///   "tridiag:a,b,c"         -> sub-diagonal a, diagonal b, super-diagonal c (a == c)
///   "pentadiag:a,b,c,d,e"   -> (a,b) below, c on the diagonal, (d,e) above
///   "toeplitz:c0,c1,...,cb" -> symmetric Toeplitz with c0 on the diagonal
///   "identity"              -> I_n stored with bandwidth 1
BandedHermitianMatrix parse_generator(std::string_view spec, std::size_t n);

/// True when spec names a builtin generator rather than a file.
bool is_generator_spec(std::string_view spec);

}  // namespace decay
