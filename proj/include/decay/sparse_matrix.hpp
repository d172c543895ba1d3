#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "decay/banded_matrix.hpp"

namespace decay {

/// Hermitian matrix with a general (symmetric) sparsity pattern, CSR storage.
///
/// Both triangles are stored. Zero values that were given explicitly stay in
/// the pattern: the pattern graph is defined by stored positions.
class SparseHermitianMatrix {
public:
    struct Triplet {
        std::size_t row;  // 0-based
        std::size_t col;  // 0-based
        Complex value;
    };

    /// entries must describe the full pattern (both triangles) of a Hermitian
    /// matrix; duplicates at the same position are summed.
    SparseHermitianMatrix(std::size_t n, std::span<const Triplet> entries);

    /// Mirrors each entry into the other triangle. A position given together
    /// with its mirror image is rejected.
    static SparseHermitianMatrix from_triangle(std::size_t n, std::span<const Triplet> entries);

    std::size_t order() const noexcept { return n_; }
    std::size_t nonzeros() const noexcept { return cols_.size(); }

    /// 1-based access.
    Complex entry(Index i, Index j) const;

    /// Columns stored in 0-based row i, sorted ascending (includes the diagonal when stored).
    std::span<const std::size_t> row_pattern(std::size_t i) const;
    std::span<const Complex> row_values(std::size_t i) const;

    bool is_real() const noexcept;
    double max_diagonal() const;
    Eigen::MatrixXcd to_dense() const;

private:
    SparseHermitianMatrix() = default;
    void build(std::size_t n, std::vector<Triplet> entries);

    std::size_t n_ = 0;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::size_t> cols_;
    std::vector<Complex> values_;
};

}  // namespace decay
