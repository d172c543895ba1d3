#include "decay/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "decay/error.hpp"

namespace decay {

SparseHermitianMatrix::SparseHermitianMatrix(std::size_t n, std::span<const Triplet> entries) {
    build(n, std::vector<Triplet>(entries.begin(), entries.end()));
}

SparseHermitianMatrix SparseHermitianMatrix::from_triangle(std::size_t n, std::span<const Triplet> entries) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const Triplet& e : entries) {
        if (e.row != e.col) seen.insert({e.row, e.col});
    }
    std::vector<Triplet> full;
    full.reserve(2 * entries.size());
    for (const Triplet& e : entries) {
        full.push_back(e);
        if (e.row == e.col) continue;
        if (seen.count({e.col, e.row})) {
            throw InvalidArgument("entry (" + std::to_string(e.row + 1) + "," + std::to_string(e.col + 1) +
                                  ") given in both triangles");
        }
        full.push_back({e.col, e.row, std::conj(e.value)});
    }
    SparseHermitianMatrix m;
    m.build(n, std::move(full));
    return m;
}

void SparseHermitianMatrix::build(std::size_t n, std::vector<Triplet> entries) {
    if (n == 0) throw InvalidArgument("matrix order must be positive");
    for (const Triplet& e : entries) {
        if (e.row >= n || e.col >= n) throw InvalidArgument("sparse entry outside the matrix");
    }
    std::sort(entries.begin(), entries.end(),
              [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });

    n_ = n;
    row_ptr_.assign(n + 1, 0);
    cols_.clear();
    values_.clear();
    for (std::size_t k = 0; k < entries.size();) {
        const Triplet& e = entries[k];
        Complex sum{};
        std::size_t j = k;
        while (j < entries.size() && entries[j].row == e.row && entries[j].col == e.col) sum += entries[j++].value;
        cols_.push_back(e.col);
        values_.push_back(sum);
        ++row_ptr_[e.row + 1];
        k = j;
    }
    for (std::size_t i = 0; i < n; ++i) row_ptr_[i + 1] += row_ptr_[i];

    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
            const std::size_t j = cols_[p];
            const Complex mirror = entry(j + 1, i + 1);
            const auto row_j = row_pattern(j);
            if (!std::binary_search(row_j.begin(), row_j.end(), i)) {
                throw InvalidArgument("sparsity pattern is not symmetric at (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ")");
            }
            const double scale = std::max({1.0, std::abs(values_[p]), std::abs(mirror)});
            if (std::abs(values_[p] - std::conj(mirror)) > 1e-14 * scale) {
                throw InvalidArgument("matrix is not Hermitian at (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ")");
            }
            if (i == j) values_[p] = values_[p].real();
        }
    }
}

Complex SparseHermitianMatrix::entry(Index i, Index j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_) {
        throw InvalidArgument("entry (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    }
    const auto row = row_pattern(i - 1);
    const auto it = std::lower_bound(row.begin(), row.end(), j - 1);
    if (it == row.end() || *it != j - 1) return {};
    return values_[row_ptr_[i - 1] + static_cast<std::size_t>(it - row.begin())];
}

std::span<const std::size_t> SparseHermitianMatrix::row_pattern(std::size_t i) const {
    return std::span<const std::size_t>(cols_).subspan(row_ptr_.at(i), row_ptr_.at(i + 1) - row_ptr_[i]);
}

std::span<const Complex> SparseHermitianMatrix::row_values(std::size_t i) const {
    return std::span<const Complex>(values_).subspan(row_ptr_.at(i), row_ptr_.at(i + 1) - row_ptr_[i]);
}

bool SparseHermitianMatrix::is_real() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](const Complex& z) { return z.imag() == 0.0; });
}

double SparseHermitianMatrix::max_diagonal() const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= n_; ++i) m = std::max(m, entry(i, i).real());
    return m;
}

Eigen::MatrixXcd SparseHermitianMatrix::to_dense() const {
    const auto n = static_cast<Eigen::Index>(n_);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cols_[p])) = values_[p];
        }
    }
    return a;
}

}  // namespace decay
