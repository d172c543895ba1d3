#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "decay/banded_matrix.hpp"

namespace decay {

/// Position in a d-dimensional Cartesian grid, 1-based components.
class MultiIndex {
public:
    MultiIndex() = default;
    MultiIndex(std::initializer_list<std::size_t> components) : components_(components) {}
    explicit MultiIndex(std::vector<std::size_t> components) : components_(std::move(components)) {}

    std::size_t dimension() const noexcept { return components_.size(); }
    std::size_t operator[](std::size_t l) const { return components_.at(l); }
    const std::vector<std::size_t>& components() const noexcept { return components_; }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<std::size_t> components_;
};

/// How a linear index of A is split into per-factor components.
///
/// first_fastest is the vec() convention: component 1 varies fastest, so
/// A = I (x) M1 + M2 (x) I for two factors and linear index 94 of a 20x20 grid
/// is (14, 5). first_slowest is the row-major convention, A = M1 (x) I + I (x) M2.
/// In both conventions component l is paired with factor l, so
/// exp(-tau A)_{kt} = prod_l exp(-tau M_l)_{k_l t_l}.
enum class IndexOrder { first_fastest, first_slowest };

/// Kronecker sum A = M_1 (+) M_2 (+) ... (+) M_d of banded Hermitian factors.
class KroneckerSum {
public:
    /// Dense assembly is refused above this order.
    static constexpr std::size_t kMaxDenseOrder = 4096;

    explicit KroneckerSum(std::vector<BandedHermitianMatrix> factors,
                          IndexOrder order = IndexOrder::first_fastest);

    std::size_t dimension() const noexcept { return factors_.size(); }
    std::size_t order() const noexcept { return total_order_; }
    IndexOrder index_order() const noexcept { return index_order_; }
    const BandedHermitianMatrix& factor(std::size_t l) const { return factors_.at(l); }
    const std::vector<BandedHermitianMatrix>& factors() const noexcept { return factors_; }

    /// 1-based multi-index -> 1-based linear index.
    std::size_t linearize(const MultiIndex& k) const;
    /// 1-based linear index -> 1-based multi-index.
    MultiIndex delinearize(std::size_t k) const;

    /// Entry of A at 1-based linear positions.
    Complex entry(std::size_t k, std::size_t t) const;

    Eigen::MatrixXcd to_dense() const;

private:
    std::vector<BandedHermitianMatrix> factors_;
    IndexOrder index_order_;
    std::size_t total_order_;
};

}  // namespace decay
