#include "decay/kronecker_sum.hpp"

#include <string>

#include "decay/error.hpp"

namespace decay {

KroneckerSum::KroneckerSum(std::vector<BandedHermitianMatrix> factors, IndexOrder order)
    : factors_(std::move(factors)), index_order_(order), total_order_(1) {
    if (factors_.size() < 2) throw InvalidArgument("a Kronecker sum needs at least two factors");
    for (const auto& f : factors_) {
        if (total_order_ > std::numeric_limits<std::size_t>::max() / f.order()) {
            throw InvalidArgument("Kronecker sum order overflows");
        }
        total_order_ *= f.order();
    }
}

std::size_t KroneckerSum::linearize(const MultiIndex& k) const {
    if (k.dimension() != factors_.size()) {
        throw InvalidArgument("multi-index has " + std::to_string(k.dimension()) + " components, expected " +
                              std::to_string(factors_.size()));
    }
    const std::size_t d = factors_.size();
    for (std::size_t l = 0; l < d; ++l) {
        if (k[l] < 1 || k[l] > factors_[l].order()) {
            throw InvalidArgument("multi-index component " + std::to_string(l + 1) + " out of range");
        }
    }
    std::size_t linear = 0;
    if (index_order_ == IndexOrder::first_fastest) {
        for (std::size_t l = d; l-- > 0;) linear = linear * factors_[l].order() + (k[l] - 1);
    } else {
        for (std::size_t l = 0; l < d; ++l) linear = linear * factors_[l].order() + (k[l] - 1);
    }
    return linear + 1;
}

MultiIndex KroneckerSum::delinearize(std::size_t k) const {
    if (k < 1 || k > total_order_) throw InvalidArgument("linear index " + std::to_string(k) + " out of range");
    const std::size_t d = factors_.size();
    std::vector<std::size_t> c(d);
    std::size_t rest = k - 1;
    if (index_order_ == IndexOrder::first_fastest) {
        for (std::size_t l = 0; l < d; ++l) {
            c[l] = rest % factors_[l].order() + 1;
            rest /= factors_[l].order();
        }
    } else {
        for (std::size_t l = d; l-- > 0;) {
            c[l] = rest % factors_[l].order() + 1;
            rest /= factors_[l].order();
        }
    }
    return MultiIndex(std::move(c));
}

Complex KroneckerSum::entry(std::size_t k, std::size_t t) const {
    const MultiIndex a = delinearize(k);
    const MultiIndex b = delinearize(t);
    // A_{kt} = sum_l (M_l)_{k_l t_l} * prod_{m != l} delta(k_m, t_m)
    std::size_t differing = 0;
    std::size_t which = 0;
    for (std::size_t l = 0; l < factors_.size(); ++l) {
        if (a[l] != b[l]) {
            ++differing;
            which = l;
        }
    }
    if (differing > 1) return {};
    if (differing == 1) return factors_[which].entry(a[which], b[which]);
    Complex sum{};
    for (std::size_t l = 0; l < factors_.size(); ++l) sum += factors_[l].entry(a[l], b[l]);
    return sum;
}

Eigen::MatrixXcd KroneckerSum::to_dense() const {
    if (total_order_ > kMaxDenseOrder) {
        throw InvalidArgument("dense assembly refused above order " + std::to_string(kMaxDenseOrder));
    }
    const auto n = static_cast<Eigen::Index>(total_order_);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t t = 1; t <= total_order_; ++t) {
        const MultiIndex tt = delinearize(t);
        for (std::size_t l = 0; l < factors_.size(); ++l) {
            const auto& f = factors_[l];
            const std::size_t b = f.bandwidth();
            const std::size_t lo = tt[l] > b ? tt[l] - b : 1;
            const std::size_t hi = std::min(f.order(), tt[l] + b);
            for (std::size_t kl = lo; kl <= hi; ++kl) {
                std::vector<std::size_t> kc = tt.components();
                kc[l] = kl;
                const std::size_t k = linearize(MultiIndex(std::move(kc)));
                a(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(t - 1)) += f.entry(kl, tt[l]);
            }
        }
    }
    return a;
}

}  // namespace decay
