#include "decay/banded_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "decay/error.hpp"
#include "decay/sparse_matrix.hpp"

namespace decay {

BandedHermitianMatrix::BandedHermitianMatrix(std::size_t n, std::vector<std::vector<Complex>> upper)
    : n_(n), upper_(std::move(upper)) {
    if (n_ == 0) throw InvalidArgument("matrix order must be positive");
    if (upper_.empty()) throw InvalidArgument("banded matrix needs at least the main diagonal");
    if (upper_.size() > n_) throw InvalidArgument("bandwidth must be smaller than the order");
    for (std::size_t p = 0; p < upper_.size(); ++p) {
        if (upper_[p].size() != n_ - p) {
            throw InvalidArgument("diagonal " + std::to_string(p) + " must have " + std::to_string(n_ - p) +
                                  " entries");
        }
    }
    for (const Complex& z : upper_[0]) {
        if (z.imag() != 0.0) throw InvalidArgument("diagonal of a Hermitian matrix must be real");
    }
}

BandedHermitianMatrix BandedHermitianMatrix::toeplitz(std::size_t n, std::span<const Complex> symbol) {
    if (symbol.empty()) throw InvalidArgument("toeplitz symbol is empty");
    std::vector<std::vector<Complex>> upper;
    for (std::size_t p = 0; p < symbol.size() && p < n; ++p) {
        upper.emplace_back(n - p, symbol[p]);
    }
    return BandedHermitianMatrix(n, std::move(upper));
}

BandedHermitianMatrix BandedHermitianMatrix::toeplitz(std::size_t n, std::span<const double> symbol) {
    std::vector<Complex> c(symbol.begin(), symbol.end());
    return toeplitz(n, std::span<const Complex>(c));
}

Complex BandedHermitianMatrix::entry(Index i, Index j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_) {
        throw InvalidArgument("entry (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    }
    if (i <= j) {
        const std::size_t p = j - i;
        return p < upper_.size() ? upper_[p][i - 1] : Complex{};
    }
    const std::size_t p = i - j;
    return p < upper_.size() ? std::conj(upper_[p][j - 1]) : Complex{};
}

bool BandedHermitianMatrix::is_real() const noexcept {
    for (const auto& band : upper_) {
        for (const Complex& z : band) {
            if (z.imag() != 0.0) return false;
        }
    }
    return true;
}

double BandedHermitianMatrix::max_diagonal() const {
    double m = upper_[0][0].real();
    for (const Complex& z : upper_[0]) m = std::max(m, z.real());
    return m;
}

Eigen::MatrixXcd BandedHermitianMatrix::to_dense() const {
    const auto n = static_cast<Eigen::Index>(n_);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t p = 0; p < upper_.size(); ++p) {
        for (std::size_t i = 0; i + p < n_; ++i) {
            const auto r = static_cast<Eigen::Index>(i);
            const auto c = static_cast<Eigen::Index>(i + p);
            a(r, c) = upper_[p][i];
            a(c, r) = std::conj(upper_[p][i]);
        }
    }
    return a;
}

SparseHermitianMatrix BandedHermitianMatrix::to_sparse() const {
    std::vector<SparseHermitianMatrix::Triplet> t;
    for (std::size_t p = 0; p < upper_.size(); ++p) {
        for (std::size_t i = 0; i + p < n_; ++i) t.push_back({i, i + p, upper_[p][i]});
    }
    return SparseHermitianMatrix::from_triangle(n_, t);
}

BandedHermitianMatrix make_test_matrix(TestMatrixKind kind, std::size_t n) {
    switch (kind) {
        case TestMatrixKind::tridiag: {
            if (n < 3) throw InvalidArgument("tridiag test matrix needs n >= 3");
            const double symbol[] = {4.0, -1.0};
            return BandedHermitianMatrix::toeplitz(n, std::span<const double>(symbol));
        }
        case TestMatrixKind::pentadiag: {
            if (n < 5) throw InvalidArgument("pentadiag test matrix needs n >= 5");
            const double symbol[] = {4.0, -1.0, -0.5};
            return BandedHermitianMatrix::toeplitz(n, std::span<const double>(symbol));
        }
    }
    throw InvalidArgument("unknown test matrix kind");
}

TestMatrixKind parse_test_matrix_kind(std::string_view name) {
    if (name == "tridiag") return TestMatrixKind::tridiag;
    if (name == "pentadiag") return TestMatrixKind::pentadiag;
    throw InvalidArgument("unknown test matrix kind '" + std::string(name) + "'");
}

namespace {

std::vector<double> parse_numbers(std::string_view list, std::string_view spec) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const std::size_t comma = std::min(list.find(',', pos), list.size());
        std::string token(list.substr(pos, comma - pos));
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw InvalidArgument("bad number '" + token + "' in generator '" + std::string(spec) + "'");
        }
        pos = comma + 1;
    }
    return out;
}

}  // namespace

BandedHermitianMatrix parse_generator(std::string_view spec, std::size_t n) {
    const std::size_t colon = spec.find(':');
    const std::string_view head = spec.substr(0, colon);
    const bool has_args = colon != std::string_view::npos;
    const std::string_view args = has_args ? spec.substr(colon + 1) : std::string_view{};

    if (head == "identity" && !has_args) {
        const double symbol[] = {1.0, 0.0};
        return BandedHermitianMatrix::toeplitz(n, std::span<const double>(symbol));
    }
    if (head == "tridiag") {
        if (!has_args) return make_test_matrix(TestMatrixKind::tridiag, n);
        const auto v = parse_numbers(args, spec);
        if (v.size() != 3) throw InvalidArgument("tridiag:a,b,c needs three numbers");
        if (v[0] != v[2]) throw InvalidArgument("tridiag:a,b,c must be symmetric (a == c)");
        const double symbol[] = {v[1], v[2]};
        return BandedHermitianMatrix::toeplitz(n, std::span<const double>(symbol));
    }
    if (head == "pentadiag") {
        if (!has_args) return make_test_matrix(TestMatrixKind::pentadiag, n);
        const auto v = parse_numbers(args, spec);
        if (v.size() != 5) throw InvalidArgument("pentadiag:a,b,c,d,e needs five numbers");
        if (v[0] != v[4] || v[1] != v[3]) throw InvalidArgument("pentadiag:a,b,c,d,e must be symmetric");
        const double symbol[] = {v[2], v[3], v[4]};
        return BandedHermitianMatrix::toeplitz(n, std::span<const double>(symbol));
    }
    if (head == "toeplitz" && has_args) {
        const auto v = parse_numbers(args, spec);
        return BandedHermitianMatrix::toeplitz(n, std::span<const double>(v));
    }
    throw InvalidArgument("unknown matrix generator '" + std::string(spec) + "'");
}

bool is_generator_spec(std::string_view spec) {
    const std::string_view head = spec.substr(0, spec.find(':'));
    return head == "tridiag" || head == "pentadiag" || head == "toeplitz" || head == "identity";
}

}  // namespace decay
