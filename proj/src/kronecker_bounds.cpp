#include "decay/kronecker_bounds.hpp"

#include <cmath>
#include <string>

#include "decay/error.hpp"

namespace decay {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_indices(std::size_t dim, const MultiIndex& k, const MultiIndex& t) {
    if (k.dimension() != dim || t.dimension() != dim) {
        throw InvalidArgument("multi-index has the wrong number of components (expected " + std::to_string(dim) +
                              ")");
    }
}

Complex factor_entry(const BandedHermitianMatrix& m, const SpectralFunction& f, Index k, Index t) {
    const EigenDecomposition eig(m);
    const Eigen::VectorXcd col = eig.column(f, t);
    if (k < 1 || k > m.order()) throw InvalidArgument("multi-index component out of range");
    return col(static_cast<Eigen::Index>(k - 1));
}

bool covered_by_krylov_regimes(double rho_tau, double d) {
    return d >= 2.0 * rho_tau || (rho_tau >= 1.0 && d >= std::sqrt(4.0 * rho_tau));
}

std::vector<EnvelopeFactor> envelope_factors(const KroneckerBoundContext& ctx, const std::vector<double>& d) {
    std::vector<EnvelopeFactor> out;
    for (std::size_t l = 0; l < ctx.dimension(); ++l) {
        out.push_back({ctx.spectra[l].lambda_min(), ctx.spectra[l].rho(), d[l]});
    }
    return out;
}

// Validity checks shared by the Laplace and Cauchy Kronecker bounds.
DecayBoundReport prepare(const KroneckerBoundContext& ctx, const MultiIndex& k, const MultiIndex& t) {
    check_indices(ctx.dimension(), k, t);
    for (const auto& s : ctx.spectra) {
        if (!(s.lambda_min() > 0.0)) throw DomainError("Kronecker bounds need positive definite factors");
    }
    DecayBoundReport r;
    r.component_distances = ctx.distances(k, t);
    bool all_far = true;
    double total = 0.0;
    for (double d : r.component_distances) {
        all_far = all_far && d >= 2.0;
        total += d;
    }
    if (!all_far && ctx.options.validity == Validity::strict) {
        throw DomainError("the Kronecker bound holds for |k_i - t_i|/beta_i >= 2 in every factor");
    }
    r.extended_regime = !all_far;
    r.distance = total;
    return r;
}

DecayBoundReport product_integral(const KroneckerBoundContext& ctx, const MultiIndex& k, const MultiIndex& t,
                                  const LogWeight& weight, const std::vector<Atom>& atoms) {
    DecayBoundReport r = prepare(ctx, k, t);
    const auto factors = envelope_factors(ctx, r.component_distances);
    double value = 0.0;
    for (const Atom& a : atoms) value += a.weight * envelope_product(factors, a.location);
    if (weight.log_w) {
        const QuadratureResult q = envelope_integral(factors, weight, 0.0, kInf, ctx.options.quadrature);
        value += q.value;
        r.error_estimate = q.error_estimate;
        r.converged = q.converged;
    }
    r.value = value;
    r.pieces = {value};
    return r;
}

DecayBoundReport split_integral(const KroneckerBoundContext& ctx, const MultiIndex& k, const MultiIndex& t,
                                const LogWeight& weight) {
    DecayBoundReport r = prepare(ctx, k, t);
    const auto factors = envelope_factors(ctx, r.component_distances);
    const std::size_t p = factors.size();
    // Hoelder with p equal exponents: int prod_l E_l w <= prod_l (int E_l^p w)^(1/p).
    double value = 1.0;
    for (const auto& f : factors) {
        const std::vector<EnvelopeFactor> power(p, f);
        const QuadratureResult q = envelope_integral(power, weight, 0.0, kInf, ctx.options.quadrature);
        const double root = std::pow(q.value, 1.0 / static_cast<double>(p));
        r.pieces.push_back(root);
        value *= root;
        r.error_estimate += q.error_estimate;
        r.converged = r.converged && q.converged;
    }
    r.value = value;
    return r;
}

LogWeight laplace_weight(const LaplaceMeasure& m) {
    return LogWeight{m.log_density, m.support_lo, m.support_hi, m.left_exponent};
}

LogWeight cauchy_weight(const CauchyMeasure& m) {
    LogWeight w;
    w.log_w = [&m](double tau) {
        const double g = std::abs(laplace_transform_of_cauchy(m, tau));
        return g > 0.0 ? std::log(g) : -kInf;
    };
    w.left_exponent = std::min(0.0, m.g_left_exponent);
    return w;
}

}  // namespace

Complex exp_kron_entry_exact(const KroneckerSum& a, double tau, const MultiIndex& k, const MultiIndex& t) {
    check_indices(a.dimension(), k, t);
    if (tau == 0.0) return k == t ? 1.0 : 0.0;
    Complex prod = 1.0;
    const SpectralFunction f = [tau](double x) { return Complex(std::exp(-tau * x)); };
    for (std::size_t l = 0; l < a.dimension(); ++l) prod *= factor_entry(a.factor(l), f, k[l], t[l]);
    return prod;
}

Complex sincos_kron_exact(const KroneckerSum& a, const MultiIndex& k, const MultiIndex& t, TrigFunction which) {
    if (a.dimension() != 2) throw InvalidArgument("sin/cos identities are implemented for two factors");
    check_indices(2, k, t);
    const SpectralFunction s = [](double x) { return Complex(std::sin(x)); };
    const SpectralFunction c = [](double x) { return Complex(std::cos(x)); };
    const Complex s1 = factor_entry(a.factor(0), s, k[0], t[0]);
    const Complex c1 = factor_entry(a.factor(0), c, k[0], t[0]);
    const Complex s2 = factor_entry(a.factor(1), s, k[1], t[1]);
    const Complex c2 = factor_entry(a.factor(1), c, k[1], t[1]);
    return which == TrigFunction::sin ? s1 * c2 + c1 * s2 : c1 * c2 - s1 * s2;
}

KroneckerBoundContext KroneckerBoundContext::from(const KroneckerSum& a, SpectralSource mode,
                                                  const BoundOptions& options) {
    KroneckerBoundContext ctx;
    for (const auto& f : a.factors()) {
        ctx.spectra.push_back(spectral_interval(f, mode));
        ctx.bandwidths.push_back(f.bandwidth());
    }
    ctx.options = options;
    return ctx;
}

std::vector<double> KroneckerBoundContext::distances(const MultiIndex& k, const MultiIndex& t) const {
    check_indices(dimension(), k, t);
    std::vector<double> d;
    for (std::size_t l = 0; l < dimension(); ++l) d.push_back(band_distance(k[l], t[l], bandwidths[l]));
    return d;
}

DecayBoundReport exp_kron_bound(const KroneckerBoundContext& ctx, double tau, const MultiIndex& k,
                                const MultiIndex& t) {
    check_indices(ctx.dimension(), k, t);
    if (k == t) throw InvalidArgument("the Kronecker exponential bound is not claimed on the diagonal");
    if (!(tau >= 0.0)) throw InvalidArgument("tau must be nonnegative");
    DecayBoundReport r;
    r.component_distances = ctx.distances(k, t);
    double log_value = 0.0;
    for (std::size_t l = 0; l < ctx.dimension(); ++l) {
        const double d = r.component_distances[l];
        const double rho_tau = ctx.spectra[l].rho() * tau;
        if (!covered_by_krylov_regimes(rho_tau, d)) r.extended_regime = true;
        log_value += -tau * ctx.spectra[l].lambda_min() + log_exp_envelope(rho_tau, d);
        r.distance += d;
    }
    r.value = log_value == -kInf ? 0.0 : std::exp(log_value);
    r.pieces = {r.value};
    return r;
}

DecayBoundReport laplace_kron_bound(const KroneckerBoundContext& ctx, const LaplaceMeasure& measure,
                                    const MultiIndex& k, const MultiIndex& t) {
    return product_integral(ctx, k, t, laplace_weight(measure), measure.atoms);
}

DecayBoundReport laplace_kron_bound_3d(const KroneckerBoundContext& ctx, const LaplaceMeasure& measure,
                                       const MultiIndex& k, const MultiIndex& t) {
    if (ctx.dimension() != 3) throw InvalidArgument("laplace_kron_bound_3d needs three factors");
    return laplace_kron_bound(ctx, measure, k, t);
}

DecayBoundReport cauchy_kron_bound(const KroneckerBoundContext& ctx, const CauchyMeasure& measure,
                                   const MultiIndex& k, const MultiIndex& t) {
    return product_integral(ctx, k, t, cauchy_weight(measure), {});
}

DecayBoundReport laplace_kron_bound_split(const KroneckerBoundContext& ctx, const LaplaceMeasure& measure,
                                          const MultiIndex& k, const MultiIndex& t) {
    if (!measure.atoms.empty()) throw InvalidArgument("the split bound is implemented for densities only");
    return split_integral(ctx, k, t, laplace_weight(measure));
}

DecayBoundReport cauchy_kron_bound_split(const KroneckerBoundContext& ctx, const CauchyMeasure& measure,
                                         const MultiIndex& k, const MultiIndex& t) {
    return split_integral(ctx, k, t, cauchy_weight(measure));
}

}  // namespace decay
