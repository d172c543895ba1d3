// One PASS/FAIL line per acceptance criterion; exit code 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "decay/banded_bounds.hpp"
#include "decay/bound_kind.hpp"
#include "decay/graph_distance.hpp"
#include "decay/kronecker_bounds.hpp"
#include "decay/measures.hpp"
#include "decay/oracle.hpp"

using namespace decay;

namespace {

// Pinned tolerances.
constexpr double kSlack = 1e-10;          // relative dominance slack
constexpr double kRhoTol = 5e-4;          // tau*rho reproduction
constexpr double kQuadRel = 1e-8;         // quadrature error estimate / value
constexpr double kTighterShare = 0.95;    // closed form <= Laplace share
constexpr double kIdentityTol = 1e-10;    // Kronecker exp/sin/cos identities
constexpr double kLancasterTol = 1e-6;    // Lancaster column vs dense solve
constexpr double kDualTol = 1e-8;         // g(tau) vs Laplace density
constexpr double kReconstructTol = 1e-6;  // measure reconstruction, relative

// Runtime limits in seconds.
constexpr double kLimit1 = 5.0;
constexpr double kLimit2 = 10.0;
constexpr double kLimit3 = 60.0;
constexpr double kLimit6 = 300.0;

constexpr std::size_t kN = 200;
constexpr Index kT = 127;
constexpr double kTau = 4.0;

const TestMatrixKind kKinds[] = {TestMatrixKind::tridiag, TestMatrixKind::pentadiag};

bool dominates(double bound, double oracle, double floor) {
    return oracle <= floor || bound >= oracle * (1.0 - kSlack);
}

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void run(int id, const char* name, double limit, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit > 0.0 && secs >= limit) {
        o.ok = false;
        o.detail += " (over time limit)";
    }
    if (!o.ok) ++failures;
    std::printf("%s %2d %-34s %8.3fs  %s\n", o.ok ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome spectral_reproduction() {
    const double expected[] = {3.9995, 4.4989};
    Outcome o;
    for (int i = 0; i < 2; ++i) {
        const double got = kTau * spectral_interval(make_test_matrix(kKinds[i], kN)).rho();
        o.ok = o.ok && std::abs(got - expected[i]) <= kRhoTol;
        o.detail += fmt("tau*rho=%.6f ", got);
    }
    return o;
}

Outcome exp_dominance() {
    Outcome o;
    std::size_t violations = 0;
    bool superexp = true;
    for (auto kind : kKinds) {
        const auto m = make_test_matrix(kind, kN);
        const auto spec = spectral_interval(m);
        const OracleColumn col =
            matrix_function_column(EigenDecomposition(m), [](double x) { return Complex(std::exp(-kTau * x)); }, kT);
        for (Index k = 1; k <= kN; ++k) {
            if (k == kT) continue;
            const double b = exp_entry_bound(spec, m.bandwidth(), kTau, k, kT);
            if (!dominates(b, std::abs(col.values(k - 1)), col.noise_floor)) ++violations;
        }
        // log-ratio test: log(b(d+1)/b(d)) strictly decreases once past the cap regime
        const double rt = spec.rho() * kTau;
        double last = 0.0;
        bool first = true;
        double start = std::ceil(2.0 * rt) + 1.0;
        while (exp_entry_bound(spec, kTau, start + 1.0) >= exp_entry_bound(spec, kTau, start)) start += 1.0;
        for (double d = start; d < 150.0; d += 1.0) {
            const double b0 = exp_entry_bound(spec, kTau, d);
            const double b1 = exp_entry_bound(spec, kTau, d + 1.0);
            if (b1 <= 0.0 || !std::isfinite(std::log(b1))) break;
            const double lr = std::log(b1) - std::log(b0);
            if (!first && !(lr < last)) superexp = false;
            last = lr;
            first = false;
        }
    }
    o.ok = violations == 0 && superexp;
    o.detail = "violations=" + std::to_string(violations) + (superexp ? " superexponential" : " not superexponential");
    return o;
}

Outcome laplace_dominance(const char* name) {
    const LaplaceMeasure measure = laplace_catalog(name);
    const SpectralFunction f = [g = measure.f](double x) { return Complex(g(x)); };
    std::size_t violations = 0;
    std::size_t loose = 0;
    std::size_t rows = 0;
    for (auto kind : kKinds) {
        const auto m = make_test_matrix(kind, kN);
        const auto spec = spectral_interval(m);
        const OracleColumn col = matrix_function_column(EigenDecomposition(m), f, kT);
        const std::size_t beta = m.bandwidth();
        for (Index k = 1; k <= kN; ++k) {
            const std::size_t gap = k > kT ? k - kT : kT - k;
            if (gap < 2 * beta) continue;
            const DecayBoundReport r = laplace_entry_bound(spec, beta, measure, k, kT);
            ++rows;
            if (!r.converged || r.error_estimate > kQuadRel * r.value) ++loose;
            if (!dominates(r.value, std::abs(col.values(k - 1)), col.noise_floor)) ++violations;
        }
    }
    return {violations == 0 && loose == 0 && rows > 0,
            "rows=" + std::to_string(rows) + " violations=" + std::to_string(violations) +
                " quad_over_tol=" + std::to_string(loose)};
}

Outcome cauchy_superiority() {
    const LaplaceMeasure lm = laplace_catalog("inv_sqrt");
    std::size_t rows = 0;
    std::size_t tighter = 0;
    std::size_t violations = 0;
    for (auto kind : kKinds) {
        const auto m = make_test_matrix(kind, kN);
        const auto spec = spectral_interval(m);
        const OracleColumn col =
            matrix_function_column(EigenDecomposition(m), [](double x) { return Complex(1.0 / std::sqrt(x)); }, kT);
        for (Index k = 1; k <= kN; ++k) {
            if (k == kT) continue;
            const double closed = invsqrt_closed_bound(m, spec, k, kT);
            if (!dominates(closed, std::abs(col.values(k - 1)), col.noise_floor)) ++violations;
            if (band_distance(k, kT, m.bandwidth()) < 2.0) continue;
            ++rows;
            if (closed <= laplace_entry_bound(spec, m.bandwidth(), lm, k, kT).value) ++tighter;
        }
    }
    const double share = static_cast<double>(tighter) / static_cast<double>(rows);
    return {share >= kTighterShare && violations == 0,
            fmt("tighter=%.4f ", share) + "violations=" + std::to_string(violations)};
}

Outcome kronecker_identities() {
    double dev = 0.0;
    {
        const auto m = make_test_matrix(TestMatrixKind::tridiag, 10);
        const KroneckerSum a({m, m});
        for (double tau : {0.5, 1.0, 4.0}) {
            const SpectralFunction e = [tau](double x) { return Complex(std::exp(-tau * x)); };
            const Eigen::MatrixXcd em = matrix_function(m.to_dense(), e);
            const Eigen::MatrixXcd kron = Eigen::kroneckerProduct(em, em).eval();
            dev = std::max(dev, (matrix_function(a.to_dense(), e) - kron).cwiseAbs().maxCoeff());
        }
    }
    double trig = 0.0;
    {
        const KroneckerSum a({make_test_matrix(TestMatrixKind::tridiag, 8), make_test_matrix(TestMatrixKind::pentadiag, 8)});
        const Eigen::MatrixXcd s = matrix_function(a.to_dense(), [](double x) { return Complex(std::sin(x)); });
        const Eigen::MatrixXcd c = matrix_function(a.to_dense(), [](double x) { return Complex(std::cos(x)); });
        for (std::size_t k = 1; k <= a.order(); ++k) {
            for (std::size_t t = 1; t <= a.order(); ++t) {
                const MultiIndex km = a.delinearize(k);
                const MultiIndex tm = a.delinearize(t);
                trig = std::max(trig, std::abs(sincos_kron_exact(a, km, tm, TrigFunction::sin) - s(k - 1, t - 1)));
                trig = std::max(trig, std::abs(sincos_kron_exact(a, km, tm, TrigFunction::cos) - c(k - 1, t - 1)));
            }
        }
    }
    return {dev <= kIdentityTol && trig <= kIdentityTol, fmt("exp_dev=%.2e sincos_dev=%.2e", dev, trig)};
}

Outcome kronecker_bounds() {
    std::size_t violations = 0;
    std::size_t oscillation_misses = 0;
    const LaplaceMeasure phi1 = laplace_catalog("phi1");
    const CauchyMeasure isq = cauchy_catalog("inv_sqrt");
    BoundOptions options;
    options.validity = Validity::extended;
    for (auto kind : kKinds) {
        const auto m = make_test_matrix(kind, 20);
        const KroneckerSum a({m, m});
        const auto ctx = KroneckerBoundContext::from(a, SpectralSource::exact, options);
        const MultiIndex t = a.delinearize(94);
        const EigenDecomposition eig(a.to_dense());
        const OracleColumn o_phi1 = matrix_function_column(eig, [](double x) { return Complex(-std::expm1(-x) / x); }, 94);
        const OracleColumn o_isq = matrix_function_column(eig, [](double x) { return Complex(1.0 / std::sqrt(x)); }, 94);
        std::vector<DecayBoundReport> b_phi1(a.order());
        std::vector<DecayBoundReport> b_isq(a.order());
        for (std::size_t k = 1; k <= a.order(); ++k) {
            const MultiIndex km = a.delinearize(k);
            b_phi1[k - 1] = laplace_kron_bound(ctx, phi1, km, t);
            b_isq[k - 1] = cauchy_kron_bound(ctx, isq, km, t);
            if (!dominates(b_phi1[k - 1].value, std::abs(o_phi1.values(k - 1)), o_phi1.noise_floor)) ++violations;
            if (!dominates(b_isq[k - 1].value, std::abs(o_isq.values(k - 1)), o_isq.noise_floor)) ++violations;
        }
        for (std::size_t k1 = 1; k1 <= 20; ++k1) {
            const auto idx = [&](std::size_t k2) { return a.linearize(MultiIndex{k1, k2}) - 1; };
            for (const auto* b : {&b_phi1, &b_isq}) {
                for (std::size_t k2 = 1; k2 <= 20; ++k2) {
                    const DecayBoundReport& at = (*b)[idx(k2)];
                    const DecayBoundReport& peak = (*b)[idx(t[1])];
                    // flat near t2: equal up to the quadrature error bars
                    if (at.value > peak.value + at.error_estimate + peak.error_estimate) ++oscillation_misses;
                }
            }
            for (const auto* col : {&o_phi1, &o_isq}) {
                const double peak = std::abs(col->values(idx(t[1])));
                if (peak <= col->noise_floor) continue;
                for (std::size_t k2 = 1; k2 <= 20; ++k2) {
                    if (k2 != t[1] && std::abs(col->values(idx(k2))) >= peak) ++oscillation_misses;
                }
            }
        }
    }
    return {violations == 0 && oscillation_misses == 0,
            "violations=" + std::to_string(violations) + " peak_misses=" + std::to_string(oscillation_misses)};
}

Outcome lancaster() {
    const auto m = make_test_matrix(TestMatrixKind::tridiag, 10);
    const EigenDecomposition eig(m);
    const KroneckerSum a({m, m});
    const Eigen::MatrixXcd dense = a.to_dense();
    double dev = 0.0;
    for (std::size_t t = 1; t <= a.order(); t += 11) {
        const MultiIndex tm = a.delinearize(t);
        const Eigen::MatrixXcd x = lancaster_column(eig, eig, -1.0, tm);
        const Eigen::VectorXcd direct = resolvent_column(dense, -1.0, t);
        for (std::size_t k = 1; k <= a.order(); ++k) {
            const MultiIndex km = a.delinearize(k);
            dev = std::max(dev, std::abs(x(km[0] - 1, km[1] - 1) - direct(k - 1)));
        }
    }
    return {dev <= kLancasterTol, fmt("max_dev=%.2e", dev)};
}

Outcome dual_class() {
    const CauchyMeasure cm = cauchy_catalog("inv_sqrt");
    const LaplaceMeasure lm = laplace_catalog("inv_sqrt");
    CauchyMeasure generic = cm;
    generic.g = nullptr;
    double dev = 0.0;
    for (double tau : {0.1, 1.0, 10.0}) {
        dev = std::max(dev, std::abs(laplace_transform_of_cauchy(cm, tau) - lm.density(tau)));
        dev = std::max(dev, std::abs(laplace_transform_of_cauchy(generic, tau) - lm.density(tau)));
    }
    std::size_t disagreements = 0;
    BoundOptions options;
    options.validity = Validity::extended;
    const auto m = make_test_matrix(TestMatrixKind::pentadiag, 20);
    const KroneckerSum a({m, m});
    const auto ctx = KroneckerBoundContext::from(a, SpectralSource::exact, options);
    const MultiIndex t = a.delinearize(94);
    for (std::size_t k = 1; k <= a.order(); ++k) {
        const auto l = laplace_kron_bound(ctx, lm, a.delinearize(k), t);
        const auto c = cauchy_kron_bound(ctx, cm, a.delinearize(k), t);
        const double tol = options.quadrature.rel_tol * std::max(l.value, c.value) + l.error_estimate + c.error_estimate;
        if (std::abs(l.value - c.value) > 2.0 * tol) ++disagreements;
    }
    return {dev <= kDualTol && disagreements == 0,
            fmt("g_dev=%.2e ", dev) + "kron_disagreements=" + std::to_string(disagreements)};
}

Outcome graph_reduction() {
    std::size_t mismatches = 0;
    std::size_t exceed = 0;
    for (std::size_t beta : {1, 2, 3}) {
        std::vector<double> symbol(beta + 1, -0.3);
        symbol[0] = 2.0 * static_cast<double>(beta) + 1.0;
        for (std::size_t n = beta + 1; n <= 100; ++n) {
            const auto m = BandedHermitianMatrix::toeplitz(n, std::span<const double>(symbol));
            for (Index i = 1; i <= n; ++i) {
                const DistanceVector d = geodesic_from(m, i);
                for (Index j = 1; j <= n; ++j) {
                    const double gap = static_cast<double>(i > j ? i - j : j - i);
                    if (d(j) != std::ceil(gap / static_cast<double>(beta))) ++mismatches;
                }
            }
            if (n != 60) continue;
            const BoundContext ctx{spectral_interval(m), m.max_diagonal(), {}};
            const BoundKind kinds[] = {DemkoKernel{}, InvSqrtClosedKernel{}, LaplaceKernel{laplace_catalog("inv_sqrt")},
                                       CauchyKernel{cauchy_catalog("inv_sqrt")}, ExpKernel{2.0}};
            for (Index t : {Index{1}, Index{30}, Index{60}}) {
                const DistanceVector dist = geodesic_from(m, t);
                for (const BoundKind& kind : kinds) {
                    const auto graph = bound_with_distance(kind, ctx, dist);
                    for (Index k = 1; k <= n; ++k) {
                        const double band_d = band_distance(k, t, beta);
                        if (!graph[k - 1].valid || !bound_applicable(kind, ctx, band_d)) continue;
                        if (graph[k - 1].value > evaluate_bound(kind, ctx, band_d).value * (1.0 + 1e-12)) ++exceed;
                    }
                }
            }
        }
    }
    return {mismatches == 0 && exceed == 0,
            "mismatches=" + std::to_string(mismatches) + " graph_over_band=" + std::to_string(exceed)};
}

Outcome reconstruction() {
    const char* laplace_names[] = {"inv", "exp", "phi1", "inv_sqrt", "inv_pow:1.5", "inv_pow:0.25", "log1p_inv",
                                   "exp_inv"};
    const char* cauchy_names[] = {"inv_sqrt", "expsqrt:1", "expsqrt:3.5", "log1p_over_z"};
    double worst = 0.0;
    for (const char* name : laplace_names) {
        const auto m = laplace_catalog(name);
        for (double x : {0.5, 1.0, 2.0, 5.0}) worst = std::max(worst, std::abs(reconstruct(m, x).value / m.f(x) - 1.0));
    }
    for (const char* name : cauchy_names) {
        const auto m = cauchy_catalog(name);
        for (double x : {0.5, 1.0, 2.0, 5.0}) worst = std::max(worst, std::abs(reconstruct(m, x).value / m.f(x) - 1.0));
    }
    return {worst <= kReconstructTol, fmt("max_rel_err=%.2e", worst)};
}

}  // namespace

int main() {
    run(1, "spectral reproduction", kLimit1, spectral_reproduction);
    run(2, "exponential dominance", kLimit2, exp_dominance);
    run(3, "laplace dominance (inv_sqrt, phi1)", 0.0, [] {
        Outcome all;
        for (const char* name : {"inv_sqrt", "phi1"}) {
            const auto start = std::chrono::steady_clock::now();
            const Outcome o = laplace_dominance(name);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            all.ok = all.ok && o.ok && secs < kLimit3;
            all.detail += std::string(name) + ": " + o.detail + fmt(" in %.3fs; ", secs);
        }
        return all;
    });
    run(4, "cauchy closed form superiority", 0.0, cauchy_superiority);
    run(5, "kronecker identities", 0.0, kronecker_identities);
    run(6, "kronecker bounds", kLimit6, kronecker_bounds);
    run(7, "lancaster representation", 0.0, lancaster);
    run(8, "dual-class consistency", 0.0, dual_class);
    run(9, "graph-distance reduction", 0.0, graph_reduction);
    run(10, "measure reconstruction", 0.0, reconstruction);
    std::printf("%d failure(s)\n", failures);
    return failures == 0 ? 0 : 1;
}
