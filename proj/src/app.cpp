#include "decay/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "decay/graph_distance.hpp"
#include "decay/kronecker_bounds.hpp"
#include "decay/matrix_market.hpp"
#include "decay/measures.hpp"

namespace decay::app {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Figure 1 leaves out values this small, as the published plot does.
constexpr double kExpFigureFloor = 1e-60;

bool in_laplace_catalog(std::string_view name) {
    try {
        laplace_catalog(name);
        return true;
    } catch (const InvalidArgument&) {
        return false;
    }
}

bool in_cauchy_catalog(std::string_view name) {
    try {
        cauchy_catalog(name);
        return true;
    } catch (const InvalidArgument&) {
        return false;
    }
}

double parameter_after_colon(std::string_view name) {
    const std::string text(name.substr(name.find(':') + 1));
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("bad parameter in function name '" + std::string(name) + "'");
}

// Closed forms on the complex plane, principal branches.
std::function<Complex(Complex)> complex_closed_form(std::string_view name) {
    if (name == "inv") return [](Complex z) { return 1.0 / z; };
    if (name == "exp") return [](Complex z) { return std::exp(-z); };
    if (name == "phi1") return [](Complex z) { return (1.0 - std::exp(-z)) / z; };
    if (name == "inv_sqrt") return [](Complex z) { return 1.0 / std::sqrt(z); };
    if (name == "log1p_inv") return [](Complex z) { return std::log(1.0 + 1.0 / z); };
    if (name == "exp_inv") return [](Complex z) { return std::exp(1.0 / z); };
    if (name == "log1p_over_z") return [](Complex z) { return std::log(1.0 + z) / z; };
    if (name.rfind("inv_pow:", 0) == 0) {
        const double sigma = parameter_after_colon(name);
        return [sigma](Complex z) { return std::pow(z, -sigma); };
    }
    if (name.rfind("expsqrt:", 0) == 0 || name.rfind("expsqrt_t:", 0) == 0) {
        const double t = parameter_after_colon(name);
        return [t](Complex z) { return (1.0 - std::exp(-t * std::sqrt(z))) / z; };
    }
    throw UsageError("no complex closed form for '" + std::string(name) + "'");
}

SpectralFunction shifted_oracle(std::string_view name, Complex shift) {
    auto f = complex_closed_form(name);
    return [f, shift](double x) { return f(Complex(x) + shift); };
}

SpectralFunction real_oracle(ScalarFunction f) {
    return [f = std::move(f)](double x) { return Complex(f(x)); };
}

std::size_t stored_bandwidth(const SparseHermitianMatrix& m) {
    std::size_t beta = 0;
    for (std::size_t i = 0; i < m.order(); ++i) {
        for (std::size_t j : m.row_pattern(i)) beta = std::max(beta, j > i ? j - i : i - j);
    }
    return beta;
}

BandedHermitianMatrix banded_from_sparse(const SparseHermitianMatrix& m, std::size_t beta) {
    const std::size_t n = m.order();
    std::vector<std::vector<Complex>> upper(beta + 1);
    for (std::size_t p = 0; p <= beta; ++p) {
        upper[p].resize(n - std::min(n, p));
        for (std::size_t i = 0; i + p < n; ++i) upper[p][i] = m.entry(i + 1, i + 1 + p);
    }
    return BandedHermitianMatrix(n, std::move(upper));
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string cell_above(const std::optional<double>& v, double floor) {
    return v && *v >= floor ? format_number(*v) : std::string();
}

bool is_violation(double bound, double oracle) { return bound < oracle * (1.0 - kDominanceSlack); }

double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

FunctionClass parse_function_class(std::string_view name) {
    if (name == "laplace") return FunctionClass::laplace;
    if (name == "cauchy") return FunctionClass::cauchy;
    if (name == "exp") return FunctionClass::exp;
    if (name == "resolvent") return FunctionClass::resolvent;
    throw UsageError("unknown class '" + std::string(name) + "' (laplace, cauchy, exp, resolvent)");
}

DistanceMode parse_distance_mode(std::string_view name) {
    if (name == "band") return DistanceMode::band;
    if (name == "graph") return DistanceMode::graph;
    throw UsageError("unknown distance mode '" + std::string(name) + "' (band, graph)");
}

ResolvedFunction resolve_function(const FunctionChoice& choice) {
    const std::string& name = choice.name;
    FunctionClass cls;
    if (choice.cls) {
        cls = *choice.cls;
    } else if (name == "exp") {
        cls = FunctionClass::exp;
    } else if (name == "inv") {
        cls = FunctionClass::resolvent;
    } else if (in_laplace_catalog(name)) {
        cls = FunctionClass::laplace;
    } else if (in_cauchy_catalog(name)) {
        cls = FunctionClass::cauchy;
    } else {
        throw UsageError("unknown function '" + name + "'");
    }
    if (choice.closed_form && !(cls == FunctionClass::cauchy && name == "inv_sqrt")) {
        throw UsageError("--closed-form applies to --class cauchy --function inv_sqrt only");
    }
    const double zeta = choice.zeta;

    ResolvedFunction out{cls, DemkoKernel{}, {}, name};
    switch (cls) {
    case FunctionClass::exp: {
        if (name != "exp") throw UsageError("--class exp needs --function exp, got '" + name + "'");
        if (zeta != 0.0) throw UsageError("--zeta is not supported with --class exp");
        if (!(choice.tau >= 0.0)) throw UsageError("--tau must be nonnegative");
        const double tau = choice.tau;
        out.kind = ExpKernel{tau};
        out.oracle = [tau](double x) { return Complex(std::exp(-tau * x)); };
        break;
    }
    case FunctionClass::resolvent:
        if (name != "inv") throw UsageError("--class resolvent needs --function inv, got '" + name + "'");
        [[fallthrough]];
    case FunctionClass::cauchy:
        if (name == "inv") {
            // Point mass at omega = 0: the Cauchy bound is the resolvent bound itself.
            if (zeta == 0.0) {
                out.kind = DemkoKernel{};
                out.oracle = [](double x) { return Complex(1.0 / x); };
            } else {
                out.kind = FreundKernel{zeta};
                out.oracle = shifted_oracle(name, Complex(0.0, -zeta));
            }
            break;
        }
        if (!in_cauchy_catalog(name)) throw UsageError("'" + name + "' is not a Cauchy-Stieltjes function");
        {
            CauchyMeasure m = cauchy_catalog(name);
            if (choice.closed_form) {
                if (zeta != 0.0) throw UsageError("--closed-form does not take --zeta");
                out.kind = InvSqrtClosedKernel{};
                out.oracle = real_oracle(m.f);
            } else if (zeta != 0.0) {
                out.oracle = shifted_oracle(name, Complex(0.0, -zeta));
                out.kind = CauchyShiftedKernel{std::move(m), zeta};
            } else {
                out.oracle = real_oracle(m.f);
                out.kind = CauchyKernel{std::move(m)};
            }
        }
        break;
    case FunctionClass::laplace: {
        if (!in_laplace_catalog(name)) throw UsageError("'" + name + "' is not a Laplace-Stieltjes function");
        LaplaceMeasure m = laplace_catalog(name);
        // |exp(-i zeta tau)| = 1, so the same integral bounds f(M + i zeta I).
        out.oracle = zeta == 0.0 ? real_oracle(m.f) : shifted_oracle(name, Complex(0.0, zeta));
        out.kind = LaplaceKernel{std::move(m)};
        break;
    }
    }
    out.label = describe(out.kind);
    return out;
}

MatrixInput load_matrix(std::string_view spec, std::size_t n) {
    if (is_generator_spec(spec)) {
        if (n == 0) throw UsageError("--n must be positive");
        BandedHermitianMatrix b = parse_generator(spec, n);
        SparseHermitianMatrix s = b.to_sparse();
        const std::size_t beta = b.bandwidth();
        return MatrixInput{std::move(b), std::move(s), beta, std::string(spec)};
    }
    SparseHermitianMatrix s = load_matrix_market(std::string(spec));
    const std::size_t beta = stored_bandwidth(s);
    return MatrixInput{std::nullopt, std::move(s), beta, std::string(spec)};
}

void RunStats::add(const std::optional<double>& bound, double oracle, bool resolved, bool converged) {
    ++rows;
    if (!converged) ++nonconverged;
    if (!bound) return;
    if (!resolved) {
        ++unresolved;
        return;
    }
    ++compared;
    if (oracle > 0.0) ratios.push_back(*bound / oracle);
    if (is_violation(*bound, oracle)) ++violations;
}

std::string RunStats::summary() const {
    std::ostringstream s;
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s << "min_ratio=" << format_number(ratios.empty() ? nan : *lo)
      << " median_ratio=" << format_number(median(ratios))
      << " max_ratio=" << format_number(ratios.empty() ? nan : *hi) << " violations=" << violations
      << " unresolved=" << unresolved << " nonconverged=" << nonconverged << " rows=" << rows;
    return s.str();
}

ColumnResult run_bound_column(const BoundRunOptions& options) {
    const MatrixInput m = load_matrix(options.matrix, options.n);
    const std::size_t n = m.order();
    if (options.column < 1 || options.column > n) {
        throw UsageError("--column " + std::to_string(options.column) + " out of range 1.." + std::to_string(n));
    }
    const ResolvedFunction fn = resolve_function(options.function);
    const BoundContext ctx{spectral_interval(m.sparse, options.spectral), m.sparse.max_diagonal(),
                           options.bound_options};

    const std::size_t beta = std::max<std::size_t>(m.bandwidth, 1);
    std::optional<DistanceVector> graph;
    if (options.distance == DistanceMode::graph) {
        graph = geodesic_from(m.sparse, options.column, options.pattern_drop_tol);
    }

    const EigenDecomposition eig(m.sparse);
    const OracleColumn oracle = matrix_function_column(eig, fn.oracle, options.column);

    ColumnResult out;
    out.noise_floor = oracle.noise_floor;
    out.rows.reserve(n);
    for (Index k = 1; k <= n; ++k) {
        ColumnRow row;
        row.k = k;
        row.distance = graph ? (*graph)(k) : band_distance(k, options.column, beta);
        row.unreachable = std::isinf(row.distance);
        row.oracle = std::abs(oracle.values(static_cast<Eigen::Index>(k - 1)));
        row.resolved = row.oracle > oracle.noise_floor;
        if (!row.unreachable && bound_applicable(fn.kind, ctx, row.distance)) {
            const DecayBoundReport r = evaluate_bound(fn.kind, ctx, row.distance);
            row.bound = r.value;
            row.converged = r.converged;
        }
        out.stats.add(row.bound, row.oracle, row.resolved, row.converged);
        out.rows.push_back(row);
    }
    return out;
}

void write_bound_csv(std::ostream& out, const ColumnResult& result) {
    out << "k,distance,bound,oracle,ratio\n";
    for (const ColumnRow& r : result.rows) {
        std::optional<double> ratio;
        if (r.bound && r.resolved && r.oracle > 0.0) ratio = *r.bound / r.oracle;
        out << r.k << ',' << format_number(r.distance) << ',' << cell(r.bound) << ',' << format_number(r.oracle)
            << ',' << cell(ratio) << '\n';
    }
}

namespace {

BandedHermitianMatrix load_factor(std::string_view spec, std::size_t n) {
    MatrixInput m = load_matrix(spec, n);
    if (m.banded) return *m.banded;
    return banded_from_sparse(m.sparse, std::max<std::size_t>(m.bandwidth, 1));
}

// Kronecker bound for one entry; empty when not claimed.
std::optional<DecayBoundReport> kron_entry(const ResolvedFunction& fn, const KroneckerBoundContext& ctx,
                                           const MultiIndex& k, const MultiIndex& t) {
    if (const auto* e = std::get_if<ExpKernel>(&fn.kind)) {
        if (k == t) return std::nullopt;
        return exp_kron_bound(ctx, e->tau, k, t);
    }
    if (ctx.options.validity == Validity::strict) {
        for (double d : ctx.distances(k, t)) {
            if (d < 2.0) return std::nullopt;
        }
    }
    if (const auto* l = std::get_if<LaplaceKernel>(&fn.kind)) return laplace_kron_bound(ctx, l->measure, k, t);
    if (const auto* c = std::get_if<CauchyKernel>(&fn.kind)) return cauchy_kron_bound(ctx, c->measure, k, t);
    throw UsageError("no Kronecker bound for " + fn.label);
}

}  // namespace

KronResult run_kron_column(const KronRunOptions& options) {
    if (options.factors.empty() || options.factors.size() > 3) throw UsageError("--factors takes 1 to 3 matrices");
    if (options.function.zeta != 0.0) throw UsageError("--zeta is not supported by kron");
    std::vector<BandedHermitianMatrix> factors;
    for (const auto& f : options.factors) factors.push_back(load_factor(f, options.n));
    const KroneckerSum a(factors, options.order);
    if (a.order() > KroneckerSum::kMaxDenseOrder) {
        throw UsageError("Kronecker sum of order " + std::to_string(a.order()) + " is too large for the dense oracle");
    }

    MultiIndex t;
    if (options.column.size() == 1) {
        if (options.column[0] < 1 || options.column[0] > a.order()) throw UsageError("--column out of range");
        t = a.delinearize(options.column[0]);
    } else if (options.column.size() == a.dimension()) {
        t = MultiIndex(options.column);
        for (std::size_t l = 0; l < a.dimension(); ++l) {
            if (t[l] < 1 || t[l] > a.factor(l).order()) throw UsageError("--column component out of range");
        }
    } else {
        throw UsageError("--column needs one linear index or one component per factor");
    }

    const ResolvedFunction fn = resolve_function(options.function);
    const KroneckerBoundContext ctx = KroneckerBoundContext::from(a, options.spectral, options.bound_options);
    const EigenDecomposition eig(a.to_dense());
    const std::size_t tl = a.linearize(t);
    const OracleColumn oracle = matrix_function_column(eig, fn.oracle, tl);

    KronResult out;
    out.column = t;
    out.noise_floor = oracle.noise_floor;
    for (Index k = 1; k <= a.order(); ++k) {
        KronRow row;
        row.k = k;
        row.components = a.delinearize(k);
        row.distances = ctx.distances(row.components, t);
        row.oracle = std::abs(oracle.values(static_cast<Eigen::Index>(k - 1)));
        row.resolved = row.oracle > oracle.noise_floor;
        if (const auto r = kron_entry(fn, ctx, row.components, t)) {
            row.bound = r->value;
            row.converged = r->converged;
            row.extended = r->extended_regime;
        }
        out.stats.add(row.bound, row.oracle, row.resolved, row.converged);
        out.rows.push_back(std::move(row));
    }
    return out;
}

void write_kron_csv(std::ostream& out, const KronResult& result) {
    const std::size_t dim = result.column.dimension();
    out << 'k';
    for (std::size_t l = 1; l <= dim; ++l) out << ",k" << l;
    for (std::size_t l = 1; l <= dim; ++l) out << ",d" << l;
    out << ",bound,oracle\n";
    for (const KronRow& r : result.rows) {
        out << r.k;
        for (std::size_t c : r.components.components()) out << ',' << c;
        for (double d : r.distances) out << ',' << format_number(d);
        out << ',' << cell(r.bound) << ',' << format_number(r.oracle) << '\n';
    }
}

void write_oracle_csv(std::ostream& out, const MatrixInput& m, const SpectralFunction& f, Index column) {
    if (column < 1 || column > m.order()) throw UsageError("--column out of range");
    const EigenDecomposition eig(m.sparse);
    const OracleColumn c = matrix_function_column(eig, f, column);
    out << "k,re,im,abs\n";
    for (Eigen::Index i = 0; i < c.values.size(); ++i) {
        const Complex v = c.values(i);
        out << i + 1 << ',' << format_number(v.real()) << ',' << format_number(v.imag()) << ','
            << format_number(std::abs(v)) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Figures

namespace {

constexpr std::size_t kFigureOrder = 200;
constexpr Index kFigureColumn = 127;
constexpr double kFigureTau = 4.0;
constexpr std::size_t kKronFactorOrder = 20;
constexpr Index kKronColumn = 94;

const char* const kTestMatrices[] = {"tridiag", "pentadiag"};

BoundOptions figure_bound_options(const FigureOptions& o, Validity validity) {
    BoundOptions b;
    if (o.quad_tol) b.quadrature = QuadratureOptions::relative(*o.quad_tol);
    b.validity = validity;
    return b;
}

RunStats figure_exp(std::ostream& out, const FigureOptions& o) {
    const std::size_t n = o.n.value_or(kFigureOrder);
    const Index t = o.column.value_or(kFigureColumn);
    const double tau = o.tau.value_or(kFigureTau);
    RunStats stats;
    out << "matrix,k,distance,oracle,bound\n";
    for (const char* name : kTestMatrices) {
        const BandedHermitianMatrix m = parse_generator(name, n);
        const SpectralInterval spec = spectral_interval(m);
        const double lmin = spec.lambda_min();
        // exp(-tau (M - lambda_min I)): the bound for exp(-tau M) times exp(tau lambda_min).
        const EigenDecomposition eig(m);
        const OracleColumn col =
            matrix_function_column(eig, [tau, lmin](double x) { return Complex(std::exp(-tau * (x - lmin))); }, t);
        for (Index k = 1; k <= n; ++k) {
            const double d = band_distance(k, t, m.bandwidth());
            const double oracle = std::abs(col.values(static_cast<Eigen::Index>(k - 1)));
            std::optional<double> bound;
            if (k != t) bound = exp_entry_bound(spec, tau, d) * std::exp(tau * lmin);
            stats.add(bound, oracle, oracle > col.noise_floor, true);
            out << name << ',' << k << ',' << format_number(d) << ',' << cell_above(oracle, kExpFigureFloor) << ','
                << cell_above(bound, kExpFigureFloor) << '\n';
        }
    }
    return stats;
}

RunStats figure_single(std::ostream& out, const FigureOptions& o, const FunctionChoice& fc) {
    RunStats stats;
    out << "matrix,k,distance,oracle,bound\n";
    for (const char* name : kTestMatrices) {
        BoundRunOptions b;
        b.matrix = name;
        b.n = o.n.value_or(kFigureOrder);
        b.column = o.column.value_or(kFigureColumn);
        b.function = fc;
        b.bound_options = figure_bound_options(o, Validity::strict);
        const ColumnResult r = run_bound_column(b);
        for (const ColumnRow& row : r.rows) {
            stats.add(row.bound, row.oracle, row.resolved, row.converged);
            out << name << ',' << row.k << ',' << format_number(row.distance) << ',' << format_number(row.oracle)
                << ',' << cell(row.bound) << '\n';
        }
    }
    return stats;
}

RunStats figure_kron(std::ostream& out, const FigureOptions& o, const FunctionChoice& fc) {
    RunStats stats;
    out << "matrix,k,k1,k2,d1,d2,oracle,bound,bound_extended\n";
    for (const char* name : kTestMatrices) {
        KronRunOptions kr;
        kr.factors = {name, name};
        kr.n = o.n.value_or(kKronFactorOrder);
        kr.column = {o.column.value_or(kKronColumn)};
        kr.function = fc;
        kr.bound_options = figure_bound_options(o, Validity::strict);
        const KronResult strict = run_kron_column(kr);
        kr.bound_options.validity = Validity::extended;
        const KronResult extended = run_kron_column(kr);
        for (std::size_t i = 0; i < strict.rows.size(); ++i) {
            const KronRow& s = strict.rows[i];
            const KronRow& e = extended.rows[i];
            stats.add(e.bound, e.oracle, e.resolved, e.converged && s.converged);
            out << name << ',' << s.k << ',' << s.components[0] << ',' << s.components[1] << ','
                << format_number(s.distances[0]) << ',' << format_number(s.distances[1]) << ','
                << format_number(s.oracle) << ',' << cell(s.bound) << ',' << cell(e.bound) << '\n';
        }
    }
    return stats;
}

RunStats figure_surface(std::ostream& out, const FigureOptions& o) {
    // Five-point Laplacian on a 10 x 10 grid with Dirichlet boundary.
    const std::size_t g = o.n.value_or(10);
    const double tau = o.tau.value_or(5.0);
    const BandedHermitianMatrix t = parse_generator("tridiag:-1,2,-1", g);
    const KroneckerSum a({t, t});
    const EigenDecomposition eig(a.to_dense());
    struct Panel {
        const char* name;
        SpectralFunction f;
    };
    const Panel panels[] = {
        {"exp", [tau](double x) { return Complex(std::exp(-tau * x)); }},
        {"inv_sqrt", [](double x) { return Complex(1.0 / std::sqrt(x)); }},
    };
    RunStats stats;
    out << "function,i,j,value\n";
    for (const Panel& p : panels) {
        const Eigen::MatrixXcd f = eig.apply(p.f);
        for (Eigen::Index i = 0; i < f.rows(); ++i) {
            for (Eigen::Index j = 0; j < f.cols(); ++j) {
                out << p.name << ',' << i + 1 << ',' << j + 1 << ',' << format_number(f(i, j).real()) << '\n';
                ++stats.rows;
            }
        }
    }
    return stats;
}

FunctionChoice choice(FunctionClass cls, const char* name, bool closed_form = false) {
    FunctionChoice c;
    c.cls = cls;
    c.name = name;
    c.closed_form = closed_form;
    return c;
}

}  // namespace

std::vector<std::string> figure_ids() {
    return {"fig1-exp",     "fig2-ls-invsqrt", "fig3-ls-phi1",     "fig4-cs-invsqrt",
            "fig5-surface", "fig6-kron-phi1",  "fig7-kron-invsqrt"};
}

RunStats run_figure(std::string_view id, std::ostream& out, const FigureOptions& options) {
    if (id == "fig1-exp") return figure_exp(out, options);
    if (id == "fig2-ls-invsqrt") return figure_single(out, options, choice(FunctionClass::laplace, "inv_sqrt"));
    if (id == "fig3-ls-phi1") return figure_single(out, options, choice(FunctionClass::laplace, "phi1"));
    if (id == "fig4-cs-invsqrt") {
        return figure_single(out, options, choice(FunctionClass::cauchy, "inv_sqrt", true));
    }
    if (id == "fig5-surface") return figure_surface(out, options);
    if (id == "fig6-kron-phi1") return figure_kron(out, options, choice(FunctionClass::laplace, "phi1"));
    if (id == "fig7-kron-invsqrt") return figure_kron(out, options, choice(FunctionClass::cauchy, "inv_sqrt"));
    std::string known;
    for (const auto& f : figure_ids()) known += (known.empty() ? "" : ", ") + f;
    throw UsageError("unknown figure '" + std::string(id) + "' (" + known + ")");
}

}  // namespace decay::app
