#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "decay/banded_bounds.hpp"
#include "decay/bound_kind.hpp"
#include "decay/error.hpp"
#include "decay/kronecker_sum.hpp"
#include "decay/oracle.hpp"
#include "decay/sparse_matrix.hpp"
#include "decay/spectral.hpp"

namespace decay::app {

/// Contradictory or malformed command-line input (exit code 1).
class UsageError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

enum class FunctionClass { laplace, cauchy, exp, resolvent };
FunctionClass parse_function_class(std::string_view name);

struct FunctionChoice {
    std::optional<FunctionClass> cls;  // inferred from the name when empty
    std::string name = "inv_sqrt";
    double tau = 1.0;
    double zeta = 0.0;
    bool closed_form = false;  // cauchy inv_sqrt: use the closed-form bound
};

struct ResolvedFunction {
    FunctionClass cls;
    BoundKind kind;
    SpectralFunction oracle;  // f evaluated at the eigenvalues of M
    std::string label;
};

ResolvedFunction resolve_function(const FunctionChoice& choice);

/// Matrix argument: builtin generator (banded) or Matrix Market file (sparse).
struct MatrixInput {
    std::optional<BandedHermitianMatrix> banded;
    SparseHermitianMatrix sparse;
    std::size_t bandwidth = 0;  // largest |i-j| over stored entries
    std::string label;

    std::size_t order() const { return sparse.order(); }
    Eigen::MatrixXcd dense() const { return sparse.to_dense(); }
};

MatrixInput load_matrix(std::string_view spec, std::size_t n);

enum class DistanceMode { band, graph };
DistanceMode parse_distance_mode(std::string_view name);

/// Slack used by every dominance check: bound >= oracle * (1 - kDominanceSlack).
inline constexpr double kDominanceSlack = 1e-10;

struct BoundRunOptions {
    std::string matrix = "tridiag";
    std::size_t n = 200;
    FunctionChoice function;
    Index column = 127;
    DistanceMode distance = DistanceMode::band;
    SpectralSource spectral = SpectralSource::exact;
    double pattern_drop_tol = 0.0;
    BoundOptions bound_options;
};

struct ColumnRow {
    Index k = 0;
    double distance = 0.0;
    std::optional<double> bound;  // empty when not claimed
    double oracle = 0.0;          // |f(M)_{kt}|
    bool resolved = true;         // oracle above its noise floor
    bool converged = true;
    bool unreachable = false;
};

struct RunStats {
    std::size_t rows = 0;
    std::size_t compared = 0;
    std::size_t violations = 0;
    std::size_t unresolved = 0;
    std::size_t nonconverged = 0;
    std::vector<double> ratios;  // bound / oracle on compared rows

    void add(const std::optional<double>& bound, double oracle, bool resolved, bool converged);
    std::string summary() const;
};

struct ColumnResult {
    std::vector<ColumnRow> rows;
    double noise_floor = 0.0;
    RunStats stats;
};

ColumnResult run_bound_column(const BoundRunOptions& options);
void write_bound_csv(std::ostream& out, const ColumnResult& result);

struct KronRunOptions {
    std::vector<std::string> factors = {"tridiag", "tridiag"};
    std::size_t n = 20;
    FunctionChoice function;
    std::vector<std::size_t> column = {94};  // linear index or one component per factor
    SpectralSource spectral = SpectralSource::exact;
    BoundOptions bound_options;
    IndexOrder order = IndexOrder::first_fastest;
};

struct KronRow {
    Index k = 0;
    MultiIndex components;
    std::vector<double> distances;
    std::optional<double> bound;
    double oracle = 0.0;
    bool resolved = true;
    bool converged = true;
    bool extended = false;
};

struct KronResult {
    MultiIndex column;
    std::vector<KronRow> rows;
    double noise_floor = 0.0;
    RunStats stats;
};

KronResult run_kron_column(const KronRunOptions& options);
void write_kron_csv(std::ostream& out, const KronResult& result);

/// True column of f(M) as k,re,im,abs.
void write_oracle_csv(std::ostream& out, const MatrixInput& m, const SpectralFunction& f, Index column);

std::vector<std::string> figure_ids();

struct FigureOptions {
    std::optional<std::size_t> n;
    std::optional<Index> column;
    std::optional<double> tau;
    std::optional<double> quad_tol;
};

RunStats run_figure(std::string_view id, std::ostream& out, const FigureOptions& options = {});

/// 17 significant digits, "inf"/"nan" spelled out.
std::string format_number(double x);

}  // namespace decay::app
