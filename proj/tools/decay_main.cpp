#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "decay/app.hpp"

namespace {

using namespace decay;
using namespace decay::app;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitViolation = 3;

struct FunctionFlags {
    std::string name = "inv_sqrt";
    std::string cls;
    double tau = 1.0;
    double zeta = 0.0;
    bool closed_form = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--function", name, "inv|exp|phi1|inv_sqrt|inv_pow:s|log1p_inv|exp_inv|expsqrt:t|log1p_over_z")
            ->capture_default_str();
        cmd->add_option("--class", cls, "laplace|cauchy|exp|resolvent (inferred when omitted)");
        cmd->add_option("--tau", tau, "time parameter for --class exp")->capture_default_str();
        cmd->add_option("--zeta", zeta, "imaginary shift")->capture_default_str();
        cmd->add_flag("--closed-form", closed_form, "closed-form inverse square root bound (cauchy class)");
    }

    FunctionChoice choice() const {
        FunctionChoice c;
        if (!cls.empty()) c.cls = parse_function_class(cls);
        c.name = name;
        c.tau = tau;
        c.zeta = zeta;
        c.closed_form = closed_form;
        return c;
    }
};

struct QuadFlags {
    double tol = 1e-8;
    std::size_t max_panels = 10000;
    std::string validity = "strict";
    std::string spectral = "exact";

    void attach(CLI::App* cmd) {
        cmd->add_option("--quad-tol", tol, "quadrature tolerance (absolute or relative)")->capture_default_str();
        cmd->add_option("--quad-max-panels", max_panels, "quadrature subdivision limit")->capture_default_str();
        cmd->add_option("--validity", validity, "strict|extended")->capture_default_str();
        cmd->add_option("--spectral", spectral, "exact|gershgorin")->capture_default_str();
    }

    BoundOptions bound_options() const {
        BoundOptions b;
        b.quadrature = QuadratureOptions{tol, tol, max_panels};
        if (validity == "strict") {
            b.validity = Validity::strict;
        } else if (validity == "extended") {
            b.validity = Validity::extended;
        } else {
            throw UsageError("unknown validity '" + validity + "' (strict, extended)");
        }
        return b;
    }
};

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(part, &used);
            if (used != part.size() || v < 1) throw std::invalid_argument(part);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw UsageError("bad index '" + part + "' in --column");
        }
    }
    if (out.empty()) throw UsageError("--column is empty");
    return out;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(part);
    return out;
}

// Splits "--factors" at commas that start a new matrix, so that generator
// parameters like "tridiag:-1,4,-1" stay in one piece.
std::vector<std::string> split_factors(const std::string& text) {
    std::vector<std::string> out;
    for (const std::string& part : split_commas(text)) {
        const bool continues = !out.empty() && out.back().find(':') != std::string::npos && !part.empty() &&
                               (std::isdigit(static_cast<unsigned char>(part[0])) || part[0] == '-' ||
                                part[0] == '+' || part[0] == '.');
        if (continues) {
            out.back() += "," + part;
        } else {
            out.push_back(part);
        }
    }
    return out;
}

// Writes to --out when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    bool to_stdout() const { return !file_.is_open(); }

private:
    std::ofstream file_;
};

int finish(const RunStats& stats, bool self_check) {
    if (self_check && stats.violations > 0) {
        std::cerr << "dominance violations: " << stats.violations << '\n';
        return kExitViolation;
    }
    if (stats.nonconverged > 0) {
        std::cerr << "quadrature did not converge on " << stats.nonconverged << " rows\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entrywise decay bounds for functions of banded and sparse Hermitian matrices"};
    app.require_subcommand(1);

    FunctionFlags fn;
    QuadFlags quad;
    std::string matrix = "tridiag";
    std::size_t n = 200;
    std::string column = "127";
    std::string distance = "band";
    double drop_tol = 0.0;
    bool self_check = false;
    std::string out_path;

    auto attach_single = [&](CLI::App* cmd) {
        cmd->add_option("--matrix", matrix, "generator (tridiag, pentadiag, tridiag:a,b,c, ...) or .mtx file")
            ->capture_default_str();
        cmd->add_option("--n", n, "order for generated matrices")->capture_default_str();
        cmd->add_option("--column", column, "column t (1-based)")->capture_default_str();
        cmd->add_option("--out", out_path, "output CSV path (stdout when omitted)");
        fn.attach(cmd);
    };

    CLI::App* bound = app.add_subcommand("bound", "bound and oracle for one column");
    CLI::App* compare = app.add_subcommand("compare", "like bound, plus a summary line");
    for (CLI::App* cmd : {bound, compare}) {
        attach_single(cmd);
        quad.attach(cmd);
        cmd->add_option("--distance", distance, "band|graph")->capture_default_str();
        cmd->add_option("--pattern-drop-tol", drop_tol, "ignore entries with |m_ij| <= tol in graph mode")
            ->capture_default_str();
        cmd->add_flag("--self-check", self_check, "exit 3 on any dominance violation");
    }

    CLI::App* oracle = app.add_subcommand("oracle", "exact column of f(M)");
    attach_single(oracle);

    std::string factors = "tridiag,tridiag";
    std::size_t factor_n = 20;
    std::string kron_column = "94";
    CLI::App* kron = app.add_subcommand("kron", "Kronecker-sum bound and oracle for one column");
    kron->add_option("--factors", factors, "comma-separated factor matrices (1 to 3)")->capture_default_str();
    kron->add_option("--n", factor_n, "order of generated factors")->capture_default_str();
    kron->add_option("--column", kron_column, "linear index t or k1,k2[,k3]")->capture_default_str();
    kron->add_option("--out", out_path, "output CSV path (stdout when omitted)");
    kron->add_flag("--self-check", self_check, "exit 3 on any dominance violation");
    fn.attach(kron);
    quad.attach(kron);

    std::string figure_id;
    CLI::App* figure = app.add_subcommand("figure", "CSV data for one of the decay figures");
    figure->add_option("id", figure_id, "figure id")->required();
    figure->add_option("--out", out_path, "output CSV path (stdout when omitted)");
    figure->add_flag("--self-check", self_check, "exit 3 on any dominance violation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (bound->parsed() || compare->parsed()) {
            BoundRunOptions o;
            o.matrix = matrix;
            o.n = n;
            o.function = fn.choice();
            const auto cols = parse_index_list(column);
            if (cols.size() != 1) throw UsageError("--column takes a single index here");
            o.column = cols[0];
            o.distance = parse_distance_mode(distance);
            o.spectral = parse_spectral_source(quad.spectral);
            o.pattern_drop_tol = drop_tol;
            o.bound_options = quad.bound_options();
            const ColumnResult r = run_bound_column(o);
            Output out(out_path);
            write_bound_csv(out.stream(), r);
            if (compare->parsed()) (out.to_stdout() ? std::cerr : std::cout) << r.stats.summary() << '\n';
            return finish(r.stats, self_check);
        }
        if (oracle->parsed()) {
            const MatrixInput m = load_matrix(matrix, n);
            const ResolvedFunction f = resolve_function(fn.choice());
            const auto cols = parse_index_list(column);
            if (cols.size() != 1) throw UsageError("--column takes a single index here");
            Output out(out_path);
            write_oracle_csv(out.stream(), m, f.oracle, cols[0]);
            return kExitOk;
        }
        if (kron->parsed()) {
            KronRunOptions o;
            o.factors = split_factors(factors);
            o.n = factor_n;
            o.function = fn.choice();
            o.column = parse_index_list(kron_column);
            o.spectral = parse_spectral_source(quad.spectral);
            o.bound_options = quad.bound_options();
            const KronResult r = run_kron_column(o);
            Output out(out_path);
            write_kron_csv(out.stream(), r);
            return finish(r.stats, self_check);
        }
        if (figure->parsed()) {
            Output out(out_path);
            const RunStats stats = run_figure(figure_id, out.stream());
            return finish(stats, self_check);
        }
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
