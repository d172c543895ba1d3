#include <optional>
#include <sstream>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "decay/app.hpp"
#include "decay/measures.hpp"

namespace py = pybind11;
using namespace decay;
using namespace decay::app;

namespace {

FunctionChoice choice(const std::string& function, const std::optional<std::string>& cls, double tau, double zeta,
                      bool closed_form) {
    FunctionChoice c;
    c.name = function;
    if (cls) c.cls = parse_function_class(*cls);
    c.tau = tau;
    c.zeta = zeta;
    c.closed_form = closed_form;
    return c;
}

Validity parse_validity(const std::string& v) {
    if (v == "strict") return Validity::strict;
    if (v == "extended") return Validity::extended;
    throw UsageError("validity must be strict or extended");
}

// NaN marks rows where no bound is claimed.
Eigen::VectorXd bounds_of(const auto& rows) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = rows[i].bound.value_or(std::numeric_limits<double>::quiet_NaN());
    }
    return out;
}

py::dict stats_dict(const RunStats& s) {
    py::dict d;
    d["rows"] = s.rows;
    d["compared"] = s.compared;
    d["violations"] = s.violations;
    d["unresolved"] = s.unresolved;
    d["nonconverged"] = s.nonconverged;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Decay bounds for entries of matrix functions";

    m.def(
        "spectral_interval",
        [](const std::string& matrix, std::size_t n, const std::string& mode) {
            const MatrixInput in = load_matrix(matrix, n);
            const SpectralInterval s = spectral_interval(in.sparse, parse_spectral_source(mode));
            return py::make_tuple(s.lambda_min(), s.lambda_max(), s.rho());
        },
        py::arg("matrix") = "tridiag", py::arg("n") = 200, py::arg("mode") = "exact",
        "(lambda_min, lambda_max, rho) of a generator or Matrix Market file");

    m.def(
        "bound_column",
        [](const std::string& matrix, std::size_t n, const std::string& function, std::optional<std::string> cls,
           Index column, double tau, double zeta, bool closed_form, const std::string& distance,
           const std::string& validity) {
            BoundRunOptions o;
            o.matrix = matrix;
            o.n = n;
            o.function = choice(function, cls, tau, zeta, closed_form);
            o.column = column;
            o.distance = parse_distance_mode(distance);
            o.bound_options.validity = parse_validity(validity);
            const ColumnResult r = run_bound_column(o);
            Eigen::VectorXd dist(static_cast<Eigen::Index>(r.rows.size()));
            Eigen::VectorXd oracle(dist.size());
            for (std::size_t i = 0; i < r.rows.size(); ++i) {
                dist(static_cast<Eigen::Index>(i)) = r.rows[i].distance;
                oracle(static_cast<Eigen::Index>(i)) = r.rows[i].oracle;
            }
            py::dict d;
            d["distance"] = dist;
            d["bound"] = bounds_of(r.rows);
            d["oracle"] = oracle;
            d["noise_floor"] = r.noise_floor;
            d["stats"] = stats_dict(r.stats);
            return d;
        },
        py::arg("matrix") = "tridiag", py::arg("n") = 200, py::arg("function") = "inv_sqrt",
        py::arg("cls") = py::none(), py::arg("column") = 127, py::arg("tau") = 1.0, py::arg("zeta") = 0.0,
        py::arg("closed_form") = false, py::arg("distance") = "band", py::arg("validity") = "strict",
        "bound and oracle for one column; bound is NaN where no claim is made");

    m.def(
        "oracle_column",
        [](const std::string& matrix, std::size_t n, const std::string& function, std::optional<std::string> cls,
           Index column, double tau, double zeta) {
            const ResolvedFunction f = resolve_function(choice(function, cls, tau, zeta, false));
            const MatrixInput in = load_matrix(matrix, n);
            return Eigen::VectorXcd(matrix_function_column(EigenDecomposition(in.dense()), f.oracle, column).values);
        },
        py::arg("matrix") = "tridiag", py::arg("n") = 200, py::arg("function") = "inv_sqrt",
        py::arg("cls") = py::none(), py::arg("column") = 127, py::arg("tau") = 1.0, py::arg("zeta") = 0.0,
        "column of f(M) by dense eigendecomposition");

    m.def(
        "kron_column",
        [](std::vector<std::string> factors, std::size_t n, const std::string& function,
           std::optional<std::string> cls, std::vector<std::size_t> column, double tau, const std::string& validity) {
            KronRunOptions o;
            o.factors = std::move(factors);
            o.n = n;
            o.function = choice(function, cls, tau, 0.0, false);
            o.column = std::move(column);
            o.bound_options.validity = parse_validity(validity);
            const KronResult r = run_kron_column(o);
            Eigen::VectorXd oracle(static_cast<Eigen::Index>(r.rows.size()));
            for (std::size_t i = 0; i < r.rows.size(); ++i) oracle(static_cast<Eigen::Index>(i)) = r.rows[i].oracle;
            py::dict d;
            d["column"] = r.column.components();
            d["bound"] = bounds_of(r.rows);
            d["oracle"] = oracle;
            d["stats"] = stats_dict(r.stats);
            return d;
        },
        py::arg("factors") = std::vector<std::string>{"tridiag", "tridiag"}, py::arg("n") = 20,
        py::arg("function") = "phi1", py::arg("cls") = py::none(), py::arg("column") = std::vector<std::size_t>{94},
        py::arg("tau") = 1.0, py::arg("validity") = "extended", "Kronecker-sum bound and oracle for one column");

    m.def(
        "reconstruct",
        [](const std::string& measure, const std::string& cls, double x) {
            if (cls == "laplace") return decay::reconstruct(laplace_catalog(measure), x).value;
            if (cls == "cauchy") return decay::reconstruct(cauchy_catalog(measure), x).value;
            throw UsageError("cls must be laplace or cauchy");
        },
        py::arg("measure"), py::arg("cls"), py::arg("x"), "f(x) rebuilt from its measure by quadrature");

    m.def("figure_ids", &figure_ids);
    m.def(
        "figure",
        [](const std::string& id) {
            std::ostringstream out;
            run_figure(id, out);
            return out.str();
        },
        py::arg("id"), "CSV text of one figure");
}
