#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pdxprop/combinat.hpp"
#include "pdxprop/continuum.hpp"
#include "pdxprop/faddeeva.hpp"
#include "pdxprop/lattice.hpp"
#include "pdxprop/pdx.hpp"
#include "pdxprop/version.hpp"

#include <complex>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

namespace py = pybind11;

namespace {

using namespace pdxprop;

py::int_ to_pyint(const BigCount& x) {
    return py::cast<py::int_>(py::module_::import("builtins").attr("int")(x.str()));
}

continuum::TimeKind kind_of(const std::string& name) {
    if (name == "euclidean") return continuum::TimeKind::Euclidean;
    if (name == "real") return continuum::TimeKind::Real;
    throw std::invalid_argument("kind must be 'euclidean' or 'real'");
}

continuum::Side side_of(const std::string& name) {
    if (name == "positive") return continuum::Side::Positive;
    if (name == "negative") return continuum::Side::Negative;
    throw std::invalid_argument("side must be 'positive' or 'negative'");
}

lattice::WeightModel model_of(const std::string& name, double parameter) {
    if (name == "free") return lattice::Free{};
    if (name == "step") return lattice::Step{parameter};
    if (name == "delta") return lattice::Delta{parameter};
    throw std::invalid_argument("model must be 'free', 'step', or 'delta'");
}

double log_or_ninf(const LogCount& c) {
    return c.zero ? -std::numeric_limits<double>::infinity() : c.log_value;
}

quad::QuadratureSpec default_quad() {
    quad::QuadratureSpec s;
    s.abs_tol = 1e-20;
    s.rel_tol = 1e-10;
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Propagators near step and delta potentials: lattice combinatorics, "
              "closed continuum forms, and path-decomposition quadrature";
    m.attr("__version__") = kVersion;

    // combinat
    m.def("catalan", [](unsigned n) { return to_pyint(combinat::catalan(n)); }, py::arg("n"));
    m.def("central_binomial",
          [](unsigned n) { return to_pyint(combinat::central_binomial(n)); }, py::arg("n"));
    m.def("catalan_triangle",
          [](unsigned n, unsigned k) { return to_pyint(combinat::catalan_triangle(n, k)); },
          py::arg("n"), py::arg("k"));
    m.def("crossing_partition_count",
          [](unsigned n, unsigned l) {
              return to_pyint(combinat::crossing_partition_count(n, l));
          },
          py::arg("n"), py::arg("l"));
    m.def("catalan_asymptotic_log",
          [](unsigned n) { return log_or_ninf(combinat::catalan_asymptotic(n)); }, py::arg("n"));
    m.def("crossing_count_asymptotic_log",
          [](unsigned n, unsigned l) {
              return log_or_ninf(combinat::crossing_count_asymptotic(n, l));
          },
          py::arg("n"), py::arg("l"));

    // lattice
    m.def("time_below_steps",
          [](const std::string& path) {
              return lattice::time_below_steps(lattice::LatticePath::from_string(path));
          },
          py::arg("path"));
    m.def("boundary_crossings",
          [](const std::string& path) {
              return lattice::boundary_crossings(lattice::LatticePath::from_string(path));
          },
          py::arg("path"));
    m.def("chung_feller_map",
          [](const std::string& path) {
              return lattice::chung_feller_map(lattice::LatticePath::from_string(path))
                  .to_string();
          },
          py::arg("path"));
    m.def("lattice_density_closed",
          [](unsigned long n, const std::string& model, double parameter, double mass, double T) {
              const auto spec = lattice::LatticeSpec::from_time(n, mass, T);
              return lattice::lattice_density_closed(n, model_of(model, parameter), spec);
          },
          py::arg("n"), py::arg("model"), py::arg("parameter") = 0.0, py::arg("mass") = 1.0,
          py::arg("T") = 1.0);
    m.def("lattice_density_bruteforce",
          [](unsigned n, const std::string& model, double parameter, double mass, double T,
             unsigned bound) {
              const auto spec = lattice::LatticeSpec::from_time(n, mass, T);
              return lattice::lattice_density_bruteforce(n, model_of(model, parameter), spec,
                                                         bound);
          },
          py::arg("n"), py::arg("model"), py::arg("parameter") = 0.0, py::arg("mass") = 1.0,
          py::arg("T") = 1.0, py::arg("bound") = lattice::kDefaultEnumerationBound);
    m.def("transfer_matrix_density",
          [](unsigned long n, long x0_site, long x1_site, const std::string& model,
             double parameter, double mass, double T) {
              const auto spec = lattice::LatticeSpec::from_time(n, mass, T);
              const long cutoff =
                  static_cast<long>(n) + std::max(std::labs(x0_site), std::labs(x1_site));
              return lattice::transfer_matrix_density(n, x0_site, x1_site,
                                                      model_of(model, parameter), spec, cutoff);
          },
          py::arg("n"), py::arg("x0_site"), py::arg("x1_site"), py::arg("model"),
          py::arg("parameter") = 0.0, py::arg("mass") = 1.0, py::arg("T") = 1.0);

    // continuum
    m.def("free_propagator",
          [](double x0, double x1, double T, double mass, const std::string& kind) {
              return continuum::free_propagator({x0, x1, T, mass}, kind_of(kind)).amplitude;
          },
          py::arg("x0"), py::arg("x1"), py::arg("T"), py::arg("mass") = 1.0,
          py::arg("kind") = "euclidean");
    m.def("restricted_propagator",
          [](double x0, double x1, double T, double mass, const std::string& kind,
             const std::string& side) {
              return continuum::restricted_propagator({x0, x1, T, mass}, kind_of(kind),
                                                      side_of(side))
                  .amplitude;
          },
          py::arg("x0"), py::arg("x1"), py::arg("T"), py::arg("mass") = 1.0,
          py::arg("kind") = "euclidean", py::arg("side") = "positive");
    m.def("boundary_derivative",
          [](double x0, double T, double mass, const std::string& kind, const std::string& side) {
              return continuum::boundary_derivative({x0, 0.0, T, mass}, kind_of(kind),
                                                    side_of(side))
                  .amplitude;
          },
          py::arg("x0"), py::arg("T"), py::arg("mass") = 1.0, py::arg("kind") = "euclidean",
          py::arg("side") = "positive");
    m.def("step_edge_propagator",
          [](double T, double V, double mass, const std::string& kind) {
              return continuum::step_edge_propagator(T, V, mass, kind_of(kind)).amplitude;
          },
          py::arg("T"), py::arg("V"), py::arg("mass") = 1.0, py::arg("kind") = "euclidean");
    m.def("delta_edge_propagator",
          [](double T, double a, double mass, const std::string& kind) {
              return continuum::delta_edge_propagator(T, a, mass, kind_of(kind)).amplitude;
          },
          py::arg("T"), py::arg("a"), py::arg("mass") = 1.0, py::arg("kind") = "euclidean");
    m.def("delta_edge_by_quadrature",
          [](double T, double a, double mass, const std::string& kind) {
              return continuum::delta_edge_theta_by_quadrature(
                  continuum::theta_for(kind_of(kind), T), a, mass, default_quad());
          },
          py::arg("T"), py::arg("a"), py::arg("mass") = 1.0, py::arg("kind") = "euclidean");
    m.def("delta_full_propagator",
          [](double x0, double x1, double T, double mass, double a, const std::string& kind) {
              return continuum::delta_full_propagator({x0, x1, T, mass}, a, kind_of(kind))
                  .amplitude;
          },
          py::arg("x0"), py::arg("x1"), py::arg("T"), py::arg("mass") = 1.0, py::arg("a") = 0.0,
          py::arg("kind") = "euclidean");
    m.def("erfcx", [](std::complex<double> z) { return pdxprop::erfcx(z); }, py::arg("z"));
    m.def("continuum_extrapolate",
          [](const std::vector<std::pair<double, double>>& samples) {
              const auto r = continuum::continuum_extrapolate(samples);
              return std::make_pair(r.estimate, r.error_estimate);
          },
          py::arg("samples"));

    // pdx
    m.def("verify_free_identity",
          [](const std::vector<double>& x0s, const std::vector<double>& Ts, double mass) {
              std::vector<pdx::Query> queries;
              for (double x0 : x0s)
                  for (double T : Ts) queries.push_back({x0, -x0, T, mass});
              return pdx::verify_free_identity(queries, default_quad()).to_json();
          },
          py::arg("x0s"), py::arg("Ts"), py::arg("mass") = 1.0);
    m.def("assemble_delta_full",
          [](double x0, double x1, double T, double mass, double a) {
              return pdx::assemble_delta_full({x0, x1, T, mass}, a, default_quad(),
                                              continuum::TimeKind::Euclidean)
                  .amplitude.real();
          },
          py::arg("x0"), py::arg("x1"), py::arg("T"), py::arg("mass") = 1.0, py::arg("a") = 0.0);
    m.def("assemble_step_full",
          [](double x0, double x1, double T, double mass, double V) {
              return pdx::assemble_step_full({x0, x1, T, mass}, V, default_quad(),
                                             continuum::TimeKind::Euclidean)
                  .amplitude.real();
          },
          py::arg("x0"), py::arg("x1"), py::arg("T"), py::arg("mass") = 1.0, py::arg("V") = 0.0);
}
