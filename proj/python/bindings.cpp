#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "qnls/diagnostics.hpp"
#include "qnls/errors.hpp"
#include "qnls/ground_state.hpp"
#include "qnls/i_operator.hpp"
#include "qnls/io/validation.hpp"
#include "qnls/rate_fit.hpp"
#include "qnls/solver.hpp"
#include "qnls/spectral.hpp"

namespace py = pybind11;
using namespace qnls;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

template <class T>
py::array_t<T> to_numpy(std::span<const T> v) {
  py::array_t<T> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

Field make_field(const Grid& g, CArray values, double t) {
  if (values.ndim() != 1 || static_cast<std::size_t>(values.size()) != g.size()) {
    throw ConfigError("Field: values must be a 1d array with one entry per grid point");
  }
  return Field(g, std::vector<cplx>(values.data(), values.data() + values.size()), t);
}

std::vector<std::pair<double, double>> zip_series(py::array_t<double> t, py::array_t<double> g) {
  if (t.size() != g.size()) throw ConfigError("series: t and gradnorm differ in length");
  std::vector<std::pair<double, double>> s(t.size());
  for (py::ssize_t i = 0; i < t.size(); ++i) s[i] = {t.at(i), g.at(i)};
  return s;
}

py::dict fit_to_dict(const RateFit& f) {
  py::dict d;
  d["model"] = std::string(to_string(f.model));
  d["T_star"] = f.T_star;
  d["C"] = f.C;
  d["alpha"] = f.alpha;
  d["rms_residual"] = f.rms_residual;
  d["iterations"] = f.iterations;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudospectral toolkit for the 1d quintic NLS";

  auto base = py::register_exception<Error>(m, "QnlsError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<NumericError>(m, "NumericError", base);
  py::register_exception<ResolutionError>(m, "ResolutionError", base);
  py::register_exception<UndefinedInputError>(m, "UndefinedInputError", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<AccuracyError>(m, "AccuracyError", base);
  py::register_exception<FitRejected>(m, "FitRejected", base);

  py::class_<Grid>(m, "Grid")
      .def(py::init<std::size_t, double>(), py::arg("n"), py::arg("L"))
      .def_property_readonly("n", &Grid::size)
      .def_property_readonly("L", &Grid::length)
      .def_property_readonly("dx", &Grid::spacing)
      .def_property_readonly("x", [](const Grid& g) { return to_numpy<double>(g.points()); })
      .def_property_readonly("k", [](const Grid& g) { return to_numpy<double>(g.wavenumbers()); })
      .def("__repr__", [](const Grid& g) {
        std::ostringstream os;
        os << "Grid(n=" << g.size() << ", L=" << g.length() << ")";
        return os.str();
      });

  py::class_<Field>(m, "Field")
      .def(py::init(&make_field), py::arg("grid"), py::arg("values"), py::arg("time") = 0.0)
      .def_readonly("grid", &Field::grid)
      .def_readwrite("time", &Field::time)
      .def_property_readonly("values", [](const Field& f) { return to_numpy<cplx>(f.values); });

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_property(
          "sign", [](const SolverConfig& c) { return std::string(to_string(c.sign)); },
          [](SolverConfig& c, const std::string& s) { c.sign = parse_sign(s); })
      .def_readwrite("dt_init", &SolverConfig::dt_init)
      .def_readwrite("dt_min", &SolverConfig::dt_min)
      .def_readwrite("accuracy_target", &SolverConfig::accuracy_target)
      .def_readwrite("stop_gradnorm", &SolverConfig::stop_gradnorm)
      .def_readwrite("stop_gradnorm_factor", &SolverConfig::stop_gradnorm_factor)
      .def_readwrite("stop_time", &SolverConfig::stop_time)
      .def_readwrite("dealias_fraction", &SolverConfig::dealias_fraction)
      .def_readwrite("tail_threshold", &SolverConfig::tail_threshold)
      .def_readwrite("snapshot_stride", &SolverConfig::snapshot_stride)
      .def_readwrite("tail_snapshots", &SolverConfig::tail_snapshots)
      .def_readwrite("nonlinear_scale", &SolverConfig::nonlinear_scale)
      .def("validate", &SolverConfig::validate);

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("termination",
                             [](const Trajectory& t) { return std::string(to_string(t.termination)); })
      .def_readonly("snapshots", &Trajectory::snapshots)
      .def_property_readonly("final_state", &Trajectory::final_state)
      .def_property_readonly("records", [](const Trajectory& t) {
        const std::size_t n = t.records.size();
        py::array_t<double> time(n), dt(n), ms(n), en(n), gr(n), amp(n);
        for (std::size_t i = 0; i < n; ++i) {
          const auto& r = t.records[i];
          time.mutable_at(i) = r.time;
          dt.mutable_at(i) = r.dt;
          ms.mutable_at(i) = r.mass;
          en.mutable_at(i) = r.energy;
          gr.mutable_at(i) = r.gradnorm;
          amp.mutable_at(i) = r.max_amp;
        }
        py::dict d;
        d["t"] = time;
        d["dt"] = dt;
        d["mass"] = ms;
        d["energy"] = en;
        d["gradnorm"] = gr;
        d["max_amp"] = amp;
        return d;
      });

  m.def("mass", &mass);
  m.def("gradient_norm", &gradient_norm);
  m.def("sobolev_norm", &sobolev_norm, py::arg("f"), py::arg("s"));
  m.def("derivative", &derivative, py::arg("f"), py::arg("order"));
  m.def(
      "energy", [](const Field& f, const std::string& sign) { return energy(f, parse_sign(sign)); }, py::arg("f"),
      py::arg("sign") = "focusing");
  m.def("gn_slack", &gn_slack);
  m.def("eval_Q", &eval_Q);
  m.def("sample_Q", &sample_Q, py::arg("grid"), py::arg("center") = 0.0, py::arg("scale") = 1.0);
  m.def("ode_residual", [](const Grid& g) { return ode_residual(g).max_residual; });

  m.def("step", &step, py::arg("f"), py::arg("dt"), py::arg("config"));
  m.def("evolve", [](const Field& u0, const SolverConfig& cfg) { return evolve(u0, cfg); }, py::arg("u0"),
        py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def("soliton_solution", &soliton_solution, py::arg("grid"), py::arg("t"));
  m.def("scale_solution", &scale_solution, py::arg("f"), py::arg("lam"));
  m.def("pseudoconformal_transform", &pseudoconformal_transform, py::arg("f"), py::arg("t"));
  m.def(
      "estimate_blowup_time",
      [](py::array_t<double> t, py::array_t<double> g) {
        const auto s = zip_series(t, g);
        const auto e = estimate_blowup_time(s);
        return py::make_tuple(e.t_star, e.fit_quality);
      },
      py::arg("t"), py::arg("gradnorm"));

  m.def(
      "multiplier_value", [](double N, double s, double xi) { return multiplier_value({N, s}, xi); }, py::arg("N"),
      py::arg("s"), py::arg("xi"));
  m.def(
      "apply_I", [](const Field& f, double N, double s) { return apply_I(f, {N, s}); }, py::arg("f"), py::arg("N"),
      py::arg("s"));
  m.def(
      "modified_energy",
      [](const Field& f, double N, double s, const std::string& sign) {
        const auto e = modified_energy(f, {N, s}, parse_sign(sign));
        return py::make_tuple(e.kinetic, e.energy);
      },
      py::arg("f"), py::arg("N"), py::arg("s"), py::arg("sign") = "focusing");
  m.def(
      "energy_flux_rate",
      [](const Field& f, double N, double s, const std::string& sign) {
        return energy_flux_rate(f, {N, s}, parse_sign(sign));
      },
      py::arg("f"), py::arg("N"), py::arg("s"), py::arg("sign") = "focusing");
  m.def("p_exponent", &p_exponent);
  m.def("n_of_lambda", &n_of_lambda, py::arg("lam"), py::arg("s"));

  m.def(
      "concentration_rho",
      [](const Field& f, double width) {
        const auto r = concentration_rho(f, width);
        return py::make_tuple(r.rho, r.y_star, r.width);
      },
      py::arg("f"), py::arg("width"));
  m.def("lemma5_ratio", &lemma5_ratio, py::arg("f"), py::arg("width"));
  m.def(
      "fit_rate",
      [](py::array_t<double> t, py::array_t<double> g, const std::string& model, double hint) {
        const auto s = zip_series(t, g);
        return fit_to_dict(fit_rate(s, parse_rate_model(model), hint));
      },
      py::arg("t"), py::arg("gradnorm"), py::arg("model"), py::arg("T_star_hint"));

  m.def(
      "run_validation",
      [](std::size_t n) {
        std::ostringstream os;
        const bool ok = io::run_validation(n, os);
        return py::make_tuple(ok, os.str());
      },
      py::arg("n") = io::kDefaultValidationN);
}
