#include "sasaki/cli.hpp"
#include "sasaki/curvature.hpp"
#include "sasaki/extremal.hpp"
#include "sasaki/futaki.hpp"
#include "sasaki/quadrature.hpp"
#include "sasaki/structures.hpp"
#include "sasaki/verify.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace sasaki;

namespace {

Weight weight(const std::vector<double>& w) { return Weight(w); }

SpherePoint point(const Weight& w, const Vec& ambient) {
  if (ambient.size() != 2 * static_cast<Eigen::Index>(w.size()))
    throw std::invalid_argument("point needs 2(n+1) ambient coordinates");
  return SpherePoint(ambient);
}

py::dict frame_dict(const ContactFrame& f) {
  py::dict d;
  d["eta"] = f.eta;
  d["xi"] = f.xi;
  d["phi"] = f.phi;
  d["g"] = f.g;
  d["deta"] = f.deta;
  d["D"] = f.D;
  return d;
}

py::dict flow_dict(const FlowReport& r) {
  py::dict d;
  d["converged"] = r.converged;
  d["status"] = r.status;
  d["iterations"] = r.iterations;
  d["energies"] = r.energies;
  d["grad_norms"] = r.grad_norms;
  d["final"] = r.final.coeffs;
  d["baseline_energy"] = r.baseline_energy;
  d["extremal_residual"] = r.extremal_residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_sasaki, m) {
  m.doc() = "Weighted Sasakian structures on odd spheres";

  py::register_exception<ComputationError>(m, "ComputationError", PyExc_RuntimeError);

  m.def("random_sphere_point",
        [](int n, std::uint64_t seed) { return random_sphere_point(n, seed).ambient(); },
        py::arg("n"), py::arg("seed") = 0);

  m.def("sasaki_metric",
        [](const std::vector<double>& w, const Vec& p) {
          const Weight wt = weight(w);
          return frame_dict(sasaki_metric(wt, point(wt, p)));
        },
        py::arg("weights"), py::arg("point"));

  m.def("homothety_frame",
        [](const std::vector<double>& w, double a, const Vec& p) {
          const Weight wt = weight(w);
          return frame_dict(homothety_frame(wt, a, point(wt, p)));
        },
        py::arg("weights"), py::arg("a"), py::arg("point"));

  m.def("frame_residual",
        [](const std::vector<double>& w, const Vec& p) {
          const Weight wt = weight(w);
          return check_frame(sasaki_metric(wt, point(wt, p))).worst();
        },
        py::arg("weights"), py::arg("point"));

  m.def("scalar_closed",
        [](const std::vector<double>& w, const Vec& p, double a) {
          const Weight wt = weight(w);
          const ScalarReport r = scalar_closed(wt, a, point(wt, p));
          py::dict d;
          d["s_transverse"] = r.s_transverse;
          d["s"] = r.s;
          d["s0"] = r.s0;
          d["s_minus_s0"] = r.s_minus_s0;
          return d;
        },
        py::arg("weights"), py::arg("point"), py::arg("a") = 1.0);

  m.def("scalar_fd",
        [](const std::vector<double>& w, const Vec& p, double a, double h) {
          const Weight wt = weight(w);
          return einstein_residuals(wt, a, point(wt, p), h).curvature.s;
        },
        py::arg("weights"), py::arg("point"), py::arg("a") = 1.0, py::arg("h") = kDefaultFdStep);

  m.def("mean_scalar", [](const std::vector<double>& w) { return mean_scalar(weight(w)); },
        py::arg("weights"));

  m.def("volume_closed", [](const std::vector<double>& w) { return volume_closed(weight(w)); },
        py::arg("weights"));

  m.def("volume",
        [](const std::vector<double>& w, int order) {
          const VolumeReport v = volume(weight(w), order);
          return py::make_tuple(v.closed, v.numeric);
        },
        py::arg("weights"), py::arg("order") = 64);

  m.def("futaki_closed",
        [](const std::vector<double>& w, const std::vector<double>& b) {
          return futaki_closed(weight(w), FutakiInput(b));
        },
        py::arg("weights"), py::arg("b"));

  m.def("futaki_numeric",
        [](const std::vector<double>& w, const std::vector<double>& b, const std::string& method,
           int order) {
          return futaki_numeric(weight(w), FutakiInput(b), parse_futaki_method(method),
                                QuadratureSpec::gauss(order));
        },
        py::arg("weights"), py::arg("b"), py::arg("method") = "chart", py::arg("order") = 64);

  m.def("classify",
        [](const std::vector<double>& w, double a, bool fd_check) {
          const ClassifyReport r = classify(weight(w), a, fd_check);
          py::dict d;
          d["csc"] = r.csc;
          d["einstein"] = r.einstein;
          d["A"] = r.A;
          d["futaki_norm"] = r.futaki_norm;
          d["lambda"] = r.csc ? py::object(py::float_(r.lambda)) : py::object(py::none());
          return d;
        },
        py::arg("weights"), py::arg("a") = 1.0, py::arg("fd_check") = true);

  m.def("energy",
        [](const std::vector<double>& w, const std::vector<double>& coeffs, int order) {
          return energy(weight(w), BasicProfile(coeffs), QuadratureSpec::gauss(order));
        },
        py::arg("weights"), py::arg("coeffs"), py::arg("order") = 64);

  m.def("run_flow",
        [](const std::vector<double>& w, const std::vector<double>& coeffs, double tol, int max_iter) {
          FlowConfig cfg;
          cfg.K = static_cast<int>(coeffs.size());
          cfg.tol = tol;
          cfg.max_iter = max_iter;
          return flow_dict(run_flow(weight(w), BasicProfile(coeffs), cfg));
        },
        py::arg("weights"), py::arg("coeffs"), py::arg("tol") = 1e-4, py::arg("max_iter") = 500);

  m.def("run_criterion",
        [](int id) {
          const CriterionResult r = run_criterion(id);
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["pass"] = r.pass;
          py::dict metrics;
          for (const auto& [k, v] : r.metrics) metrics[py::str(k)] = v;
          d["metrics"] = metrics;
          return d;
        },
        py::arg("id"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = run_cli(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
