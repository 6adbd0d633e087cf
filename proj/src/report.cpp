#include "sasaki/report.hpp"

#include <charconv>
#include <cmath>

namespace sasaki {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Json to_json(const Weight& w) {
  Json a = Json::array();
  for (double v : w.entries()) a.push_back(v);
  return a;
}

Json to_json(const FrameResiduals& r) {
  return Json{{"eta_xi", r.eta_xi},
              {"phi_square", r.phi_square},
              {"phi_xi", r.phi_xi},
              {"eta_phi", r.eta_phi},
              {"compatibility", r.compatibility},
              {"contact", r.contact},
              {"symmetry", r.symmetry},
              {"min_eigenvalue", r.min_eigenvalue}};
}

Json to_json(const ScalarReport& r) {
  return Json{{"s_transverse", r.s_transverse},
              {"s", r.s},
              {"s0", r.s0},
              {"s_minus_s0", r.s_minus_s0}};
}

Json to_json(const VolumeReport& r) {
  return Json{{"closed", r.closed}, {"numeric", r.numeric}, {"rel_err", r.rel_err}};
}

Json to_json(const ClassifyReport& r) {
  Json j;
  j["csc"] = r.csc;
  j["einstein"] = r.einstein;
  j["A"] = r.A;
  j["futaki_norm"] = r.futaki_norm;
  j["lambda"] = r.csc ? Json(r.lambda) : Json(nullptr);
  j["folded_scale"] = r.csc ? Json(r.folded_scale) : Json(nullptr);
  j["einstein_residual"] = r.einstein_residual >= 0 ? Json(r.einstein_residual) : Json(nullptr);
  return j;
}

Json to_json(const BasicProfile& p) { return Json(p.coeffs); }

Json to_json(const FlowReport& r) {
  Json j;
  j["converged"] = r.converged;
  j["status"] = r.status;
  j["iterations"] = r.iterations;
  j["energies"] = r.energies;
  j["grad_norms"] = r.grad_norms;
  j["steps"] = r.steps;
  j["final"] = to_json(r.final);
  j["final_energy"] = r.energies.empty() ? 0.0 : r.energies.back();
  j["baseline_energy"] = r.baseline_energy;
  j["relative_gap"] = r.energies.empty() || r.baseline_energy == 0.0
                          ? 0.0
                          : (r.energies.back() - r.baseline_energy) / r.baseline_energy;
  j["extremal_residual"] = r.extremal_residual;
  return j;
}

void write_csv_row(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << format_number(values[i]);
  }
  out << '\n';
}

void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows) {
  out << "sigma,phi,s_deformed,s_closed_baseline\n";
  for (const auto& r : rows) write_csv_row(out, {r.sigma, r.phi, r.s_deformed, r.s_closed_baseline});
}

}  // namespace sasaki
