#include "sasaki/structures.hpp"

#include <algorithm>
#include <cmath>

namespace sasaki {

namespace {

void require_match(const Weight& w, const SpherePoint& p) {
  if (static_cast<int>(w.size()) != p.n() + 1)
    throw std::invalid_argument("weight length does not match the sphere dimension");
}

// Ambient coefficients of eta = sum (y_k dx_k - x_k dy_k), i.e. -J p.
Vec round_eta(const Vec& p) { return -(complex_structure(static_cast<int>(p.size()) / 2 - 1) * p); }

Vec weight_diag(const Weight& w) {
  Vec d(2 * w.size());
  for (std::size_t k = 0; k < w.size(); ++k) d[2 * k] = d[2 * k + 1] = w[k];
  return d;
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

double FrameResiduals::worst() const {
  return std::max({eta_xi, phi_square, phi_xi, eta_phi, compatibility, contact, symmetry});
}

TangentVector reeb_field(const Weight& w, const SpherePoint& p) {
  require_match(w, p);
  // H_k = y_k d/dx_k - x_k d/dy_k, so sum w_k H_k = -W J p.
  const Vec jp = complex_structure(p.n()) * p.ambient();
  return {-(weight_diag(w).cwiseProduct(jp))};
}

Vec contact_form(const Weight& w, const SpherePoint& p) {
  require_match(w, p);
  const Vec& a = p.ambient();
  const double d = weight_diag(w).dot(a.cwiseProduct(a));
  return round_eta(a) / d;
}

Mat phi_tensor(const Weight& w, const SpherePoint& p) {
  require_match(w, p);
  const Vec& a = p.ambient();
  const Mat j = complex_structure(p.n());
  const Vec xi_round = round_eta(a);
  // Phi_0 is J on the round contact distribution and zero on xi, p.
  const Mat proj = tangent_projector(p) - xi_round * xi_round.transpose();
  const Mat phi0 = j * proj;
  const Vec xi = reeb_field(w, p).v;
  const Vec eta = contact_form(w, p);
  return phi0 - (phi0 * xi) * eta.transpose();
}

Mat deta_weighted(const Weight& w, const SpherePoint& p) {
  require_match(w, p);
  const Vec& a = p.ambient();
  const Vec wd = weight_diag(w);
  const double d = wd.dot(a.cwiseProduct(a));
  const Vec eta = round_eta(a);
  const Vec grad_d = 2.0 * wd.cwiseProduct(a);
  // d(eta) = 2 J for eta = -J p with J antisymmetric.
  const Mat deta0 = 2.0 * complex_structure(p.n());
  return deta0 / d - (grad_d * eta.transpose() - eta * grad_d.transpose()) / (d * d);
}

Mat metric_from_structure(const Vec& p, const Vec& eta, const Mat& phi, const Mat& deta) {
  const Mat proj = Mat::Identity(p.size(), p.size()) - p * p.transpose();
  const Mat raw = ConventionLedger::kappa * deta * phi + eta * eta.transpose();
  return proj * raw * proj;
}

ContactFrame sasaki_metric(const Weight& w, const SpherePoint& p) {
  require_match(w, p);
  ContactFrame f;
  const Vec& a = p.ambient();
  f.p = a;
  f.D = weight_diag(w).dot(a.cwiseProduct(a));
  f.eta = contact_form(w, p);
  f.xi = reeb_field(w, p).v;
  f.phi = phi_tensor(w, p);
  f.deta = deta_weighted(w, p);
  f.g = metric_from_structure(f.p, f.eta, f.phi, f.deta);
  return f;
}

ContactFrame apply_homothety(const ContactFrame& f, double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("homothety factor must be > 0");
  ContactFrame h = f;
  h.xi = f.xi / a;
  h.eta = a * f.eta;
  h.deta = a * f.deta;
  h.g = a * f.g + (a * a - a) * f.eta * f.eta.transpose();
  return h;
}

ContactFrame homothety_frame(const Weight& w, double a, const SpherePoint& p) {
  return apply_homothety(sasaki_metric(w, p), a);
}

bool is_positive_reeb(std::span<const double> w) {
  if (w.empty()) return false;
  return std::all_of(w.begin(), w.end(),
                     [](double v) { return std::isfinite(v) && v > 1e-12; });
}

FrameResiduals check_frame(const ContactFrame& f) {
  const Eigen::Index dim = f.p.size();
  const Mat id = Mat::Identity(dim, dim);
  const Mat proj = id - f.p * f.p.transpose();
  FrameResiduals r;
  r.eta_xi = std::abs(f.eta.dot(f.xi) - 1.0);
  r.phi_square = max_abs((f.phi * f.phi + id - f.xi * f.eta.transpose()) * proj);
  r.phi_xi = (f.phi * f.xi).cwiseAbs().maxCoeff();
  r.eta_phi = (proj * f.phi.transpose() * f.eta).cwiseAbs().maxCoeff();
  r.compatibility = max_abs(
      proj * (f.phi.transpose() * f.g * f.phi - f.g + f.eta * f.eta.transpose()) * proj);
  r.contact = max_abs(proj * (f.phi.transpose() * f.g - ConventionLedger::kappa * f.deta) * proj);
  r.symmetry = max_abs(f.g - f.g.transpose());
  const SpherePoint base(f.p);
  const Mat e = tangent_frame(base);
  const Mat gt = e.transpose() * f.g * e;
  r.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (gt + gt.transpose()))
                         .eigenvalues()
                         .minCoeff();
  return r;
}

double volume_density(const ContactFrame& f) {
  const Mat e = tangent_frame(SpherePoint(f.p));
  return std::sqrt((e.transpose() * f.g * e).determinant());
}

}  // namespace sasaki
