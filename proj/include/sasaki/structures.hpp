#pragma once

// Weighted Sasakian structures (xi_w, eta_w, Phi_w, g_w) on S^{2n+1} and
// their transverse homotheties.

#include "sasaki/core.hpp"

#include <span>

namespace sasaki {

// All structure tensors at one point, as ambient (2n+2)-dimensional
// objects. Covectors are ambient vectors whose restriction to T_p gives the
// form; bilinear forms are matrices with B(X, Y) = X^T B Y.
struct ContactFrame {
  Vec p;      // base point
  Vec eta;    // contact form
  Vec xi;     // Reeb field
  Mat phi;    // (1,1)-tensor
  Mat g;      // metric, projected onto T_p
  Mat deta;   // d(eta), antisymmetric
  double D = 1.0;  // eta_round(xi_w) = sum_k w_k |z_k|^2 of the underlying weight
};

// Residuals of the contact-metric identities at a frame, all measured on
// tangent vectors (max-abs entries of the projected defect matrices).
struct FrameResiduals {
  double eta_xi = 0;         // |eta(xi) - 1|
  double phi_square = 0;     // Phi^2 + Id - xi (x) eta
  double phi_xi = 0;         // Phi(xi)
  double eta_phi = 0;        // eta o Phi
  double compatibility = 0;  // g(Phi X, Phi Y) - g(X, Y) + eta(X) eta(Y)
  double contact = 0;        // g(Phi X, Y) - kappa d(eta)(X, Y)
  double symmetry = 0;       // g - g^T
  double min_eigenvalue = 0; // of g on T_p
  double worst() const;
};

TangentVector reeb_field(const Weight& w, const SpherePoint& p);
// eta_w = eta / D.
Vec contact_form(const Weight& w, const SpherePoint& p);
// Phi_w = Phi_0 - Phi_0(xi_w) (x) eta_w.
Mat phi_tensor(const Weight& w, const SpherePoint& p);
// d(eta_w) = d(eta)/D - (dD ^ eta)/D^2 in closed form.
Mat deta_weighted(const Weight& w, const SpherePoint& p);
ContactFrame sasaki_metric(const Weight& w, const SpherePoint& p);

// xi_a = xi/a, eta_a = a eta, Phi_a = Phi, g_a = a g + (a^2 - a) eta (x) eta.
ContactFrame homothety_frame(const Weight& w, double a, const SpherePoint& p);
ContactFrame apply_homothety(const ContactFrame& f, double a);

bool is_positive_reeb(std::span<const double> w);

// g = P (kappa d(eta) o (1 (x) Phi) + eta (x) eta) P.
Mat metric_from_structure(const Vec& p, const Vec& eta, const Mat& phi, const Mat& deta);

FrameResiduals check_frame(const ContactFrame& f);

// sqrt(det g) on an orthonormal basis of T_p: the density of the frame's
// Riemannian measure against the round measure.
double volume_density(const ContactFrame& f);

}  // namespace sasaki
