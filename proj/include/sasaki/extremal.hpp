#pragma once

// Torus-invariant transverse Kahler deformations of (xi_w, eta_w) on S^3
// (n = 1), the energy E = int s^2 d mu, the Lichnerowicz operator on basic
// functions, the Ricci potential and the descent to the extremal
// representative.
//
// Basic functions are functions of the moment coordinate
// sigma = w_0 |z_0|^2 / D in [0, 1]. A potential phi(sigma) deforms
// eta~ = eta_w + d^c phi (= eta_w + phi'(sigma) Phi_w^T grad sigma with the
// ledger's kappa). In the reduced picture, with
//   Q(sigma)   = sigma (1 - sigma) (w_1 sigma + w_0 (1 - sigma)) / w_0^2,
//   sigma~     = sigma + 2 w_0^2 Q phi',      A = d sigma~ / d sigma,
//   Theta      = Q A,                         D_mu = (2 w_0 / A) d/d sigma,
// the deformed structure has
//   s^T = -D_mu^2 Theta,   d mu~ = A d mu_w,   Delta_B f = -D_mu(Theta D_mu f),
//   L^B f = (1/4) D_mu^2 (Theta^2 D_mu^2 f),
// and int_S F(sigma) d mu_w = 2 pi^2 / (w_0 w_1) int_0^1 F d sigma.

#include "sasaki/chebyshev.hpp"
#include "sasaki/core.hpp"
#include "sasaki/curvature.hpp"
#include "sasaki/futaki.hpp"
#include "sasaki/quadrature.hpp"
#include "sasaki/structures.hpp"
#include "sasaki/taylor.hpp"

#include <functional>
#include <string>

namespace sasaki {

// phi(sigma) = sum_{k=1..K} c_k cos(k pi sigma), K <= 16.
struct BasicProfile {
  static constexpr int kMaxModes = 16;
  std::vector<double> coeffs;

  BasicProfile() = default;
  explicit BasicProfile(std::vector<double> c);
  static BasicProfile zero(int modes);
  static BasicProfile mode(int modes, int k, double amplitude);

  int modes() const { return static_cast<int>(coeffs.size()); }
  bool is_zero() const;
  double operator()(double sigma) const;
  // phi^{(j)}(sigma), j = 0..order.
  std::vector<double> derivatives(double sigma, int order) const;
  Jet<double> operator()(const Jet<double>& sigma) const;
  // phi + t dir (modes padded to the longer profile).
  BasicProfile plus(double t, const BasicProfile& dir) const;
};

// Degenerate deformed transverse form (d sigma~/d sigma <= 0).
class AdmissibilityError : public ComputationError {
 public:
  AdmissibilityError(const std::string& what, double sigma)
      : ComputationError(what), sigma_(sigma) {}
  double sigma() const { return sigma_; }

 private:
  double sigma_;
};

// A function of sigma evaluated on Taylor jets (so all derivatives are exact).
using SigmaFunction = std::function<Jet<double>(const Jet<double>& sigma)>;

SigmaFunction cosine_mode(int k);
SigmaFunction polynomial_in_sigma(std::vector<double> coeffs);  // sum a_j sigma^j
SigmaFunction legendre_mode(int degree);                        // P_degree(2 sigma - 1)
SigmaFunction from_profile(const BasicProfile& phi);
SigmaFunction from_series(const ChebyshevSeries& series);

double sigma_coordinate(const Weight& w, const SpherePoint& p);
// A point with the given sigma (and fixed torus angles).
SpherePoint point_at_sigma(const Weight& w, double sigma);
// Ambient gradient of sigma (tangent to the sphere, orthogonal to the torus).
Vec sigma_gradient(const Weight& w, const SpherePoint& p);
// 2 pi^2 / (w_0 w_1)
double reduced_measure_factor(const Weight& w);

struct ReducedSample {
  double sigma = 0;
  double sigma_t = 0;  // deformed moment coordinate
  double density = 0;  // d mu~ / d mu_w = A
  double theta = 0;
  double s_transverse = 0;
  double s = 0;        // s^T - 2
};

ReducedSample reduced_sample(const Weight& w, const BasicProfile& phi, double sigma);
// min of A over `count` uniform sigma points; positive iff admissible.
double min_density(const Weight& w, const BasicProfile& phi, int count = 513);
void require_admissible(const Weight& w, const BasicProfile& phi);

// Positive basic Laplacian, its square, L^B, and the pairings of the
// linearization, all pointwise in sigma for the deformed structure.
double laplacian_basic(const Weight& w, const BasicProfile& phi, const SigmaFunction& f,
                       double sigma);
double bilaplacian_basic(const Weight& w, const BasicProfile& phi, const SigmaFunction& f,
                         double sigma);
double lichnerowicz_point(const Weight& w, const BasicProfile& phi, const SigmaFunction& f,
                          double sigma);
// <grad f, grad g> for basic f, g.
double gradient_pairing(const Weight& w, const BasicProfile& phi, const SigmaFunction& f,
                        const SigmaFunction& g, double sigma);

// ---- deformed frames (full ambient tensors) ----

// eta~, Phi~, g~ with d(eta~) from forward-mode automatic differentiation.
ContactFrame deformed_frame(const Weight& w, const BasicProfile& phi, const SpherePoint& p);
// d(eta~) by central differences of the deformation 1-form (oracle).
Mat deformed_deta_fd(const Weight& w, const BasicProfile& phi, const SpherePoint& p, double h);

struct DeformedFrame {
  ContactFrame frame;
  Mat rhoT;   // transverse Ricci form rho_g + d(eta~) in chart coordinates
  double sT = 0;
  double s = 0;
  CurvatureData curvature;
};

DeformedFrame deformed_structure(const Weight& w, const BasicProfile& phi, const SpherePoint& p,
                                 double h = kDefaultFdStep);

// ---- energy ----

enum class EnergyMethod { reduced, fd };

// E = int s^2 d mu~. reduced: Gauss-Legendre in sigma (spec.order nodes).
// fd: curvature_fd of g~ and its exact density at spec.order Gauss nodes in r_0.
double energy(const Weight& w, const BasicProfile& phi,
              const QuadratureSpec& spec = QuadratureSpec::gauss(64),
              EnergyMethod method = EnergyMethod::reduced, double h = kDefaultFdStep);
// Same energy with complex coefficients (used for complex-step derivatives).
std::complex<double> energy_complex(const Weight& w, const std::vector<std::complex<double>>& c,
                                    int order = 64);

// ---- Lichnerowicz operator ----

struct GridFunctionResult {
  Vec sigma;
  Vec values;
  double noise_ratio = 0;     // |L f - L f_truncated| / |L f|
  bool resolution_ok = true;  // noise_ratio <= 0.1
};

// L^B applied to f given at chebyshev_grid(f.size()).
GridFunctionResult lichnerowicz_apply(const Weight& w, const BasicProfile& phi, const Vec& f);

struct LichnerowiczSpectrum {
  Vec eigenvalues;      // ascending, of the Gram matrix in a d mu~-orthonormal basis
  Vec singular_values;  // ascending
  int kernel_dim = 0;   // singular values < 1e-6
  double asymmetry = 0; // max |G - G^T| / max |G|
};

// Galerkin matrix G_ij = int p_i L^B p_j d mu~ over Legendre polynomials up
// to `degree`, orthonormalized against d mu~.
LichnerowiczSpectrum lichnerowicz_spectrum(const Weight& w, const BasicProfile& phi,
                                           int degree = 10, int order = 96);

// ---- variations ----

struct FirstVariation {
  std::vector<double> ts;
  std::vector<double> fd_derivatives;  // (E(t) - E(-t)) / 2t
  std::vector<double> errors;          // |fd - analytic|
  double fd_derivative = 0;            // at the smallest t
  double analytic = 0;                 // -4 int s L^B(dir) d mu~
  double rel_err = 0;
  double order = 0;                    // min observed order over consecutive t
};

FirstVariation first_variation_check(const Weight& w, const BasicProfile& phi,
                                     const BasicProfile& dir,
                                     std::vector<double> ts = {1e-2, 5e-3, 2.5e-3});

struct ExpansionCheck {
  std::vector<double> ts;
  // max over the sigma grid of |s_t - s - t s_dot| and
  // |d mu_t / d mu - 1 + (t/2) Delta_B dir|
  std::vector<double> s_residuals;
  std::vector<double> mu_residuals;
  double s_order = 0;
  double mu_max_rel = 0;  // max mu residual / t
};

// s_dot = -(1/2 Delta^2 dir + 2 (rho^T, i ddbar dir)), with
// (rho^T, i ddbar f) = (s^T / 2)(-1/2 Delta_B f).
ExpansionCheck expansion_check(const Weight& w, const BasicProfile& phi, const BasicProfile& dir,
                               std::vector<double> ts = {1e-2, 5e-3, 2.5e-3}, int grid = 41);

// ---- Ricci potential and Futaki ----

struct RicciPotentialGrid {
  Vec sigma_nodes;
  Vec psi;
  Vec dpsi;
  double s0 = 0;
  double residual = 0;  // max |Delta_B psi - (s0 - s)| over the nodes
  double mean = 0;      // int psi d mu~ after normalization
  ChebyshevSeries series;
};

RicciPotentialGrid ricci_potential(const Weight& w, const BasicProfile& phi, int nodes = 65);

struct FutakiPotentialReport {
  double via_potential = 0;  // int <grad f_b, grad psi> d mu~
  double direct = 0;         // -int f_b (s - s0) d mu~
};

FutakiPotentialReport futaki_via_potential(const Weight& w, const FutakiInput& b,
                                           const BasicProfile& phi, int nodes = 65);

// ---- descent ----

enum class GradientMethod { complex_step, central };

struct FlowConfig {
  double step = 1.0;  // initial Armijo step
  double tol = 1e-4;
  int max_iter = 500;
  int K = 8;
  GradientMethod gradient = GradientMethod::complex_step;
  int quad_order = 64;
};

struct FlowReport {
  std::vector<double> energies;
  std::vector<double> grad_norms;
  std::vector<double> steps;
  BasicProfile final;
  int iterations = 0;
  bool converged = false;
  std::string status;
  double baseline_energy = 0;    // E(phi = 0)
  double extremal_residual = 0;  // |(1 - pi) s| / |s| in L^2(d mu~), pi onto span{1, sigma~}
};

FlowReport run_flow(const Weight& w, const BasicProfile& phi0, const FlowConfig& cfg);
// Gradient of the reduced energy in coefficient space.
Vec energy_gradient(const Weight& w, const BasicProfile& phi, GradientMethod method,
                    int order = 64);
double extremal_residual(const Weight& w, const BasicProfile& phi, int order = 64);

struct ProfileRow {
  double sigma, phi, s_deformed, s_closed_baseline;
};
std::vector<ProfileRow> profile_table(const Weight& w, const BasicProfile& phi, int count = 101);

}  // namespace sasaki
