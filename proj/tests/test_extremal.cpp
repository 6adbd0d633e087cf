#include "sasaki/extremal.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace sasaki;
using std::numbers::pi;

namespace {

const Weight w12({1.0, 2.0});

BasicProfile random_profile(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(4);
  for (int k = 0; k < 4; ++k) c[k] = radius * u(rng) / ((k + 1) * (k + 1));
  return BasicProfile(c);
}

}  // namespace

TEST_SUITE("extremal") {

TEST_CASE("sigma coordinate") {
  const std::vector<double> r10{1.0, 0.0}, r01{0.0, 1.0}, half{0.5, 0.5};
  CHECK(sigma_coordinate(w12, SpherePoint::from_radii(r10)) == 1.0);
  CHECK(sigma_coordinate(w12, SpherePoint::from_radii(r01)) == 0.0);
  CHECK(std::abs(sigma_coordinate(Weight({1.0, 1.0}), SpherePoint::from_radii(half)) - 0.5) < 1e-15);
  CHECK(std::abs(sigma_coordinate(w12, point_at_sigma(w12, 0.3)) - 0.3) < 1e-14);
  CHECK_THROWS_AS(sigma_coordinate(Weight({1.0, 1.0, 1.0}), random_sphere_point(2, 0)),
                  std::invalid_argument);
}

TEST_CASE("profiles") {
  const BasicProfile p({0.1, -0.2});
  CHECK(p.modes() == 2);
  CHECK(std::abs(p(0.25) - (0.1 * std::cos(pi / 4) - 0.2 * std::cos(pi / 2))) < 1e-15);
  const std::vector<double> d = p.derivatives(0.3, 2);
  CHECK(std::abs(d[1] - (-0.1 * pi * std::sin(0.3 * pi) + 0.4 * pi * std::sin(0.6 * pi))) < 1e-14);
  CHECK(BasicProfile::zero(8).is_zero());
  CHECK(BasicProfile::mode(8, 3, 0.5).coeffs[2] == 0.5);
  CHECK_THROWS_AS(BasicProfile::mode(8, 9, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(BasicProfile(std::vector<double>(17, 0.0)), std::invalid_argument);
  CHECK(p.plus(2.0, BasicProfile({0.0, 0.0, 1.0})).coeffs == std::vector<double>{0.1, -0.2, 2.0});
}

TEST_CASE("admissibility") {
  CHECK(min_density(w12, BasicProfile::zero(4)) > 0.0);
  const BasicProfile bad({2.0});
  CHECK(min_density(w12, bad) < 0.0);
  CHECK_THROWS_AS(require_admissible(w12, bad), AdmissibilityError);
  try {
    energy(w12, bad);
  } catch (const AdmissibilityError& e) {
    CHECK(e.sigma() >= 0.0);
    CHECK(e.sigma() <= 1.0);
  }
}

TEST_CASE("undeformed frame equals the weighted frame") {
  for (int i = 0; i < 5; ++i) {
    const SpherePoint p = random_sphere_point(1, i);
    const ContactFrame a = deformed_frame(w12, BasicProfile::zero(8), p);
    const ContactFrame b = sasaki_metric(w12, p);
    CHECK((a.g - b.g).norm() == 0.0);
    CHECK((a.eta - b.eta).norm() == 0.0);
    CHECK((a.phi - b.phi).norm() == 0.0);
    CHECK((a.xi - b.xi).norm() == 0.0);
  }
}

TEST_CASE("deformed frames satisfy the contact identities") {
  std::mt19937_64 rng(4);
  double worst = 0.0, reeb = 0.0, deta = 0.0;
  for (int i = 0; i < 30; ++i) {
    const BasicProfile phi = random_profile(rng, 0.03);
    const SpherePoint p = random_sphere_point(1, 300 + i);
    const ContactFrame f = deformed_frame(w12, phi, p);
    const FrameResiduals r = check_frame(f);
    worst = std::max(worst, r.worst());
    CHECK(r.min_eigenvalue > 0.0);
    reeb = std::max(reeb, std::abs(f.eta.dot(reeb_field(w12, p).v) - 1.0));
    const Mat fd = deformed_deta_fd(w12, phi, p, 1e-5);
    deta = std::max(deta, (tangent_projector(p) * (fd - f.deta) * tangent_projector(p)).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-10);
  CHECK(reeb < 1e-12);
  CHECK(deta < 1e-8);
}

TEST_CASE("deformed scalar curvature: reduced vs FD") {
  const BasicProfile phi({0.03, -0.01});
  for (double sigma : {0.2, 0.5, 0.8}) {
    const SpherePoint p = point_at_sigma(w12, sigma);
    const DeformedFrame d = deformed_structure(w12, phi, p);
    const ReducedSample r = reduced_sample(w12, phi, sigma);
    CHECK(std::abs(d.s - r.s) < 1e-3 * std::abs(r.s_transverse));
    CHECK(std::abs(d.sT - r.s_transverse) < 1e-3 * std::abs(r.s_transverse));
  }
}

TEST_CASE("energy") {
  const double round = energy(Weight({1.0, 1.0}), BasicProfile::zero(8));
  CHECK(std::abs(round - 72 * pi * pi) < 1e-3 * 72 * pi * pi);
  const double e0 = energy(w12, BasicProfile::zero(8));
  // closed form: int s^2 d mu for the weighted baseline
  const double closed = integrate_invariant(
      w12,
      [](const Vec& r) {
        const SpherePoint p = SpherePoint::from_radii(std::vector<double>{r[0], r[1]});
        const double s = scalar_closed(w12, p).s;
        return s * s;
      },
      QuadratureSpec::gauss(64));
  CHECK(std::abs(e0 - closed) < 1e-3 * closed);
  CHECK(std::abs(e0 - 148 * pi * pi) < 1e-9 * e0);
  const BasicProfile phi = BasicProfile::mode(8, 1, 0.05);
  CHECK(energy(w12, phi) == energy(w12, phi));
  const double fd = energy(w12, phi, QuadratureSpec::gauss(24), EnergyMethod::fd);
  const double red = energy(w12, phi, QuadratureSpec::gauss(24));
  CHECK(std::abs(fd - red) < 1e-3 * red);
  CHECK_THROWS_AS(energy(w12, phi, QuadratureSpec::mc(1000, 0)), std::invalid_argument);
  std::vector<std::complex<double>> c(phi.coeffs.begin(), phi.coeffs.end());
  CHECK(std::abs(energy_complex(w12, c).real() - energy(w12, phi)) < 1e-10 * red);
}

TEST_CASE("baseline is a local minimum of the energy") {
  std::mt19937_64 rng(12);
  const double e0 = energy(w12, BasicProfile::zero(8));
  for (int i = 0; i < 5; ++i) {
    const BasicProfile dir = random_profile(rng, 1.0);
    for (double t : {-1e-2, -3e-3, 3e-3, 1e-2})
      CHECK(energy(w12, BasicProfile::zero(4).plus(t, dir)) - e0 >= -1e-6);
  }
}

TEST_CASE("Lichnerowicz operator on grid functions") {
  const int m = 33;
  const Vec s = chebyshev_grid(m);
  const GridFunctionResult one = lichnerowicz_apply(w12, BasicProfile::zero(8), Vec::Ones(m));
  CHECK(one.values.cwiseAbs().maxCoeff() < 1e-6);
  const GridFunctionResult lin = lichnerowicz_apply(w12, BasicProfile::zero(8), s);
  CHECK(lin.values.cwiseAbs().maxCoeff() < 1e-3);
  const BasicProfile phi({0.04, 0.01});
  const Vec f = (3.0 * s.array()).cos().matrix() + s.cwiseProduct(s);
  const GridFunctionResult r = lichnerowicz_apply(w12, phi, f);
  CHECK(r.resolution_ok);
  const Vec cc = clenshaw_curtis_weights(m);
  double pairing = 0.0;
  for (int i = 0; i < m; ++i) pairing += cc[i] * f[i] * r.values[i] * reduced_sample(w12, phi, s[i]).density;
  CHECK(pairing >= -1e-8);
  // a non-smooth input is flagged
  Vec kink(m);
  for (int i = 0; i < m; ++i) kink[i] = std::abs(s[i] - 0.5);
  CHECK_FALSE(lichnerowicz_apply(w12, phi, kink).resolution_ok);
}

TEST_CASE("Lichnerowicz spectrum") {
  const LichnerowiczSpectrum base = lichnerowicz_spectrum(w12, BasicProfile::zero(8));
  CHECK(base.kernel_dim == 2);
  CHECK(base.eigenvalues.minCoeff() >= -1e-8);
  CHECK(base.asymmetry < 1e-10);
  const LichnerowiczSpectrum def = lichnerowicz_spectrum(w12, BasicProfile({0.05, -0.01}));
  CHECK(def.eigenvalues.minCoeff() >= -1e-8);
  CHECK(def.kernel_dim >= 1);
}

TEST_CASE("first variation") {
  const BasicProfile zero = BasicProfile::zero(4);
  const FirstVariation none = first_variation_check(w12, zero, BasicProfile::zero(4));
  CHECK(none.fd_derivative == 0.0);
  CHECK(none.analytic == 0.0);
  std::mt19937_64 rng(6);
  const FirstVariation r = first_variation_check(w12, BasicProfile::mode(4, 1, 0.05), random_profile(rng, 0.1));
  CHECK(r.rel_err < 1e-2);
  CHECK(r.order >= 1.9);
  const FirstVariation at0 = first_variation_check(w12, zero, random_profile(rng, 0.1));
  CHECK(std::abs(at0.analytic) < 1e-8);
}

TEST_CASE("pointwise expansions") {
  const ExpansionCheck e = expansion_check(w12, BasicProfile({0.03}), BasicProfile({0.02, -0.01, 0.005}));
  CHECK(e.s_order >= 1.9);
  CHECK(e.mu_max_rel < 1e-6);
}

TEST_CASE("basic Laplacian equals the metric Laplacian at the baseline") {
  const SigmaFunction f = cosine_mode(2);
  for (double sigma : {0.25, 0.6}) {
    const SpherePoint p = point_at_sigma(w12, sigma);
    const ChartCoords ch = graph_chart(p);
    const ChartMetricField field =
        chart_metric_field([](const SpherePoint& q) { return sasaki_metric(w12, q).g; }, ch);
    const double fd = laplacian_fd(
        field, [&](const Vec& u) { return f(Jet<double>(sigma_coordinate(w12, from_chart(ch, u)), 0)).value(); },
        ch, 1e-3);
    const double red = laplacian_basic(w12, BasicProfile::zero(8), f, sigma);
    CHECK(std::abs(fd - red) < 1e-4 * (1.0 + std::abs(red)));
  }
}

TEST_CASE("Ricci potential") {
  const RicciPotentialGrid round = ricci_potential(Weight({1.0, 1.0}), BasicProfile::zero(8));
  CHECK(round.psi.cwiseAbs().maxCoeff() < 1e-10);
  const RicciPotentialGrid r = ricci_potential(w12, BasicProfile({0.04, -0.01}));
  CHECK(r.residual < 1e-6);
  CHECK(std::abs(r.mean) < 1e-10);
}

TEST_CASE("Futaki invariant through the Ricci potential") {
  const FutakiInput b({1.0, 0.0});
  const FutakiPotentialReport base = futaki_via_potential(w12, b, BasicProfile::zero(8));
  CHECK(std::abs(base.via_potential + 2 * pi * pi) < 1e-3 * 2 * pi * pi);
  CHECK(std::abs(base.direct + 2 * pi * pi) < 1e-3 * 2 * pi * pi);
  const FutakiPotentialReport def = futaki_via_potential(w12, b, BasicProfile::mode(8, 1, 0.05));
  CHECK(std::abs(def.via_potential + 2 * pi * pi) < 1e-2 * 2 * pi * pi);
  CHECK(std::abs(def.direct + 2 * pi * pi) < 1e-2 * 2 * pi * pi);
  const FutakiPotentialReport reeb = futaki_via_potential(w12, FutakiInput({1.0, 2.0}), BasicProfile::mode(8, 1, 0.05));
  CHECK(std::abs(reeb.via_potential) < 1e-8);
  CHECK(std::abs(reeb.direct) < 1e-8);
}

TEST_CASE("descent") {
  FlowConfig cfg;
  const FlowReport zero = run_flow(w12, BasicProfile::zero(8), cfg);
  CHECK(zero.converged);
  CHECK(zero.iterations == 0);

  const FlowReport r = run_flow(w12, BasicProfile::mode(8, 1, 0.05), cfg);
  CHECK(r.converged);
  CHECK(r.grad_norms.back() < cfg.tol);
  CHECK(std::abs(r.energies.back() - r.baseline_energy) < 1e-3 * r.baseline_energy);
  for (std::size_t i = 1; i < r.energies.size(); ++i) CHECK(r.energies[i] <= r.energies[i - 1]);
  CHECK(r.extremal_residual < 1e-6);

  cfg.gradient = GradientMethod::central;
  const FlowReport c = run_flow(w12, BasicProfile::mode(8, 1, 0.05), cfg);
  CHECK(c.converged);

  cfg.max_iter = 1;
  cfg.gradient = GradientMethod::complex_step;
  const FlowReport capped = run_flow(w12, BasicProfile::mode(8, 1, 0.05), cfg);
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 1);
}

TEST_CASE("gradient methods agree") {
  const BasicProfile phi({0.01, 0.005, -0.003});
  CHECK_THROWS_AS(energy_gradient(w12, BasicProfile({0.03, 0.01, -0.02}), GradientMethod::central),
                  AdmissibilityError);
  const Vec a = energy_gradient(w12, phi, GradientMethod::complex_step);
  const Vec b = energy_gradient(w12, phi, GradientMethod::central);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-5 * a.cwiseAbs().maxCoeff());
}

TEST_CASE("profile table") {
  const std::vector<ProfileRow> rows = profile_table(w12, BasicProfile::zero(8), 11);
  CHECK(rows.size() == 11);
  CHECK(rows.front().sigma == 0.0);
  CHECK(rows.back().sigma == 1.0);
  for (const ProfileRow& r : rows) CHECK(std::abs(r.s_deformed - r.s_closed_baseline) < 1e-10);
}

}
