#include "sasaki/structures.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sasaki;

namespace {

Weight random_weight(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.3, 4.0);
  std::vector<double> e(n + 1);
  for (double& v : e) v = u(rng);
  return Weight(e);
}

}  // namespace

TEST_SUITE("structures") {

TEST_CASE("Reeb field examples") {
  const Weight ones({1.0, 1.0, 1.0});
  const SpherePoint p = random_sphere_point(2, 4);
  const Vec xi = reeb_field(ones, p).v;
  // sum H_k with H_k = y_k d/dx_k - x_k d/dy_k
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(xi[2 * k] - p.y(k)) < 1e-15);
    CHECK(std::abs(xi[2 * k + 1] + p.x(k)) < 1e-15);
  }
  Vec e = Vec::Zero(4);
  e[0] = 1.0;
  const Vec v = reeb_field(Weight({3.0, 5.0}), SpherePoint(e)).v;
  CHECK(v[1] == -3.0);
  CHECK(v[0] == 0.0);
  CHECK(v[2] == 0.0);
  CHECK(v[3] == 0.0);
}

TEST_CASE("eta(xi_w) = D and eta_w(xi_w) = 1") {
  std::mt19937_64 rng(5);
  double worst_d = 0.0, worst_one = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 3;
    const Weight w = random_weight(n, rng);
    const SpherePoint p = random_sphere_point(n, i);
    double d = 0.0;
    for (int k = 0; k <= n; ++k) d += w[k] * p.radius2(k);
    const Vec eta = -(complex_structure(n) * p.ambient());
    const Vec xi = reeb_field(w, p).v;
    worst_d = std::max(worst_d, std::abs(eta.dot(xi) - d));
    worst_one = std::max(worst_one, std::abs(contact_form(w, p).dot(xi) - 1.0));
    CHECK(std::abs(xi.dot(p.ambient())) < 1e-14);
  }
  CHECK(worst_d < 1e-12);
  CHECK(worst_one < 1e-12);
}

TEST_CASE("contact form and Phi at special weights") {
  const SpherePoint p = random_sphere_point(1, 9);
  const Weight ones({1.0, 1.0});
  const Vec eta = -(complex_structure(1) * p.ambient());
  CHECK((contact_form(ones, p) - eta).norm() < 1e-15);
  const std::vector<double> r{1.0, 0.0};
  const SpherePoint q = SpherePoint::from_radii(r);
  CHECK((contact_form(Weight({1.0, 2.0}), q) + complex_structure(1) * q.ambient()).norm() < 1e-15);
  // Phi_w for w = (1, ..., 1) is J on the horizontal space and 0 on xi
  const Mat phi = phi_tensor(ones, p);
  const Mat J = complex_structure(1);
  const Vec xi = reeb_field(ones, p).v;
  CHECK((phi * xi).norm() < 1e-15);
  const Mat P = tangent_projector(p);
  const Vec h = P * Vec::LinSpaced(4, 0.2, 1.1);
  const Vec horiz = h - eta.dot(h) * xi;
  CHECK((phi * horiz - J * horiz).norm() < 1e-14);
}

TEST_CASE("round metric is the Euclidean restriction") {
  for (int n : {1, 2, 3}) {
    std::vector<double> ones(n + 1, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const SpherePoint p = random_sphere_point(n, 100 + i);
      const ContactFrame f = sasaki_metric(Weight(ones), p);
      worst = std::max(worst, (f.g - tangent_projector(p)).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("frame identities at random weights") {
  std::mt19937_64 rng(11);
  double worst = 0.0, density = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 3;
    const Weight w = random_weight(n, rng);
    const SpherePoint p = random_sphere_point(n, 500 + i);
    const ContactFrame f = sasaki_metric(w, p);
    const FrameResiduals r = check_frame(f);
    worst = std::max(worst, r.worst());
    CHECK(r.min_eigenvalue > 0.0);
    double d = 0.0;
    for (int k = 0; k <= n; ++k) d += w[k] * p.radius2(k);
    density = std::max(density, std::abs(volume_density(f) - std::pow(d, -(n + 1))));
  }
  CHECK(worst < 1e-10);
  CHECK(density < 1e-10);
}

TEST_CASE("metric reconstruction from the structure") {
  const Weight w({1.0, 2.5, 0.7});
  const SpherePoint p = random_sphere_point(2, 1);
  const ContactFrame f = sasaki_metric(w, p);
  CHECK((metric_from_structure(f.p, f.eta, f.phi, f.deta) - f.g).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("homothety") {
  const Weight w({1.0, 2.0});
  const SpherePoint p = random_sphere_point(1, 2);
  const ContactFrame f = sasaki_metric(w, p);
  const ContactFrame g1 = homothety_frame(w, 1.0, p);
  CHECK((g1.g - f.g).norm() == 0.0);
  CHECK((g1.eta - f.eta).norm() == 0.0);
  CHECK_THROWS_AS(homothety_frame(w, 0.0, p), std::invalid_argument);
  CHECK_THROWS_AS(homothety_frame(w, -1.0, p), std::invalid_argument);
  for (double a : {0.5, 3.0}) {
    const ContactFrame fa = homothety_frame(w, a, p);
    CHECK(check_frame(fa).worst() < 1e-10);
    CHECK(std::abs(volume_density(fa) - a * a * volume_density(f)) < 1e-12);
    CHECK((fa.xi - f.xi / a).norm() < 1e-14);
    const Mat expect = a * f.g + (a * a - a) * f.eta * f.eta.transpose();
    CHECK((fa.g - expect).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("scaling the weight is a homothety") {
  // c w has Reeb field c xi_w, which is the homothety with factor 1 / c
  const Weight w({1.0, 3.0, 2.0});
  const SpherePoint p = random_sphere_point(2, 8);
  for (double c : {0.5, 2.0, 7.0}) {
    const ContactFrame a = sasaki_metric(w.scaled(c), p);
    const ContactFrame b = homothety_frame(w, 1.0 / c, p);
    CHECK((a.g - b.g).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((a.eta - b.eta).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("Sasaki cone membership") {
  CHECK(is_positive_reeb(std::vector<double>{1.0, 2.0}));
  CHECK_FALSE(is_positive_reeb(std::vector<double>{1.0, 0.0}));
  CHECK_FALSE(is_positive_reeb(std::vector<double>{1.0, -1.0}));
  CHECK_FALSE(is_positive_reeb(std::vector<double>{1.0, INFINITY}));
  CHECK_THROWS_AS(sasaki_metric(Weight({1.0, 2.0}), random_sphere_point(2, 0)), std::invalid_argument);
}

}
