#include "sasaki/curvature.hpp"
#include "sasaki/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace sasaki;
using std::numbers::pi;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre rule on (0, 1)") {
  const GaussRule& g = gauss_legendre(10);
  CHECK(std::abs(g.weights.sum() - 1.0) < 1e-15);
  double m = 0.0;
  for (int i = 0; i < 10; ++i) m += g.weights[i] * std::pow(g.nodes[i], 19);
  CHECK(std::abs(m - 1.0 / 20.0) < 1e-15);
  CHECK(&gauss_legendre(10) == &g);
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("invariant volumes") {
  const QuadratureSpec s = QuadratureSpec::gauss(64);
  const auto one = [](const Vec&) { return 1.0; };
  CHECK(std::abs(integrate_invariant(Weight({1.0, 1.0}), one, s) - 2 * pi * pi) < 1e-12);
  CHECK(std::abs(integrate_invariant(Weight({1.0, 2.0}), one, s) - pi * pi) < 1e-12);
  CHECK(std::abs(volume_closed(Weight({1.0, 1.0, 1.0})) - pi * pi * pi) < 1e-12);
  CHECK(std::abs(volume_closed(Weight({2.0, 2.0})) - pi * pi / 2) < 1e-13);
  CHECK(std::abs(volume_closed(Weight({1.0, 3.0})) - 2 * pi * pi / 3) < 1e-13);
  for (const Weight& w : {Weight({1.0, 1.0, 1.0}), Weight({2.0, 2.0}), Weight({1.0, 3.0}),
                          Weight({1.0, 2.0, 3.0, 4.0})}) {
    const VolumeReport v = volume(w);
    CHECK(v.rel_err < 1e-10);
  }
  CHECK(std::abs(round_sphere_volume(2) - pi * pi * pi) < 1e-13);
}

TEST_CASE("s - s0 integrates to zero") {
  const Weight w({1.0, 2.0, 5.0});
  const int n = w.n();
  const double v = integrate_invariant(
      w,
      [&](const Vec& r) {
        const SpherePoint p = SpherePoint::from_radii(std::vector<double>(r.data(), r.data() + r.size()));
        return scalar_closed(w, p).s_minus_s0;
      },
      QuadratureSpec::gauss(48));
  CHECK(std::abs(v) / volume_closed(w) < 1e-8);
  (void)n;
}

TEST_CASE("Monte Carlo") {
  const Weight w({1.0, 1.0});
  const auto one = [](const SpherePoint&) { return 1.0; };
  const auto f = [](const SpherePoint& p) { return 1.0 + p.radius2(0); };
  const McResult a = integrate_mc(w, f, QuadratureSpec::mc(1000000, 7));
  const double exact = 2 * pi * pi * 1.5;
  CHECK(a.stderr_ > 0.0);
  CHECK(std::abs(a.value - exact) < 4.0 * a.stderr_);
  const McResult b = integrate_mc(w, f, QuadratureSpec::mc(1000000, 7));
  CHECK(a.value == b.value);
  CHECK(a.stderr_ == b.stderr_);
  const McResult c = integrate_mc(w, one, QuadratureSpec::mc(1000000, 7));
  CHECK(std::abs(c.value - 2 * pi * pi) < 1e-12);
  // weighted volume through the density
  const McResult d = integrate_mc(Weight({1.0, 2.0}), one, QuadratureSpec::mc(1000000, 3));
  CHECK(std::abs(d.value - pi * pi) < 4.0 * d.stderr_);
  CHECK_THROWS_AS(integrate_mc(w, one, QuadratureSpec::mc(10, 0)), std::invalid_argument);
  CHECK_THROWS_AS(integrate_mc(w, one, QuadratureSpec::gauss(8)), std::invalid_argument);
}

TEST_CASE("orthant integrals") {
  const double e1 = integrate_orthant(1, [](const Vec& x) { return std::exp(-x.sum()); }, 64);
  CHECK(std::abs(e1 - 1.0) < 1e-10);
  const double e2 = integrate_orthant(2, [](const Vec& x) { return std::exp(-x.sum()); }, 64);
  CHECK(std::abs(e2 - 1.0) < 1e-10);
  const double inner = integrate_orthant(
      1, [](const Vec& x) { return (1.0 - 2.0 * x[0]) / std::pow(1.0 + 2.0 * x[0], 4); }, 64);
  CHECK(std::abs(inner - 1.0 / 12.0) < 1e-10);
  // int_{R_+^2} (1 + x + y)^{-4} = 1/6
  const double cone = integrate_orthant(2, [](const Vec& x) { return std::pow(1.0 + x.sum(), -4); }, 64);
  CHECK(std::abs(cone - 1.0 / 6.0) < 1e-12);
  CHECK_THROWS_AS(integrate_orthant(1, [](const Vec& x) { return std::exp(x[0] * x[0]); }, 16), QuadratureError);
}

TEST_CASE("permutation covariance") {
  const auto f = [](const Vec& r) { return r[0] * r[0] + 3.0 * r[1] - r[2] * r[0]; };
  const auto fp = [](const Vec& r) { return r[2] * r[2] + 3.0 * r[0] - r[1] * r[2]; };
  const double a = integrate_invariant(Weight({1.0, 2.0, 4.0}), f, QuadratureSpec::gauss(40));
  const double b = integrate_invariant(Weight({2.0, 4.0, 1.0}), fp, QuadratureSpec::gauss(40));
  CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
}

TEST_CASE("convergence in the order") {
  const Weight w({1.0, 7.0, 2.0});
  const auto f = [](const Vec& r) { return std::exp(r[0]) * std::cos(r[1]); };
  const double ref = integrate_invariant(w, f, QuadratureSpec::gauss(96));
  const double e8 = std::abs(integrate_invariant(w, f, QuadratureSpec::gauss(8)) - ref);
  const double e16 = std::abs(integrate_invariant(w, f, QuadratureSpec::gauss(16)) - ref);
  CHECK(e16 < 1e-3 * e8 + 1e-14);
}

TEST_CASE("QuadratureSpec validation and non-finite integrands") {
  CHECK_THROWS_AS(QuadratureSpec::gauss(1).validate(), std::invalid_argument);
  CHECK_NOTHROW(QuadratureSpec::gauss(2).validate());
  CHECK_THROWS_AS(integrate_invariant(Weight({1.0, 1.0}), [](const Vec&) { return NAN; },
                                      QuadratureSpec::gauss(8)),
                  QuadratureError);
}

TEST_CASE("pairwise summation") {
  std::vector<double> v(1 << 20, 0.1);
  CHECK(std::abs(pairwise_sum(v) - 0.1 * v.size()) < 1e-8);
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

}
