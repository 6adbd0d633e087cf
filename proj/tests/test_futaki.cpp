#include "sasaki/futaki.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace sasaki;
using std::numbers::pi;

TEST_SUITE("futaki") {

TEST_CASE("closed-form examples") {
  CHECK(std::abs(futaki_closed(Weight({1.0, 2.0}), FutakiInput({1.0, 0.0})) + 2 * pi * pi) < 1e-12);
  CHECK(std::abs(futaki_closed(Weight({1.0, 2.0}), FutakiInput({0.0, 1.0})) - pi * pi) < 1e-12);
  CHECK(std::abs(futaki_closed(Weight({1.0, 1.0}), FutakiInput({1.0, 0.0}))) < 1e-8);
  CHECK(futaki_closed(Weight({1.0, 1.0, 1.0}), FutakiInput({0.3, -2.0, 5.0})) == 0.0);
  const std::vector<double> a = a_coefficients(Weight({1.0, 2.0}));
  CHECK(a.size() == 2);
  CHECK(std::abs(a[0] + a[1]) < 1e-15);
}

TEST_CASE("three methods agree") {
  const QuadratureSpec s = QuadratureSpec::gauss(64);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.5, 3.0), b(-1.0, 1.0);
  for (int i = 0; i < 6; ++i) {
    const int n = 1 + i % 3;
    std::vector<double> e(n + 1), c(n + 1);
    for (double& v : e) v = u(rng);
    for (double& v : c) v = b(rng);
    const Weight w(e);
    const FutakiInput in(c);
    const double ref = futaki_closed(w, in);
    for (FutakiMethod m : {FutakiMethod::closed, FutakiMethod::chart, FutakiMethod::sphere}) {
      const double v = futaki_numeric(w, in, m, s);
      CHECK(std::abs(v - ref) < 1e-8 * (1.0 + std::abs(ref)));
    }
  }
}

TEST_CASE("chart integral on a weight grid") {
  const QuadratureSpec s = QuadratureSpec::gauss(64);
  const std::vector<double> grid{0.5, 1.0, 1.5, 2.0, 3.0};
  for (double w0 : grid)
    for (double w1 : grid)
      for (int j = 0; j < 2; ++j) {
        const Weight w({w0, w1});
        const FutakiInput b(j == 0 ? std::vector<double>{1.0, 0.0} : std::vector<double>{0.0, 1.0});
        const double ref = futaki_closed(w, b);
        const double chart = futaki_numeric(w, b, FutakiMethod::chart, s);
        const double sphere = futaki_numeric(w, b, FutakiMethod::sphere, s);
        const double tol = ref == 0.0 ? 1e-8 : 1e-4 * std::abs(ref);
        CHECK(std::abs(chart - ref) < tol);
        CHECK(std::abs(sphere - ref) < tol);
      }
  CHECK(std::abs(futaki_numeric(Weight({1.0, 2.0}), FutakiInput({0.0, 1.0}), FutakiMethod::chart, s) -
                 pi * pi) < 1e-10);
}

TEST_CASE("linearity, permutation and the Reeb direction") {
  const Weight w({1.0, 2.0, 4.0});
  const FutakiInput b1({1.0, 0.0, -1.0}), b2({0.5, 2.0, 0.0}), sum({1.5, 2.0, -1.0});
  CHECK(std::abs(futaki_closed(w, sum) - futaki_closed(w, b1) - futaki_closed(w, b2)) < 1e-12);
  const Weight wp({4.0, 1.0, 2.0});
  const FutakiInput b1p({-1.0, 1.0, 0.0});
  CHECK(std::abs(futaki_closed(wp, b1p) - futaki_closed(w, b1)) < 1e-12);
  for (const Weight& v : {Weight({1.0, 2.0}), Weight({1.0, 2.0, 4.0}), Weight({3.0, 0.5, 1.0, 2.0})}) {
    const std::vector<double> e(v.entries().begin(), v.entries().end());
    CHECK(std::abs(futaki_closed(v, FutakiInput(e))) < 1e-10);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(futaki_closed(Weight({1.0, 2.0}), FutakiInput({1.0})), std::invalid_argument);
  CHECK_THROWS_AS(FutakiInput({NAN, 1.0}), std::invalid_argument);
  CHECK(parse_futaki_method("chart") == FutakiMethod::chart);
  CHECK(to_string(FutakiMethod::sphere) == "sphere");
  CHECK_THROWS_AS(parse_futaki_method("bogus"), std::invalid_argument);
}

TEST_CASE("classification") {
  const ClassifyReport round = classify(Weight({1.0, 1.0, 1.0}), 1.0);
  CHECK(round.csc);
  CHECK(round.einstein);
  CHECK(round.einstein_residual >= 0.0);
  CHECK(round.einstein_residual < 5e-4);

  for (double a : {0.5, 1.0, 2.0}) {
    const ClassifyReport r = classify(Weight({1.0, 2.0}), a, false);
    CHECK_FALSE(r.csc);
    CHECK_FALSE(r.einstein);
    CHECK(r.futaki_norm > 1.0);
  }

  const ClassifyReport folded = classify(Weight({2.0, 2.0}), 1.0);
  CHECK(folded.csc);
  CHECK_FALSE(folded.einstein);
  CHECK(std::abs(folded.lambda - 6.0) < 1e-12);
  CHECK(std::abs(folded.folded_scale - 0.5) < 1e-15);

  // the folded sphere becomes Einstein at a = l
  const ClassifyReport rescaled = classify(Weight({2.0, 2.0}), 2.0);
  CHECK(rescaled.einstein);
}

}
