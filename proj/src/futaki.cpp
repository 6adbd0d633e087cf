#include "sasaki/futaki.hpp"

#include "sasaki/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sasaki {

namespace {

void require_match(const Weight& w, const FutakiInput& b) {
  if (b.b.size() != w.size())
    throw std::invalid_argument("b must have n+1 entries to match the weight");
}

}  // namespace

FutakiInput::FutakiInput(std::vector<double> coeffs) : b(std::move(coeffs)) {
  for (double v : b)
    if (!std::isfinite(v)) throw std::invalid_argument("b entries must be finite");
}

FutakiMethod parse_futaki_method(std::string_view name) {
  if (name == "closed") return FutakiMethod::closed;
  if (name == "chart") return FutakiMethod::chart;
  if (name == "sphere") return FutakiMethod::sphere;
  throw std::invalid_argument("unknown Futaki method: " + std::string(name));
}

std::string_view to_string(FutakiMethod m) {
  switch (m) {
    case FutakiMethod::closed: return "closed";
    case FutakiMethod::chart: return "chart";
    case FutakiMethod::sphere: return "sphere";
  }
  return "?";
}

std::vector<double> a_coefficients(const Weight& w) {
  const double total = w.total();
  std::vector<double> a(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) a[j] = total - (w.n() + 1) * w[j];
  return a;
}

double futaki_closed(const Weight& w, const FutakiInput& b) {
  require_match(w, b);
  const int n = w.n();
  const auto a = a_coefficients(w);
  double diag = 0.0, sum_a = 0.0;
  for (int i = 0; i <= n; ++i) sum_a += a[i];
  double off = 0.0;
  for (int i = 0; i <= n; ++i) {
    diag += b.b[i] / w[i] * a[i];
    off += b.b[i] / w[i] * (sum_a - a[i]);
  }
  const double pref = -16.0 * std::pow(std::numbers::pi, n + 1) / std::tgamma(n + 2.0);
  return pref * (diag + 0.5 * off) / w.product();
}

double futaki_numeric(const Weight& w, const FutakiInput& b, FutakiMethod method,
                      const QuadratureSpec& spec) {
  require_match(w, b);
  spec.validate();
  const int n = w.n();
  switch (method) {
    case FutakiMethod::closed:
      return futaki_closed(w, b);
    case FutakiMethod::chart: {
      const auto a = a_coefficients(w);
      // x_j = (w_0 / w_j) y_j makes the denominator w_0 (1 + sum y_j).
      double jac = 1.0;
      for (int j = 1; j <= n; ++j) jac *= w[0] / w[j];
      const double integral = integrate_orthant(
          n,
          [&](const Vec& y) {
            double lin_b = b.b[0], lin_a = a[0], den = 1.0;
            for (int j = 1; j <= n; ++j) {
              lin_b += b.b[j] * w[0] / w[j] * y[j - 1];
              lin_a += a[j] * y[j - 1];
              den += y[j - 1];
            }
            return lin_b * lin_a / std::pow(den, n + 3);
          },
          static_cast<int>(spec.order));
      return -8.0 * (n + 2) * std::pow(std::numbers::pi, n + 1) * integral * jac * w[0] /
             std::pow(w[0], n + 3);
    }
    case FutakiMethod::sphere: {
      const double total = w.total();
      return -integrate_invariant(
          w,
          [&](const Vec& r) {
            double d = 0.0, fb = 0.0, dev = 0.0;
            for (int j = 0; j <= n; ++j) {
              d += w[j] * r[j];
              fb += b.b[j] * r[j];
              dev += w[j] * (total - (n + 1) * w[j]) * r[j];
            }
            return (fb / d) * 4.0 * (n + 2) * dev / d;
          },
          spec);
    }
  }
  throw std::invalid_argument("unknown Futaki method");
}

ClassifyReport classify(const Weight& w, double a, bool fd_confirm) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("homothety factor must be > 0");
  const int n = w.n();
  ClassifyReport rep;
  rep.A = a_coefficients(w);
  const double total = w.total();
  double worst = 0.0;
  for (double v : rep.A) worst = std::max(worst, std::abs(v));
  rep.csc = worst < 1e-10 * total;
  for (int j = 0; j <= n; ++j) {
    std::vector<double> e(w.size(), 0.0);
    e[j] = 1.0;
    rep.futaki_norm = std::max(rep.futaki_norm, std::abs(futaki_closed(w, FutakiInput(e))));
  }
  if (rep.csc) {
    // w = l (1, ..., 1) with a homothety a is the round structure scaled by a / l.
    const double l = w[0];
    rep.folded_scale = a / l;
    rep.lambda = 2.0 * (n + 1) / rep.folded_scale - 2.0;
    rep.einstein = std::abs(rep.folded_scale - 1.0) < 1e-10;
    if (fd_confirm) {
      const SpherePoint p = random_sphere_point(n, 0);
      rep.einstein_residual = einstein_residuals(w, a, p).einstein_res;
      rep.einstein = rep.einstein && rep.einstein_residual < 5e-4;
    }
  }
  return rep;
}

}  // namespace sasaki
