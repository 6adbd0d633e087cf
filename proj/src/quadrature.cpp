#include "sasaki/quadrature.hpp"

#include "sasaki/parallel.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>

namespace sasaki {

namespace {

GaussRule compute_gauss(int order) {
  GaussRule rule{Vec(order), Vec(order)};
  for (int i = 0; i < order; ++i) {
    // Newton on P_order starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
    }
    // Ascending order on (0, 1).
    const int slot = order - 1 - i;
    rule.nodes[slot] = 0.5 * (1.0 + x);
    rule.weights[slot] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// Visits the tensor grid of `order`^dims points; idx enumerates in
// lexicographic order so reductions are reproducible.
std::vector<double> evaluate_grid(int dims, int order,
                                  const std::function<double(const Vec& u, double weight)>& term) {
  const GaussRule& g = gauss_legendre(order);
  std::size_t total = 1;
  for (int d = 0; d < dims; ++d) total *= static_cast<std::size_t>(order);
  std::vector<double> values(total);
  detail::parallel_for(total, [&](std::size_t idx) {
    Vec u(dims);
    double weight = 1.0;
    std::size_t rest = idx;
    for (int d = dims - 1; d >= 0; --d) {
      const auto k = static_cast<Eigen::Index>(rest % order);
      rest /= order;
      u[d] = g.nodes[k];
      weight *= g.weights[k];
    }
    values[idx] = term(u, weight);
  });
  return values;
}

double finite_or_throw(double v, const char* what) {
  if (!std::isfinite(v)) throw QuadratureError(what);
  return v;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (order < 2) throw std::invalid_argument("quadrature order must be >= 2");
  if (method == Method::sphere_mc && order < 1000)
    throw std::invalid_argument("Monte Carlo sample count must be >= 1000");
}

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("Gauss order must be >= 1");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss(order)).first;
  return it->second;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 16) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double round_sphere_volume(int n) {
  return 2.0 * std::pow(std::numbers::pi, n + 1) / std::tgamma(n + 1.0);
}

double integrate_simplex(int n, const SimplexFunction& f, int order) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (order < 2) throw std::invalid_argument("quadrature order must be >= 2");
  // Collapsed map: r_1 = u_1, r_k = (1 - r_1 - ... - r_{k-1}) u_k,
  // r_0 = remainder; Jacobian = prod_k (remaining mass before step k).
  const auto values = evaluate_grid(n, order, [&](const Vec& u, double weight) {
    Vec r(n + 1);
    double rest = 1.0, jac = 1.0;
    for (int k = 1; k <= n; ++k) {
      jac *= rest;
      r[k] = rest * u[k - 1];
      rest -= r[k];
    }
    r[0] = rest;
    return weight * jac * f(r);
  });
  const double v = 2.0 * std::pow(std::numbers::pi, n + 1) * pairwise_sum(values);
  return finite_or_throw(v, "non-finite integrand on the simplex (non-integrable singularity?)");
}

double integrate_invariant(const Weight& w, const SimplexFunction& f, const QuadratureSpec& spec) {
  spec.validate();
  const int n = w.n();
  if (spec.method == QuadratureSpec::Method::sphere_mc) {
    return integrate_mc(
               w,
               [&](const SpherePoint& p) {
                 const auto r = p.radii();
                 return f(Eigen::Map<const Vec>(r.data(), static_cast<Eigen::Index>(r.size())));
               },
               spec)
        .value;
  }
  return integrate_simplex(
      n,
      [&](const Vec& r) {
        double d = 0.0;
        for (int k = 0; k <= n; ++k) d += w[k] * r[k];
        return f(r) * std::pow(d, -(n + 1));
      },
      static_cast<int>(spec.order));
}

McResult integrate_mc(const Weight& w, const SphereFunction& f, const QuadratureSpec& spec) {
  if (spec.method != QuadratureSpec::Method::sphere_mc)
    throw std::invalid_argument("integrate_mc needs a sphere-mc spec");
  spec.validate();
  const int n = w.n();
  const int dim = 2 * n + 2;
  const auto samples = static_cast<std::size_t>(spec.order);
  std::vector<double> values(samples), squares(samples);
  constexpr std::size_t batch = 1 << 15;
  std::mt19937_64 gen(spec.seed);
  std::normal_distribution<double> normal;
  std::vector<Vec> points(std::min(batch, samples), Vec(dim));
  for (std::size_t start = 0; start < samples; start += batch) {
    const std::size_t count = std::min(batch, samples - start);
    // Draws stay sequential; only the evaluation is parallel.
    for (std::size_t i = 0; i < count; ++i) {
      for (int c = 0; c < dim; ++c) points[i][c] = normal(gen);
      points[i] /= points[i].norm();
    }
    detail::parallel_for(count, [&](std::size_t i) {
      const SpherePoint p(points[i]);
      double d = 0.0;
      for (int k = 0; k <= n; ++k) d += w[k] * p.radius2(k);
      const double v = f(p) * std::pow(d, -(n + 1));
      values[start + i] = v;
      squares[start + i] = v * v;
    });
  }
  const double vol = round_sphere_volume(n);
  const double mean = pairwise_sum(values) / samples;
  const double mean_sq = pairwise_sum(squares) / samples;
  const double var = std::max(0.0, mean_sq - mean * mean) * samples / (samples - 1.0);
  McResult out;
  out.value = finite_or_throw(vol * mean, "non-finite Monte Carlo estimate");
  out.stderr_ = vol * std::sqrt(var / samples);
  return out;
}

double volume_closed(const Weight& w) { return round_sphere_volume(w.n()) / w.product(); }

VolumeReport volume(const Weight& w, int order) {
  VolumeReport rep;
  rep.closed = volume_closed(w);
  rep.numeric = integrate_invariant(w, [](const Vec&) { return 1.0; }, QuadratureSpec::gauss(order));
  rep.rel_err = std::abs(rep.closed - rep.numeric) / rep.closed;
  return rep;
}

double integrate_orthant(int n, const std::function<double(const Vec& x)>& f, int order) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (order < 2) throw std::invalid_argument("quadrature order must be >= 2");
  // Cone coordinates x = t theta, theta on the simplex sum theta = 1, so
  // dx = t^{n-1} dt d theta. The radius is mapped by t = u / (1 - u); theta
  // uses the collapsed map. For n = 1 this is the plain axis map.
  const auto values = evaluate_grid(n, order, [&](const Vec& u, double weight) {
    const double one_minus = 1.0 - u[0];
    const double t = u[0] / one_minus;
    double jac = std::pow(t, n - 1) / (one_minus * one_minus);
    Vec x(n);
    double rest = 1.0;
    for (int k = 1; k < n; ++k) {
      jac *= rest;
      const double theta = rest * u[k];
      x[k] = t * theta;
      rest -= theta;
    }
    x[0] = t * rest;
    return weight * jac * f(x);
  });
  return finite_or_throw(pairwise_sum(values),
                         "non-finite transformed orthant integrand (integrand decays too slowly)");
}

}  // namespace sasaki
