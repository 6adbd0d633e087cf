#pragma once

// Integration against the Sasakian volume measure of g_w on S^{2n+1}.
//
// Two facts carry everything here:
//   d mu_{g_w} = D^{-(n+1)} d mu_round, D = sum_k w_k |z_k|^2
//     (eta_w = eta / D and d(eta_w) = d(eta)/D on ker eta, so
//      eta_w ^ d(eta_w)^n = D^{-(n+1)} eta ^ d(eta)^n);
//   int_S F(r) d mu_round = 2 pi^{n+1} int_{Delta_n} F(r) dr
//     (the torus fibres over a point r of the simplex have total
//      measure (2 pi)^{n+1} prod(1/2) dr in the radii r_k = |z_k|^2).

#include "sasaki/core.hpp"

#include <cstdint>
#include <functional>

namespace sasaki {

class QuadratureError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

struct QuadratureSpec {
  enum class Method { simplex_gauss, sphere_mc };
  Method method = Method::simplex_gauss;
  // Gauss nodes per axis, or the sample count for sphere_mc.
  long order = 64;
  std::uint64_t seed = 0;

  static QuadratureSpec gauss(long order) { return {Method::simplex_gauss, order, 0}; }
  static QuadratureSpec mc(long samples, std::uint64_t seed) {
    return {Method::sphere_mc, samples, seed};
  }
  // order >= 2; samples >= 1000 for sphere_mc.
  void validate() const;
};

struct GaussRule {
  Vec nodes;    // on (0, 1)
  Vec weights;  // sum to 1
};

// Gauss-Legendre rule mapped to (0, 1); cached per order.
const GaussRule& gauss_legendre(int order);

// Deterministic pairwise (cascade) summation in index order.
double pairwise_sum(std::span<const double> values);

// Simplex integrand: r has n+1 entries summing to 1.
using SimplexFunction = std::function<double(const Vec& r)>;
using SphereFunction = std::function<double(const SpherePoint& p)>;

double round_sphere_volume(int n);  // 2 pi^{n+1} / n!

// int_S f(r(z)) d mu_{g_w} by tensorized Gauss-Legendre on the collapsed
// simplex. Throws QuadratureError if the integrand is non-finite at a node.
double integrate_invariant(const Weight& w, const SimplexFunction& f, const QuadratureSpec& spec);
// Same, against the measure 2 pi^{n+1} dr (no D factor); used by callers
// that carry their own density.
double integrate_simplex(int n, const SimplexFunction& f, int order);

struct McResult {
  double value = 0;
  double stderr_ = 0;
};

// Uniform sphere sampling with the weight D^{-(n+1)}; reproducible for a
// fixed (seed, samples) regardless of the thread count.
McResult integrate_mc(const Weight& w, const SphereFunction& f, const QuadratureSpec& spec);

struct VolumeReport {
  double closed = 0;
  double numeric = 0;
  double rel_err = 0;
};

double volume_closed(const Weight& w);
VolumeReport volume(const Weight& w, int order = 64);

// int over R_+^n in cone coordinates x = t theta (theta on the simplex), with
// t = u / (1 - u) radially; for n = 1 this is x = u / (1 - u).
double integrate_orthant(int n, const std::function<double(const Vec& x)>& f, int order);

}  // namespace sasaki
