#pragma once

// Foundational types for weighted Sasakian structures on the unit sphere
// S^{2n+1} in C^{n+1}.
//
// Ambient coordinates are interleaved: (x_0, y_0, x_1, y_1, ..., x_n, y_n)
// with z_k = x_k + i y_k. Every tensor in this library is stored as an
// ambient (2n+2)-dimensional object; graph charts only exist inside the
// finite-difference kernels.

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sasaki {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Failures of a numerical computation (as opposed to bad arguments, which
// are reported with std::invalid_argument).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChartError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

// Sign and normalization choices that the contact-metric formulas leave
// implicit. Fixed once; the round-sphere calibration test pins them.
struct ConventionLedger {
  // g(X, Y) = kappa * d(eta)(X, Phi Y) + eta(X) eta(Y)
  static constexpr double kappa = -0.5;
  // Phi restricted to the contact distribution is j_orientation * i.
  static constexpr int j_orientation = +1;
  // d(alpha)(X, Y) = X alpha(Y) - Y alpha(X) - alpha([X, Y]).
  static constexpr const char* d_convention = "full";
};

// Positive weight vector w in R_+^{n+1}; a point of the Sasaki cone.
class Weight {
 public:
  explicit Weight(std::vector<double> entries);

  int n() const { return static_cast<int>(entries_.size()) - 1; }
  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t k) const { return entries_[k]; }
  double total() const;
  double product() const;
  std::span<const double> entries() const { return entries_; }
  Weight scaled(double c) const;

 private:
  std::vector<double> entries_;
};

// Unit vector of R^{2n+2} = C^{n+1}.
class SpherePoint {
 public:
  // Throws std::invalid_argument unless |v| = 1 within 1e-12.
  explicit SpherePoint(Vec ambient);
  // Normalizes v; v must be nonzero.
  static SpherePoint normalized(const Vec& v);
  // Point with the given radii r_k = |z_k|^2 and angles.
  static SpherePoint from_radii(std::span<const double> r,
                                std::span<const double> angles = {});

  int n() const { return static_cast<int>(ambient_.size()) / 2 - 1; }
  const Vec& ambient() const { return ambient_; }
  double x(int k) const { return ambient_[2 * k]; }
  double y(int k) const { return ambient_[2 * k + 1]; }
  double radius2(int k) const { return x(k) * x(k) + y(k) * y(k); }
  std::vector<double> radii() const;

 private:
  Vec ambient_;
};

struct TangentVector {
  Vec v;
};

// Graph chart: ambient coordinate `index` is solved from the unit
// constraint with sign `sign`; `u` holds the remaining 2n+1 coordinates.
struct ChartCoords {
  int index = 0;
  double sign = 1.0;
  Vec u;
};

SpherePoint random_sphere_point(int n, std::uint64_t seed);

ChartCoords graph_chart(const SpherePoint& p);
SpherePoint from_chart(const ChartCoords& chart);
// Point for chart coordinates u in the chart of `chart` (index and sign).
SpherePoint from_chart(const ChartCoords& chart, const Vec& u);
// Columns are d p / d u_j, a basis of the tangent space at the point.
Mat chart_basis(const ChartCoords& chart, const Vec& u);
// Chart components of an ambient tangent vector (drops the solved slot).
Vec chart_components(const ChartCoords& chart, const Vec& v);

// v - <v, p> p
Vec tangent_project(const SpherePoint& p, const Vec& v);
// I - p p^T
Mat tangent_projector(const SpherePoint& p);
// Orthonormal basis of T_p S^{2n+1} as columns.
Mat tangent_frame(const SpherePoint& p);

// Complex structure of C^{n+1} in interleaved coordinates: J e_x = e_y.
Mat complex_structure(int n);

// Worker threads used by node loops in quadrature and the extremal engine.
// Reductions never depend on this value.
void set_worker_threads(int threads);
int worker_threads();

}  // namespace sasaki
