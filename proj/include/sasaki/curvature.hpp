#pragma once

// Finite-difference curvature of metric fields on S^{2n+1} (evaluated in
// the graph chart of the evaluation point) and the closed-form scalar
// curvature of the weighted structures.

#include "sasaki/core.hpp"
#include "sasaki/structures.hpp"

#include <functional>

namespace sasaki {

class SingularMetricError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

// Chart coordinates -> chart metric matrix ((2n+1) x (2n+1)).
using ChartMetricField = std::function<Mat(const Vec& u)>;
// Sphere point -> ambient metric matrix (restricted to T_p).
using AmbientMetricField = std::function<Mat(const SpherePoint& p)>;

struct CurvatureData {
  Mat ric;     // Ricci tensor in chart coordinates, symmetrized
  Mat g;       // chart metric at the evaluation point
  double s = 0;
  double asymmetry = 0;  // max |R - R^T| before symmetrization
  ChartCoords chart;
  double h = 0;
};

struct FdOptions {
  bool richardson = false;  // combine steps h and h/2: (4 R(h/2) - R(h)) / 3
};

inline constexpr double kDefaultFdStep = 1e-3;

ChartMetricField chart_metric_field(AmbientMetricField ambient, const ChartCoords& chart);

CurvatureData curvature_fd(const ChartMetricField& field, const ChartCoords& chart, double h,
                           FdOptions opts = {});
CurvatureData curvature_fd(const AmbientMetricField& field, const SpherePoint& at, double h,
                           FdOptions opts = {});

// Positive Laplacian -div grad f of a chart function at chart.u.
double laplacian_fd(const ChartMetricField& field, const std::function<double(const Vec&)>& f,
                    const ChartCoords& chart, double h);

struct ScalarReport {
  double s_transverse = 0;  // s^T
  double s = 0;             // s^T - 2n
  double s0 = 0;            // volume mean of s
  double s_minus_s0 = 0;
};

ScalarReport scalar_closed(const Weight& w, const SpherePoint& p);
// Scalar curvature of the homothety-scaled structure: (s^T / a) - 2n.
ScalarReport scalar_closed(const Weight& w, double a, const SpherePoint& p);
double mean_scalar(const Weight& w);

struct EinsteinResiduals {
  double einstein_res = 0;  // max |Ric - 2n g|
  double lambda = 0;        // eta-Einstein fit with lambda + nu = 2n
  double nu = 0;
  double eta_einstein_res = 0;
  double reeb_res = 0;      // max_i |Ric(e_i, xi) - 2n eta(e_i)|
  CurvatureData curvature;
};

EinsteinResiduals einstein_residuals(const Weight& w, double a, const SpherePoint& p,
                                     double h = kDefaultFdStep);

}  // namespace sasaki
