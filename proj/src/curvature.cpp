#include "sasaki/curvature.hpp"

#include <cmath>
#include <vector>

namespace sasaki {

namespace {

using Christoffel = std::vector<Mat>;  // gamma[a](b, c) = Gamma^a_{bc}

void validate_stencil(const ChartCoords& chart, double h) {
  if (!(h >= 1e-5 && h <= 1e-2))
    throw std::invalid_argument("finite-difference step must lie in [1e-5, 1e-2]");
  const double reach = chart.u.norm() + 4.0 * h;
  if (1.0 - reach * reach < 1e-2)
    throw ChartError("stencil leaves the graph-chart ball");
}

Mat inverse_checked(const Mat& g) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g + g.transpose()));
  const auto& ev = es.eigenvalues();
  const double lo = ev.cwiseAbs().minCoeff();
  const double hi = ev.cwiseAbs().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e12)
    throw SingularMetricError("metric matrix is singular (condition number > 1e12)");
  return g.inverse();
}

Christoffel christoffel(const ChartMetricField& field, const Vec& u, double h) {
  const Eigen::Index m = u.size();
  const Mat ginv = inverse_checked(field(u));
  std::vector<Mat> dg(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    Vec e = Vec::Zero(m);
    e[k] = h;
    dg[k] = (field(u + e) - field(u - e)) / (2.0 * h);
  }
  Christoffel gamma(m, Mat::Zero(m, m));
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      for (Eigen::Index c = b; c < m; ++c) {
        double acc = 0.0;
        for (Eigen::Index d = 0; d < m; ++d)
          acc += ginv(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
        gamma[a](b, c) = gamma[a](c, b) = 0.5 * acc;
      }
  return gamma;
}

Mat ricci_raw(const ChartMetricField& field, const Vec& u, double h) {
  const Eigen::Index m = u.size();
  const Christoffel g0 = christoffel(field, u, h);
  // dgamma[k][a](b, c) = d_k Gamma^a_{bc}
  std::vector<Christoffel> dgamma(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    Vec e = Vec::Zero(m);
    e[k] = h;
    const Christoffel plus = christoffel(field, u + e, h);
    const Christoffel minus = christoffel(field, u - e, h);
    dgamma[k].resize(m);
    for (Eigen::Index a = 0; a < m; ++a) dgamma[k][a] = (plus[a] - minus[a]) / (2.0 * h);
  }
  // R_bc = d_a G^a_bc - d_c G^a_ba + G^a_ad G^d_bc - G^a_cd G^d_ba
  Mat ric = Mat::Zero(m, m);
  for (Eigen::Index b = 0; b < m; ++b)
    for (Eigen::Index c = 0; c < m; ++c) {
      double acc = 0.0;
      for (Eigen::Index a = 0; a < m; ++a) {
        acc += dgamma[a][a](b, c) - dgamma[c][a](b, a);
        for (Eigen::Index d = 0; d < m; ++d)
          acc += g0[a](a, d) * g0[d](b, c) - g0[a](c, d) * g0[d](b, a);
      }
      ric(b, c) = acc;
    }
  return ric;
}

}  // namespace

ChartMetricField chart_metric_field(AmbientMetricField ambient, const ChartCoords& chart) {
  return [ambient = std::move(ambient), chart](const Vec& u) -> Mat {
    const SpherePoint q = from_chart(chart, u);
    const Mat e = chart_basis(chart, u);
    return e.transpose() * ambient(q) * e;
  };
}

CurvatureData curvature_fd(const ChartMetricField& field, const ChartCoords& chart, double h,
                           FdOptions opts) {
  validate_stencil(chart, h);
  CurvatureData out;
  out.chart = chart;
  out.h = h;
  out.g = field(chart.u);
  const Mat ginv = inverse_checked(out.g);
  Mat raw = ricci_raw(field, chart.u, h);
  if (opts.richardson) raw = (4.0 * ricci_raw(field, chart.u, 0.5 * h) - raw) / 3.0;
  out.asymmetry = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  out.ric = 0.5 * (raw + raw.transpose());
  out.s = (ginv.cwiseProduct(out.ric)).sum();
  return out;
}

CurvatureData curvature_fd(const AmbientMetricField& field, const SpherePoint& at, double h,
                           FdOptions opts) {
  const ChartCoords chart = graph_chart(at);
  return curvature_fd(chart_metric_field(field, chart), chart, h, opts);
}

double laplacian_fd(const ChartMetricField& field, const std::function<double(const Vec&)>& f,
                    const ChartCoords& chart, double h) {
  validate_stencil(chart, h);
  const Eigen::Index m = chart.u.size();
  // V^i = sqrt(det g) g^{ij} d_j f
  auto flux = [&](const Vec& u) {
    const Mat g = field(u);
    Vec df(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      Vec e = Vec::Zero(m);
      e[j] = h;
      df[j] = (f(u + e) - f(u - e)) / (2.0 * h);
    }
    return Vec(std::sqrt(g.determinant()) * inverse_checked(g) * df);
  };
  double div = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    Vec e = Vec::Zero(m);
    e[i] = h;
    div += (flux(chart.u + e)[i] - flux(chart.u - e)[i]) / (2.0 * h);
  }
  return -div / std::sqrt(field(chart.u).determinant());
}

ScalarReport scalar_closed(const Weight& w, const SpherePoint& p) { return scalar_closed(w, 1.0, p); }

ScalarReport scalar_closed(const Weight& w, double a, const SpherePoint& p) {
  if (static_cast<int>(w.size()) != p.n() + 1)
    throw std::invalid_argument("weight length does not match the sphere dimension");
  if (!(a > 0.0)) throw std::invalid_argument("homothety factor must be > 0");
  const int n = w.n();
  const double total = w.total();
  double d = 0.0, num_t = 0.0, num_dev = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double r = p.radius2(j);
    d += w[j] * r;
    num_t += w[j] * (2.0 * total - (n + 2) * w[j]) * r;
    num_dev += w[j] * (total - (n + 1) * w[j]) * r;
  }
  ScalarReport rep;
  rep.s_transverse = 4.0 * (n + 1) * num_t / d / a;
  rep.s = rep.s_transverse - 2.0 * n;
  rep.s0 = (mean_scalar(w) + 2.0 * n) / a - 2.0 * n;
  rep.s_minus_s0 = 4.0 * (n + 2) * num_dev / d / a;
  return rep;
}

double mean_scalar(const Weight& w) {
  const int n = w.n();
  return 2.0 * n * (2.0 * w.total() - 1.0);
}

EinsteinResiduals einstein_residuals(const Weight& w, double a, const SpherePoint& p, double h) {
  const int n = w.n();
  EinsteinResiduals out;
  out.curvature = curvature_fd(
      [&](const SpherePoint& q) { return homothety_frame(w, a, q).g; }, p, h);
  const CurvatureData& cd = out.curvature;
  const ContactFrame f = homothety_frame(w, a, p);
  const Mat e = chart_basis(cd.chart, cd.chart.u);
  const Vec eta = e.transpose() * f.eta;
  const Vec xi = chart_components(cd.chart, f.xi);
  const Mat etaeta = eta * eta.transpose();

  out.einstein_res = (cd.ric - 2.0 * n * cd.g).cwiseAbs().maxCoeff();
  out.reeb_res = (cd.ric * xi - 2.0 * n * eta).cwiseAbs().maxCoeff();

  // Ric - 2n eta eta = lambda (g - eta eta), least squares in the chart basis.
  const Mat basis = cd.g - etaeta;
  const Mat target = cd.ric - 2.0 * n * etaeta;
  out.lambda = basis.cwiseProduct(target).sum() / basis.squaredNorm();
  out.nu = 2.0 * n - out.lambda;
  out.eta_einstein_res = (cd.ric - out.lambda * cd.g - out.nu * etaeta).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace sasaki
