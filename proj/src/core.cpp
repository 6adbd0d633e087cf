#include "sasaki/core.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

namespace sasaki {

namespace {

std::atomic<int> g_threads{0};

constexpr double kUnitTol = 1e-12;

}  // namespace

Weight::Weight(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.size() < 2)
    throw std::invalid_argument("weight needs n+1 >= 2 entries");
  for (double v : entries_)
    if (!std::isfinite(v) || v <= 0.0)
      throw std::invalid_argument("weight entries must be finite and > 0");
}

double Weight::total() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0.0);
}

double Weight::product() const {
  return std::accumulate(entries_.begin(), entries_.end(), 1.0,
                         std::multiplies<>());
}

Weight Weight::scaled(double c) const {
  std::vector<double> e = entries_;
  for (double& v : e) v *= c;
  return Weight(std::move(e));
}

SpherePoint::SpherePoint(Vec ambient) : ambient_(std::move(ambient)) {
  if (ambient_.size() < 4 || ambient_.size() % 2 != 0)
    throw std::invalid_argument("sphere point needs 2n+2 >= 4 coordinates");
  if (std::abs(ambient_.norm() - 1.0) > kUnitTol)
    throw std::invalid_argument("sphere point is not of unit norm");
}

SpherePoint SpherePoint::normalized(const Vec& v) {
  const double nrm = v.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  return SpherePoint(v / nrm);
}

SpherePoint SpherePoint::from_radii(std::span<const double> r,
                                    std::span<const double> angles) {
  Vec v(2 * r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] < 0.0) throw std::invalid_argument("negative radius");
    const double a = k < angles.size() ? angles[k] : 0.0;
    const double rad = std::sqrt(r[k]);
    v[2 * k] = rad * std::cos(a);
    v[2 * k + 1] = rad * std::sin(a);
  }
  return normalized(v);
}

std::vector<double> SpherePoint::radii() const {
  std::vector<double> r(ambient_.size() / 2);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = radius2(static_cast<int>(k));
  return r;
}

SpherePoint random_sphere_point(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Vec v(2 * n + 2);
  for (auto& c : v) c = normal(gen);
  return SpherePoint::normalized(v);
}

ChartCoords graph_chart(const SpherePoint& p) {
  const Vec& a = p.ambient();
  Eigen::Index idx = 0;
  const double big = a.cwiseAbs().maxCoeff(&idx);
  const double floor = 1.0 / std::sqrt(static_cast<double>(a.size())) - 1e-9;
  if (big < floor) throw ChartError("no coordinate large enough for a graph chart");
  ChartCoords c;
  c.index = static_cast<int>(idx);
  c.sign = a[idx] >= 0.0 ? 1.0 : -1.0;
  c.u.resize(a.size() - 1);
  for (Eigen::Index j = 0, k = 0; j < a.size(); ++j)
    if (j != idx) c.u[k++] = a[j];
  return c;
}

SpherePoint from_chart(const ChartCoords& chart) { return from_chart(chart, chart.u); }

SpherePoint from_chart(const ChartCoords& chart, const Vec& u) {
  const double rest = 1.0 - u.squaredNorm();
  if (rest <= 0.0) throw ChartError("chart coordinates outside the unit ball");
  Vec a(u.size() + 1);
  for (Eigen::Index j = 0, k = 0; j < a.size(); ++j)
    a[j] = (j == chart.index) ? chart.sign * std::sqrt(rest) : u[k++];
  // Already unit up to rounding; renormalize so the invariant holds exactly.
  return SpherePoint(a / a.norm());
}

Mat chart_basis(const ChartCoords& chart, const Vec& u) {
  const double solved = chart.sign * std::sqrt(1.0 - u.squaredNorm());
  const Eigen::Index m = u.size();
  Mat e = Mat::Zero(m + 1, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Eigen::Index slot = j < chart.index ? j : j + 1;
    e(slot, j) = 1.0;
    e(chart.index, j) = -u[j] / solved;
  }
  return e;
}

Vec chart_components(const ChartCoords& chart, const Vec& v) {
  Vec c(v.size() - 1);
  for (Eigen::Index j = 0, k = 0; j < v.size(); ++j)
    if (j != chart.index) c[k++] = v[j];
  return c;
}

Vec tangent_project(const SpherePoint& p, const Vec& v) {
  const Vec& a = p.ambient();
  return v - a.dot(v) * a;
}

Mat tangent_projector(const SpherePoint& p) {
  const Vec& a = p.ambient();
  return Mat::Identity(a.size(), a.size()) - a * a.transpose();
}

Mat tangent_frame(const SpherePoint& p) {
  const ChartCoords c = graph_chart(p);
  Eigen::HouseholderQR<Mat> qr(chart_basis(c, c.u));
  return qr.householderQ() * Mat::Identity(p.ambient().size(), c.u.size());
}

Mat complex_structure(int n) {
  const int dim = 2 * n + 2;
  Mat j = Mat::Zero(dim, dim);
  for (int k = 0; k <= n; ++k) {
    j(2 * k + 1, 2 * k) = ConventionLedger::j_orientation;
    j(2 * k, 2 * k + 1) = -ConventionLedger::j_orientation;
  }
  return j;
}

void set_worker_threads(int threads) { g_threads = std::max(0, threads); }

int worker_threads() {
  const int t = g_threads.load();
  if (t > 0) return t;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace sasaki
