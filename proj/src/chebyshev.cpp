#include "sasaki/chebyshev.hpp"

#include <cmath>
#include <numbers>

namespace sasaki {

namespace {

void require_count(int count) {
  if (count < 2) throw std::invalid_argument("Chebyshev grid needs at least 2 nodes");
}

}  // namespace

Vec chebyshev_grid(int count) {
  require_count(count);
  const int m = count - 1;
  Vec s(count);
  for (int i = 0; i <= m; ++i) s[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * i / m));
  s[0] = 0.0;
  s[m] = 1.0;
  return s;
}

Vec clenshaw_curtis_weights(int count) {
  require_count(count);
  const int m = count - 1;
  // Weights for x in [-1, 1] at x_i = -cos(pi i / m), halved for [0, 1].
  Vec w(count);
  for (int i = 0; i <= m; ++i) {
    const double theta = std::numbers::pi * i / m;
    double acc = 0.0;
    for (int k = 0; k <= m / 2; ++k) {
      const double bk = (k == 0 || 2 * k == m) ? 1.0 : 2.0;
      acc += bk / (1.0 - 4.0 * k * k) * std::cos(2.0 * k * theta);
    }
    const double ci = (i == 0 || i == m) ? 1.0 : 2.0;
    w[i] = 0.5 * ci / m * acc;
  }
  return w;
}

ChebyshevSeries ChebyshevSeries::interpolate(const Vec& values) {
  const int count = static_cast<int>(values.size());
  require_count(count);
  const int m = count - 1;
  // Node i sits at x = -cos(pi i/m) = cos(pi (m-i)/m); T_k there is
  // (-1)^k cos(pi k i/m).
  Vec c(count);
  for (int k = 0; k <= m; ++k) {
    double acc = 0.0;
    for (int i = 0; i <= m; ++i) {
      const double half = (i == 0 || i == m) ? 0.5 : 1.0;
      acc += half * values[i] * std::cos(std::numbers::pi * k * i / m);
    }
    const double scale = (k == 0 || k == m) ? 1.0 / m : 2.0 / m;
    c[k] = ((k % 2) ? -1.0 : 1.0) * scale * acc;
  }
  return ChebyshevSeries(c);
}

double ChebyshevSeries::operator()(double sigma) const {
  const double x = 2.0 * sigma - 1.0;
  double b1 = 0.0, b2 = 0.0;
  for (Eigen::Index k = c_.size() - 1; k >= 1; --k) {
    const double b0 = 2.0 * x * b1 - b2 + c_[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + (c_.size() ? c_[0] : 0.0);
}

Jet<double> ChebyshevSeries::operator()(const Jet<double>& sigma) const {
  const Jet<double> x = 2.0 * sigma - 1.0;
  const int m = sigma.order();
  Jet<double> b1(0.0, m), b2(0.0, m);
  for (Eigen::Index k = c_.size() - 1; k >= 1; --k) {
    Jet<double> b0 = 2.0 * x * b1 - b2 + c_[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + (c_.size() ? c_[0] : 0.0);
}

ChebyshevSeries ChebyshevSeries::derivative() const {
  const Eigen::Index m = c_.size();
  if (m <= 1) return ChebyshevSeries(Vec::Zero(1));
  // d/dx recurrence c'_{k-1} = c'_{k+1} + 2k c_k, then d/dsigma = 2 d/dx.
  Vec d = Vec::Zero(m);
  for (Eigen::Index k = m - 1; k >= 1; --k)
    d[k - 1] = (k + 1 < m ? d[k + 1] : 0.0) + 2.0 * k * c_[k];
  d[0] *= 0.5;
  return ChebyshevSeries(Vec(2.0 * d.head(m - 1)));
}

ChebyshevSeries ChebyshevSeries::integral() const {
  const Eigen::Index m = c_.size();
  // int T_k dx = T_{k+1}/(2(k+1)) - T_{k-1}/(2(k-1)), and dx = 2 dsigma.
  Vec c = Vec::Zero(m + 1);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double a = c_[k];
    if (k == 0) {
      c[1] += a;
    } else if (k == 1) {
      c[2] += a / 4.0;
    } else {
      c[k + 1] += a / (2.0 * (k + 1));
      c[k - 1] -= a / (2.0 * (k - 1));
    }
  }
  c *= 0.5;
  ChebyshevSeries out(c);
  c[0] -= out(0.0);
  return ChebyshevSeries(c);
}

ChebyshevSeries ChebyshevSeries::truncated(int modes) const {
  const int keep = std::max(1, std::min(modes, size()));
  return ChebyshevSeries(Vec(c_.head(keep)));
}

}  // namespace sasaki
