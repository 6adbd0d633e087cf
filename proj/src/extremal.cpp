#include "sasaki/extremal.hpp"

#include "sasaki/parallel.hpp"

#include <unsupported/Eigen/AutoDiff>

#include <cmath>
#include <limits>
#include <numbers>

namespace sasaki {

namespace {

constexpr double kPi = std::numbers::pi;
// Jet order for operators up to fourth order in D_mu (A costs two orders).
constexpr int kOpOrder = 6;
// Jet order for s^T alone.
constexpr int kScalarOrder = 4;

void require_n1(const Weight& w) {
  if (w.n() != 1) throw std::invalid_argument("the extremal engine supports n = 1 only");
}

void require_sigma(double sigma) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw std::invalid_argument("sigma must lie in [0, 1]");
}

template <class T>
Jet<T> lift(const Jet<double>& j) {
  Jet<T> r(T(j[0]), j.order());
  for (int k = 1; k <= j.order(); ++k) r[k] = T(j[k]);
  return r;
}

Jet<double> q_jet(double w0, double w1, const Jet<double>& s) {
  return s * (1.0 - s) * (w1 * s + w0 * (1.0 - s)) / (w0 * w0);
}

template <class T>
Jet<T> profile_jet(const std::vector<T>& c, const Jet<double>& s) {
  Jet<T> acc(T(0), s.order());
  for (std::size_t k = 1; k <= c.size(); ++k) {
    const Jet<double> ck = cos(s * (kPi * static_cast<double>(k)));
    for (int i = 0; i <= s.order(); ++i) acc[i] += c[k - 1] * T(ck[i]);
  }
  return acc;
}

// Reduced structure of the deformation at one sigma, as jets.
template <class T>
struct Reduced {
  double w0 = 1;
  Jet<T> Q, sigma_t, A, theta;

  Jet<T> dmu(const Jet<T>& g) const { return g.d() * (2.0 * w0) / A; }
  Jet<T> s_transverse() const { return -dmu(dmu(theta)); }
  Jet<T> laplacian(const Jet<T>& f) const { return -dmu(theta * dmu(f)); }
  Jet<T> lichnerowicz(const Jet<T>& f) const {
    return dmu(dmu(theta * theta * dmu(dmu(f)))) * 0.25;
  }
};

template <class T>
Reduced<T> reduce(double w0, double w1, const std::vector<T>& c, double sigma, int order) {
  const Jet<double> s = Jet<double>::variable(sigma, order);
  Reduced<T> r;
  r.w0 = w0;
  r.Q = lift<T>(q_jet(w0, w1, s));
  const Jet<T> phi = profile_jet(c, s);
  r.sigma_t = lift<T>(s) + r.Q * phi.d() * (2.0 * w0 * w0);
  r.A = r.sigma_t.d();
  r.theta = r.Q * r.A;
  return r;
}

Reduced<double> reduce(const Weight& w, const BasicProfile& phi, double sigma, int order) {
  return reduce<double>(w[0], w[1], phi.coeffs, sigma, order);
}

template <class T>
T energy_impl(double w0, double w1, const std::vector<T>& c, int order) {
  const GaussRule& g = gauss_legendre(order);
  std::vector<T> terms(g.nodes.size());
  for (Eigen::Index q = 0; q < g.nodes.size(); ++q) {
    const Reduced<T> r = reduce<T>(w0, w1, c, g.nodes[q], kScalarOrder);
    if (!(std::real(r.A.value()) > 0.0)) return T(std::numeric_limits<double>::infinity());
    const T s = r.s_transverse().value() - 2.0;
    terms[q] = g.weights[q] * s * s * r.A.value();
  }
  // Fixed-order pairwise reduction (real and imaginary parts alike).
  while (terms.size() > 1) {
    std::vector<T> next((terms.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = terms[2 * i] + (2 * i + 1 < terms.size() ? terms[2 * i + 1] : T(0));
    terms.swap(next);
  }
  return 2.0 * kPi * kPi / (w0 * w1) * terms[0];
}

// Deformation 1-form eta_w + phi'(sigma) Phi_w^T grad sigma on R^4, written
// for a generic scalar so it can be differentiated automatically. Uses
// Phi_w^T grad sigma = -J grad sigma - eta_w <W p, grad sigma>, valid because
// grad sigma is orthogonal to p and to the torus orbits.
template <class S>
Eigen::Matrix<S, 4, 1> deformation_form(double w0, double w1, const std::vector<double>& c,
                                        const Eigen::Matrix<S, 4, 1>& p) {
  using std::sin;
  const S x0 = p[0], y0 = p[1], x1 = p[2], y1 = p[3];
  const S r0 = x0 * x0 + y0 * y0;
  const S r1 = x1 * x1 + y1 * y1;
  const S d = w0 * r0 + w1 * r1;
  const S sigma = w0 * r0 / d;
  const S k = 2.0 * w0 * w1 / (d * d);
  const S g0 = k * r1 * x0, g1 = k * r1 * y0, g2 = -(k * r0 * x1), g3 = -(k * r0 * y1);
  const S e0 = y0 / d, e1 = -x0 / d, e2 = y1 / d, e3 = -x1 / d;
  const S wpg = w0 * (x0 * g0 + y0 * g1) + w1 * (x1 * g2 + y1 * g3);
  S dphi(0.0);
  for (std::size_t m = 1; m <= c.size(); ++m) {
    const double km = kPi * static_cast<double>(m);
    dphi -= c[m - 1] * km * sin(km * sigma);
  }
  Eigen::Matrix<S, 4, 1> out;
  // J grad sigma = (-g1, g0, -g3, g2)
  out[0] = e0 + dphi * (g1 - e0 * wpg);
  out[1] = e1 + dphi * (-g0 - e1 * wpg);
  out[2] = e2 + dphi * (g3 - e2 * wpg);
  out[3] = e3 + dphi * (-g2 - e3 * wpg);
  return out;
}

Mat deformation_deta_ad(const Weight& w, const BasicProfile& phi, const Vec& p) {
  using Ad = Eigen::AutoDiffScalar<Eigen::Vector4d>;
  Eigen::Matrix<Ad, 4, 1> x;
  for (int i = 0; i < 4; ++i) x[i] = Ad(p[i], 4, i);
  const auto alpha = deformation_form<Ad>(w[0], w[1], phi.coeffs, x);
  Mat jac(4, 4);  // jac(j, i) = d_i alpha_j
  for (int j = 0; j < 4; ++j) jac.row(j) = alpha[j].derivatives().transpose();
  return jac.transpose() - jac;
}

double sum_weighted(const Vec& weights, const Vec& values) {
  std::vector<double> terms(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) terms[i] = weights[i] * values[i];
  return pairwise_sum(terms);
}

double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

// ---- BasicProfile ----

BasicProfile::BasicProfile(std::vector<double> c) : coeffs(std::move(c)) {
  if (static_cast<int>(coeffs.size()) > kMaxModes)
    throw std::invalid_argument("basic profile has at most 16 cosine modes");
  for (double v : coeffs)
    if (!std::isfinite(v)) throw std::invalid_argument("profile coefficients must be finite");
}

BasicProfile BasicProfile::zero(int modes) { return BasicProfile(std::vector<double>(modes, 0.0)); }

BasicProfile BasicProfile::mode(int modes, int k, double amplitude) {
  if (k < 1 || k > modes) throw std::invalid_argument("mode index out of range");
  BasicProfile p = zero(modes);
  p.coeffs[k - 1] = amplitude;
  return p;
}

bool BasicProfile::is_zero() const {
  for (double v : coeffs)
    if (v != 0.0) return false;
  return true;
}

double BasicProfile::operator()(double sigma) const {
  double acc = 0.0;
  for (std::size_t k = 1; k <= coeffs.size(); ++k) acc += coeffs[k - 1] * std::cos(kPi * k * sigma);
  return acc;
}

std::vector<double> BasicProfile::derivatives(double sigma, int order) const {
  const Jet<double> j = (*this)(Jet<double>::variable(sigma, order));
  std::vector<double> out(order + 1);
  for (int k = 0; k <= order; ++k) out[k] = j.derivative(k);
  return out;
}

Jet<double> BasicProfile::operator()(const Jet<double>& sigma) const {
  return profile_jet(coeffs, sigma);
}

BasicProfile BasicProfile::plus(double t, const BasicProfile& dir) const {
  std::vector<double> c(std::max(coeffs.size(), dir.coeffs.size()), 0.0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) c[k] += coeffs[k];
  for (std::size_t k = 0; k < dir.coeffs.size(); ++k) c[k] += t * dir.coeffs[k];
  return BasicProfile(std::move(c));
}

// ---- sigma functions ----

SigmaFunction cosine_mode(int k) {
  return [k](const Jet<double>& s) { return cos(s * (kPi * k)); };
}

SigmaFunction polynomial_in_sigma(std::vector<double> a) {
  return [a = std::move(a)](const Jet<double>& s) {
    Jet<double> acc(0.0, s.order());
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * s + *it;
    return acc;
  };
}

SigmaFunction legendre_mode(int degree) {
  if (degree < 0) throw std::invalid_argument("Legendre degree must be >= 0");
  return [degree](const Jet<double>& s) {
    const Jet<double> x = 2.0 * s - 1.0;
    Jet<double> p0(1.0, s.order());
    if (degree == 0) return p0;
    Jet<double> p1 = x;
    for (int k = 1; k < degree; ++k) {
      Jet<double> p2 = (x * p1 * (2.0 * k + 1.0) - p0 * static_cast<double>(k)) / (k + 1.0);
      p0 = p1;
      p1 = p2;
    }
    return p1;
  };
}

SigmaFunction from_profile(const BasicProfile& phi) {
  return [phi](const Jet<double>& s) { return phi(s); };
}

SigmaFunction from_series(const ChebyshevSeries& series) {
  return [series](const Jet<double>& s) { return series(s); };
}

// ---- reduction ----

double sigma_coordinate(const Weight& w, const SpherePoint& p) {
  require_n1(w);
  const double a = w[0] * p.radius2(0);
  return a / (a + w[1] * p.radius2(1));
}

SpherePoint point_at_sigma(const Weight& w, double sigma) {
  require_n1(w);
  require_sigma(sigma);
  const double u0 = sigma / w[0], u1 = (1.0 - sigma) / w[1];
  const double r[2] = {u0 / (u0 + u1), u1 / (u0 + u1)};
  const double angles[2] = {0.3, 1.1};
  return SpherePoint::from_radii(r, angles);
}

Vec sigma_gradient(const Weight& w, const SpherePoint& p) {
  require_n1(w);
  const Vec& a = p.ambient();
  const double r0 = p.radius2(0), r1 = p.radius2(1);
  const double d = w[0] * r0 + w[1] * r1;
  const double k = 2.0 * w[0] * w[1] / (d * d);
  Vec g(4);
  g << k * r1 * a[0], k * r1 * a[1], -k * r0 * a[2], -k * r0 * a[3];
  return g;
}

double reduced_measure_factor(const Weight& w) {
  require_n1(w);
  return 2.0 * kPi * kPi / (w[0] * w[1]);
}

ReducedSample reduced_sample(const Weight& w, const BasicProfile& phi, double sigma) {
  require_n1(w);
  require_sigma(sigma);
  const Reduced<double> r = reduce(w, phi, sigma, kScalarOrder);
  ReducedSample out;
  out.sigma = sigma;
  out.sigma_t = r.sigma_t.value();
  out.density = r.A.value();
  out.theta = r.theta.value();
  out.s_transverse = r.s_transverse().value();
  out.s = out.s_transverse - 2.0;
  return out;
}

double min_density(const Weight& w, const BasicProfile& phi, int count) {
  require_n1(w);
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    const double sigma = static_cast<double>(i) / (count - 1);
    lo = std::min(lo, reduce(w, phi, sigma, 2).A.value());
  }
  return lo;
}

void require_admissible(const Weight& w, const BasicProfile& phi) {
  require_n1(w);
  constexpr int count = 513;
  for (int i = 0; i < count; ++i) {
    const double sigma = static_cast<double>(i) / (count - 1);
    if (!(reduce(w, phi, sigma, 2).A.value() > 0.0))
      throw AdmissibilityError("deformed transverse form degenerates at sigma = " +
                                   std::to_string(sigma),
                               sigma);
  }
}

double laplacian_basic(const Weight& w, const BasicProfile& phi, const SigmaFunction& f,
                       double sigma) {
  require_n1(w);
  const Reduced<double> r = reduce(w, phi, sigma, kOpOrder);
  return r.laplacian(f(Jet<double>::variable(sigma, kOpOrder))).value();
}

double bilaplacian_basic(const Weight& w, const BasicProfile& phi, const SigmaFunction& f,
                         double sigma) {
  require_n1(w);
  const Reduced<double> r = reduce(w, phi, sigma, kOpOrder);
  return r.laplacian(r.laplacian(f(Jet<double>::variable(sigma, kOpOrder)))).value();
}

double lichnerowicz_point(const Weight& w, const BasicProfile& phi, const SigmaFunction& f,
                          double sigma) {
  require_n1(w);
  const Reduced<double> r = reduce(w, phi, sigma, kOpOrder);
  return r.lichnerowicz(f(Jet<double>::variable(sigma, kOpOrder))).value();
}

double gradient_pairing(const Weight& w, const BasicProfile& phi, const SigmaFunction& f,
                        const SigmaFunction& g, double sigma) {
  require_n1(w);
  const Reduced<double> r = reduce(w, phi, sigma, 3);
  const Jet<double> s = Jet<double>::variable(sigma, 3);
  return (r.theta * r.dmu(f(s)) * r.dmu(g(s))).value();
}

// ---- deformed frames ----

ContactFrame deformed_frame(const Weight& w, const BasicProfile& phi, const SpherePoint& p) {
  require_n1(w);
  const double sigma = sigma_coordinate(w, p);
  const double a = reduce(w, phi, sigma, 2).A.value();
  if (!(a > 0.0))
    throw AdmissibilityError("deformed transverse form degenerates at sigma = " +
                                 std::to_string(sigma),
                             sigma);
  ContactFrame f = sasaki_metric(w, p);
  if (phi.is_zero()) return f;
  const double dphi = phi.derivatives(sigma, 1)[1];
  const Vec zeta = dphi * (f.phi.transpose() * sigma_gradient(w, p));
  f.eta = f.eta + zeta;
  f.phi = f.phi - f.xi * (zeta.transpose() * f.phi);
  f.deta = deformation_deta_ad(w, phi, f.p);
  f.g = metric_from_structure(f.p, f.eta, f.phi, f.deta);
  return f;
}

Mat deformed_deta_fd(const Weight& w, const BasicProfile& phi, const SpherePoint& p, double h) {
  require_n1(w);
  const Eigen::Vector4d base = p.ambient();
  Mat jac(4, 4);
  for (int i = 0; i < 4; ++i) {
    Eigen::Vector4d e = Eigen::Vector4d::Zero();
    e[i] = h;
    jac.col(i) = (deformation_form<double>(w[0], w[1], phi.coeffs, base + e) -
                  deformation_form<double>(w[0], w[1], phi.coeffs, base - e)) /
                 (2.0 * h);
  }
  return jac.transpose() - jac;
}

DeformedFrame deformed_structure(const Weight& w, const BasicProfile& phi, const SpherePoint& p,
                                 double h) {
  DeformedFrame out;
  out.frame = deformed_frame(w, phi, p);
  out.curvature = curvature_fd(
      [&](const SpherePoint& q) { return deformed_frame(w, phi, q).g; }, p, h);
  const CurvatureData& cd = out.curvature;
  const Mat e = chart_basis(cd.chart, cd.chart.u);
  Mat phic(e.cols(), e.cols());
  for (Eigen::Index j = 0; j < e.cols(); ++j)
    phic.col(j) = chart_components(cd.chart, out.frame.phi * e.col(j));
  // rho_g(X, Y) = Ric(X, Phi Y); d(eta) = 2 g(., Phi .) with this kappa.
  out.rhoT = cd.ric * phic + e.transpose() * out.frame.deta * e;
  out.s = cd.s;
  out.sT = cd.s + 2.0;
  return out;
}

// ---- energy ----

double energy(const Weight& w, const BasicProfile& phi, const QuadratureSpec& spec,
              EnergyMethod method, double h) {
  require_n1(w);
  spec.validate();
  if (spec.method != QuadratureSpec::Method::simplex_gauss)
    throw std::invalid_argument("energy integrates torus-invariant data with Gauss rules only");
  require_admissible(w, phi);
  const int order = static_cast<int>(spec.order);
  if (method == EnergyMethod::reduced) return energy_impl<double>(w[0], w[1], phi.coeffs, order);

  const GaussRule& g = gauss_legendre(order);
  Vec terms(order);
  detail::parallel_for(static_cast<std::size_t>(order), [&](std::size_t q) {
    const double r0 = g.nodes[q];
    const double r[2] = {r0, 1.0 - r0};
    const double angles[2] = {0.3, 1.1};
    const SpherePoint p = SpherePoint::from_radii(r, angles);
    const DeformedFrame df = deformed_structure(w, phi, p, h);
    terms[q] = df.s * df.s * volume_density(df.frame);
  });
  return 2.0 * kPi * kPi * sum_weighted(g.weights, terms);
}

std::complex<double> energy_complex(const Weight& w, const std::vector<std::complex<double>>& c,
                                    int order) {
  require_n1(w);
  return energy_impl<std::complex<double>>(w[0], w[1], c, order);
}

// ---- Lichnerowicz ----

GridFunctionResult lichnerowicz_apply(const Weight& w, const BasicProfile& phi, const Vec& f) {
  require_n1(w);
  require_admissible(w, phi);
  const int count = static_cast<int>(f.size());
  const ChebyshevSeries series = ChebyshevSeries::interpolate(f);
  const ChebyshevSeries coarse = series.truncated(std::max(2, (3 * count) / 4));
  GridFunctionResult out;
  out.sigma = chebyshev_grid(count);
  out.values.resize(count);
  Vec rough(count);
  const SigmaFunction full = from_series(series), cut = from_series(coarse);
  for (int i = 0; i < count; ++i) {
    out.values[i] = lichnerowicz_point(w, phi, full, out.sigma[i]);
    rough[i] = lichnerowicz_point(w, phi, cut, out.sigma[i]);
  }
  const double noise = max_abs(out.values - rough);
  const double scale = std::max(max_abs(out.values), 1e-8 * std::max(max_abs(f), 1e-300));
  out.noise_ratio = noise / scale;
  out.resolution_ok = out.noise_ratio <= 0.1;
  return out;
}

LichnerowiczSpectrum lichnerowicz_spectrum(const Weight& w, const BasicProfile& phi, int degree,
                                           int order) {
  require_n1(w);
  require_admissible(w, phi);
  if (degree < 1) throw std::invalid_argument("basis degree must be >= 1");
  const GaussRule& g = gauss_legendre(order);
  const int m = degree + 1;
  Mat values(order, m), lvalues(order, m);
  Vec dens(order);
  for (int q = 0; q < order; ++q) {
    const double sigma = g.nodes[q];
    const Reduced<double> r = reduce(w, phi, sigma, kOpOrder);
    dens[q] = g.weights[q] * r.A.value();
    const Jet<double> s = Jet<double>::variable(sigma, kOpOrder);
    for (int j = 0; j < m; ++j) {
      const Jet<double> pj = legendre_mode(j)(s);
      values(q, j) = pj.value();
      lvalues(q, j) = r.lichnerowicz(pj).value();
    }
  }
  const Mat gram = values.transpose() * dens.asDiagonal() * lvalues;
  const Mat mass = values.transpose() * dens.asDiagonal() * values;
  const Eigen::LLT<Mat> llt(mass);
  const Mat linv = llt.matrixL().solve(Mat::Identity(m, m));
  const Mat g_hat = linv * gram * linv.transpose();
  LichnerowiczSpectrum out;
  out.asymmetry = (g_hat - g_hat.transpose()).cwiseAbs().maxCoeff() /
                  std::max(g_hat.cwiseAbs().maxCoeff(), 1e-300);
  const Mat sym = 0.5 * (g_hat + g_hat.transpose());
  out.eigenvalues = Eigen::SelfAdjointEigenSolver<Mat>(sym).eigenvalues();
  out.singular_values = out.eigenvalues.cwiseAbs();
  std::sort(out.singular_values.data(), out.singular_values.data() + m);
  for (int i = 0; i < m; ++i)
    if (out.singular_values[i] < 1e-6) ++out.kernel_dim;
  return out;
}

// ---- variations ----

FirstVariation first_variation_check(const Weight& w, const BasicProfile& phi,
                                     const BasicProfile& dir, std::vector<double> ts) {
  require_n1(w);
  require_admissible(w, phi);
  constexpr int order = 96;
  const QuadratureSpec spec = QuadratureSpec::gauss(order);
  const GaussRule& g = gauss_legendre(order);
  const SigmaFunction fdir = from_profile(dir);
  Vec terms(order);
  for (int q = 0; q < order; ++q) {
    const Reduced<double> r = reduce(w, phi, g.nodes[q], kOpOrder);
    const double s = r.s_transverse().value() - 2.0;
    const double l = r.lichnerowicz(fdir(Jet<double>::variable(g.nodes[q], kOpOrder))).value();
    terms[q] = s * l * r.A.value();
  }
  FirstVariation out;
  out.analytic = -4.0 * reduced_measure_factor(w) * sum_weighted(g.weights, terms);
  out.ts = ts;
  for (double t : ts) {
    const double ep = energy(w, phi.plus(t, dir), spec);
    const double em = energy(w, phi.plus(-t, dir), spec);
    const double fd = (ep - em) / (2.0 * t);
    out.fd_derivatives.push_back(fd);
    out.errors.push_back(std::abs(fd - out.analytic));
  }
  out.fd_derivative = out.fd_derivatives.empty() ? 0.0 : out.fd_derivatives.back();
  const double err = out.errors.empty() ? 0.0 : out.errors.back();
  out.rel_err = err == 0.0 ? 0.0 : err / std::max(std::abs(out.analytic), 1e-300);
  out.order = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (out.errors[i] == 0.0 || out.errors[i - 1] == 0.0) continue;
    out.order = std::min(out.order, std::log(out.errors[i - 1] / out.errors[i]) /
                                        std::log(ts[i - 1] / ts[i]));
  }
  if (!std::isfinite(out.order)) out.order = 0.0;
  return out;
}

ExpansionCheck expansion_check(const Weight& w, const BasicProfile& phi, const BasicProfile& dir,
                               std::vector<double> ts, int grid) {
  require_n1(w);
  require_admissible(w, phi);
  const Vec sigma = chebyshev_grid(grid);
  const SigmaFunction fdir = from_profile(dir);
  Vec s_base(grid), s_dot(grid), a_base(grid), lap(grid);
  for (int i = 0; i < grid; ++i) {
    const Reduced<double> r = reduce(w, phi, sigma[i], kOpOrder);
    const Jet<double> d = fdir(Jet<double>::variable(sigma[i], kOpOrder));
    const Jet<double> ld = r.laplacian(d);
    const double st = r.s_transverse().value();
    lap[i] = ld.value();
    // -(1/2 Delta^2 dir + 2 (rho^T, i ddbar dir)), (rho^T, i ddbar f) = (s^T/2)(-Delta f / 2)
    s_dot[i] = -(0.5 * r.laplacian(ld).value() - 0.5 * st * lap[i]);
    s_base[i] = st - 2.0;
    a_base[i] = r.A.value();
  }
  ExpansionCheck out;
  out.ts = ts;
  for (double t : ts) {
    const BasicProfile pt = phi.plus(t, dir);
    double rs = 0.0, rm = 0.0;
    for (int i = 0; i < grid; ++i) {
      const ReducedSample smp = reduced_sample(w, pt, sigma[i]);
      rs = std::max(rs, std::abs(smp.s - s_base[i] - t * s_dot[i]));
      rm = std::max(rm, std::abs(smp.density / a_base[i] - 1.0 + 0.5 * t * lap[i]));
    }
    out.s_residuals.push_back(rs);
    out.mu_residuals.push_back(rm);
    out.mu_max_rel = std::max(out.mu_max_rel, rm / t);
  }
  out.s_order = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (out.s_residuals[i] == 0.0 || out.s_residuals[i - 1] == 0.0) continue;
    out.s_order = std::min(out.s_order, std::log(out.s_residuals[i - 1] / out.s_residuals[i]) /
                                            std::log(ts[i - 1] / ts[i]));
  }
  if (!std::isfinite(out.s_order)) out.s_order = 0.0;
  return out;
}

// ---- Ricci potential and Futaki ----

RicciPotentialGrid ricci_potential(const Weight& w, const BasicProfile& phi, int nodes) {
  require_n1(w);
  require_admissible(w, phi);
  if (nodes < 9) throw std::invalid_argument("Ricci potential grid needs at least 9 nodes");
  const double w0 = w[0];
  RicciPotentialGrid out;
  out.sigma_nodes = chebyshev_grid(nodes);
  const Vec cc = clenshaw_curtis_weights(nodes);
  Vec s(nodes), a(nodes), q(nodes), dq(nodes);
  for (int i = 0; i < nodes; ++i) {
    const Reduced<double> r = reduce(w, phi, out.sigma_nodes[i], kScalarOrder);
    s[i] = r.s_transverse().value() - 2.0;
    a[i] = r.A.value();
    q[i] = r.Q.value();
    dq[i] = r.Q[1];
  }
  out.s0 = sum_weighted(cc, s.cwiseProduct(a)) / sum_weighted(cc, a);
  // Delta_B psi = -4 w0^2 (Q psi')' / A = s0 - s  =>  4 w0^2 Q psi' = int_0^sigma (s - s0) A.
  const Vec source = (s.array() - out.s0).matrix().cwiseProduct(a);
  const ChebyshevSeries flux = ChebyshevSeries::interpolate(source).integral();
  out.dpsi.resize(nodes);
  for (int i = 0; i < nodes; ++i) {
    if (i == 0 || i == nodes - 1)
      out.dpsi[i] = source[i] / (4.0 * w0 * w0 * dq[i]);  // regular endpoint limit
    else
      out.dpsi[i] = flux(out.sigma_nodes[i]) / (4.0 * w0 * w0 * q[i]);
  }
  const ChebyshevSeries dpsi_series = ChebyshevSeries::interpolate(out.dpsi);
  const ChebyshevSeries psi_series = dpsi_series.integral();
  out.psi.resize(nodes);
  for (int i = 0; i < nodes; ++i) out.psi[i] = psi_series(out.sigma_nodes[i]);
  const double mean = sum_weighted(cc, out.psi.cwiseProduct(a)) / sum_weighted(cc, a);
  out.psi.array() -= mean;
  Vec shifted = psi_series.coeffs();
  shifted[0] -= mean;
  out.series = ChebyshevSeries(shifted);
  out.mean = reduced_measure_factor(w) * sum_weighted(cc, out.psi.cwiseProduct(a));
  const ChebyshevSeries d2 = dpsi_series.derivative();
  for (int i = 0; i < nodes; ++i) {
    const double lap =
        -4.0 * w0 * w0 * (dq[i] * out.dpsi[i] + q[i] * d2(out.sigma_nodes[i])) / a[i];
    out.residual = std::max(out.residual, std::abs(lap - (out.s0 - s[i])));
  }
  return out;
}

FutakiPotentialReport futaki_via_potential(const Weight& w, const FutakiInput& b,
                                           const BasicProfile& phi, int nodes) {
  require_n1(w);
  if (b.b.size() != 2) throw std::invalid_argument("b must have 2 entries for n = 1");
  const RicciPotentialGrid rp = ricci_potential(w, phi, nodes);
  const Vec cc = clenshaw_curtis_weights(nodes);
  const double w0 = w[0], w1 = w[1];
  const double slope = b.b[0] / w0 - b.b[1] / w1;
  Vec grad_terms(nodes), direct_terms(nodes);
  for (int i = 0; i < nodes; ++i) {
    const Reduced<double> r = reduce(w, phi, rp.sigma_nodes[i], kScalarOrder);
    const double a = r.A.value();
    const double st = r.sigma_t.value();
    // f_b = eta~(X_b) = b0 sigma~/w0 + b1 (1 - sigma~)/w1
    const double fb = b.b[0] * st / w0 + b.b[1] * (1.0 - st) / w1;
    const double s = r.s_transverse().value() - 2.0;
    grad_terms[i] = 4.0 * w0 * w0 * r.Q.value() * slope * a * rp.dpsi[i];
    direct_terms[i] = -fb * (s - rp.s0) * a;
  }
  const double c = reduced_measure_factor(w);
  FutakiPotentialReport out;
  out.via_potential = c * sum_weighted(cc, grad_terms);
  out.direct = c * sum_weighted(cc, direct_terms);
  return out;
}

// ---- descent ----

Vec energy_gradient(const Weight& w, const BasicProfile& phi, GradientMethod method, int order) {
  require_n1(w);
  require_admissible(w, phi);
  const int k = phi.modes();
  Vec g(k);
  if (method == GradientMethod::complex_step) {
    constexpr double h = 1e-30;
    std::vector<std::complex<double>> c(phi.coeffs.begin(), phi.coeffs.end());
    for (int i = 0; i < k; ++i) {
      c[i] += std::complex<double>(0.0, h);
      g[i] = energy_impl<std::complex<double>>(w[0], w[1], c, order).imag() / h;
      c[i] = phi.coeffs[i];
    }
    return g;
  }
  constexpr double d = 1e-6;
  for (int i = 0; i < k; ++i) {
    std::vector<double> cp = phi.coeffs, cm = phi.coeffs;
    cp[i] += d;
    cm[i] -= d;
    g[i] = (energy_impl<double>(w[0], w[1], cp, order) - energy_impl<double>(w[0], w[1], cm, order)) /
           (2.0 * d);
  }
  return g;
}

double extremal_residual(const Weight& w, const BasicProfile& phi, int order) {
  require_n1(w);
  const GaussRule& g = gauss_legendre(order);
  // Weighted least squares of s on {1, sigma~} in L^2(d mu~).
  Eigen::Matrix2d normal = Eigen::Matrix2d::Zero();
  Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
  Vec s(order), st(order), dens(order);
  for (int q = 0; q < order; ++q) {
    const ReducedSample smp = reduced_sample(w, phi, g.nodes[q]);
    s[q] = smp.s;
    st[q] = smp.sigma_t;
    dens[q] = g.weights[q] * smp.density;
    const Eigen::Vector2d basis(1.0, smp.sigma_t);
    normal += dens[q] * basis * basis.transpose();
    rhs += dens[q] * smp.s * basis;
  }
  const Eigen::Vector2d coef = normal.ldlt().solve(rhs);
  double res = 0.0, tot = 0.0;
  for (int q = 0; q < order; ++q) {
    const double e = s[q] - coef[0] - coef[1] * st[q];
    res += dens[q] * e * e;
    tot += dens[q] * s[q] * s[q];
  }
  return std::sqrt(res / tot);
}

FlowReport run_flow(const Weight& w, const BasicProfile& phi0, const FlowConfig& cfg) {
  require_n1(w);
  if (cfg.K < 1 || cfg.K > BasicProfile::kMaxModes)
    throw std::invalid_argument("basis size K must lie in [1, 16]");
  if (!(cfg.tol > 0.0) || cfg.max_iter < 0 || !(cfg.step > 0.0))
    throw std::invalid_argument("flow needs tol > 0, step > 0 and max_iter >= 0");
  std::vector<double> c0 = phi0.coeffs;
  for (std::size_t k = static_cast<std::size_t>(cfg.K); k < c0.size(); ++k)
    if (c0[k] != 0.0) throw std::invalid_argument("initial profile has modes beyond K");
  c0.resize(cfg.K, 0.0);
  BasicProfile phi(c0);
  require_admissible(w, phi);

  const int order = cfg.quad_order;
  auto value = [&](const BasicProfile& p) {
    if (!(min_density(w, p) > 0.0)) return std::numeric_limits<double>::infinity();
    return energy_impl<double>(w[0], w[1], p.coeffs, order);
  };
  auto gradient = [&](const BasicProfile& p) { return energy_gradient(w, p, cfg.gradient, order); };
  // Hessian of the energy by central differences of the gradient,
  // eigenvalues clamped away from zero: a Newton-type preconditioner.
  auto preconditioner = [&](const BasicProfile& p) {
    constexpr double d = 1e-4;
    Mat h(cfg.K, cfg.K);
    for (int i = 0; i < cfg.K; ++i) {
      const BasicProfile e = BasicProfile::mode(cfg.K, i + 1, 1.0);
      h.col(i) = (gradient(p.plus(d, e)) - gradient(p.plus(-d, e))) / (2.0 * d);
    }
    const Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.transpose()));
    Vec lam = es.eigenvalues().cwiseAbs();
    const double floor = std::max(lam.maxCoeff() * 1e-10, 1e-300);
    for (auto& v : lam) v = 1.0 / std::max(v, floor);
    return Mat(es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose());
  };

  FlowReport rep;
  rep.baseline_energy = energy_impl<double>(w[0], w[1], std::vector<double>(cfg.K, 0.0), order);
  double e = value(phi);
  Vec g = gradient(phi);
  rep.energies.push_back(e);
  rep.grad_norms.push_back(g.cwiseAbs().maxCoeff());
  rep.status = "max_iter";
  for (int it = 0;; ++it) {
    if (rep.grad_norms.back() < cfg.tol) {
      rep.converged = true;
      rep.status = "converged";
      break;
    }
    if (it >= cfg.max_iter) break;
    Vec dir = -(preconditioner(phi) * g);
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      dir = -g;
      slope = -g.squaredNorm();
    }
    double step = cfg.step;
    BasicProfile trial = phi;
    double et = 0.0;
    while (true) {
      std::vector<double> c = phi.coeffs;
      for (int k = 0; k < cfg.K; ++k) c[k] += step * dir[k];
      trial = BasicProfile(c);
      et = value(trial);
      if (et <= e + 1e-4 * step * slope) break;
      step *= 0.5;
      if (step < 1e-12) break;
    }
    if (step < 1e-12) {
      rep.status = "stagnated";
      break;
    }
    phi = trial;
    e = et;
    g = gradient(phi);
    rep.energies.push_back(e);
    rep.grad_norms.push_back(g.cwiseAbs().maxCoeff());
    rep.steps.push_back(step);
    rep.iterations = it + 1;
  }
  rep.final = phi;
  rep.extremal_residual = extremal_residual(w, phi, order);
  return rep;
}

std::vector<ProfileRow> profile_table(const Weight& w, const BasicProfile& phi, int count) {
  require_n1(w);
  if (count < 2) throw std::invalid_argument("profile table needs at least 2 rows");
  std::vector<ProfileRow> rows;
  rows.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double sigma = static_cast<double>(i) / (count - 1);
    const ReducedSample smp = reduced_sample(w, phi, sigma);
    rows.push_back({sigma, phi(sigma), smp.s, scalar_closed(w, point_at_sigma(w, sigma)).s});
  }
  return rows;
}

}  // namespace sasaki
