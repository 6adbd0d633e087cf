#include "sasaki/verify.hpp"

#include "sasaki/curvature.hpp"
#include "sasaki/extremal.hpp"
#include "sasaki/futaki.hpp"
#include "sasaki/quadrature.hpp"
#include "sasaki/report.hpp"
#include "sasaki/structures.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace sasaki {

namespace {

constexpr double kPi = std::numbers::pi;

class Checker {
 public:
  explicit Checker(CriterionResult& r) : r_(r) {}
  void metric(const std::string& key, double v) { r_.metrics.emplace_back(key, v); }
  // Records a failed condition; the first one becomes the note.
  void require(bool ok, const std::string& what) {
    if (ok) return;
    ok_ = false;
    if (r_.note.empty()) r_.note = what;
  }
  bool ok() const { return ok_; }

 private:
  CriterionResult& r_;
  bool ok_ = true;
};

Weight random_weight(std::mt19937_64& gen, int n, double lo = 0.5, double hi = 3.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> e(n + 1);
  for (auto& v : e) v = u(gen);
  return Weight(std::move(e));
}

std::vector<Weight> grid_weights_n1() {
  std::vector<Weight> out;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) out.emplace_back(std::vector<double>{0.5 + 0.625 * i, 0.5 + 0.625 * j});
  return out;
}

std::vector<Weight> random_weights_n2(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Weight> out;
  for (int i = 0; i < 8; ++i) out.push_back(random_weight(gen, 2));
  return out;
}

AmbientMetricField metric_of(const Weight& w, double a = 1.0) {
  return [w, a](const SpherePoint& q) { return homothety_frame(w, a, q).g; };
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// ---- criteria ----

void contact_identities(Checker& c, const VerifyOptions& o) {
  double worst = 0.0, eta_xi = 0.0, min_eig = 1e300;
  int frames = 0;
  std::mt19937_64 gen(o.seed);
  for (int n = 1; n <= 2; ++n)
    for (int k = 0; k < 20; ++k) {
      const Weight w = random_weight(gen, n);
      for (int i = 0; i < 100; ++i) {
        const SpherePoint p = random_sphere_point(n, o.seed + 1000 * k + i + 7919 * n);
        const FrameResiduals r = check_frame(sasaki_metric(w, p));
        worst = std::max(worst, r.worst());
        eta_xi = std::max(eta_xi, r.eta_xi);
        min_eig = std::min(min_eig, r.min_eigenvalue);
        ++frames;
      }
    }
  c.metric("frames", frames);
  c.metric("worst", worst);
  c.metric("eta_xi", eta_xi);
  c.metric("min_eigenvalue", min_eig);
  c.require(worst < 1e-10, "contact identity residual >= 1e-10");
  c.require(eta_xi < 1e-12, "eta(xi) - 1 >= 1e-12");
  c.require(min_eig > 0.0, "metric not positive definite");
}

void round_calibration(Checker& c, const VerifyOptions& o) {
  double euclid = 0.0, ein = 0.0;
  for (int n = 1; n <= 2; ++n) {
    const Weight w(std::vector<double>(n + 1, 1.0));
    for (int i = 0; i < 100; ++i) {
      const SpherePoint p = random_sphere_point(n, o.seed + i + 500 * n);
      euclid = std::max(euclid,
                        (sasaki_metric(w, p).g - tangent_projector(p)).cwiseAbs().maxCoeff());
    }
    for (int i = 0; i < 5; ++i) {
      const SpherePoint p = random_sphere_point(n, o.seed + 77 + i + 500 * n);
      ein = std::max(ein, einstein_residuals(w, 1.0, p, 1e-3).einstein_res);
    }
  }
  c.metric("euclidean_defect", euclid);
  c.metric("einstein_res", ein);
  c.require(euclid < 1e-12, "round metric differs from the Euclidean restriction");
  c.require(ein < 5e-4, "|Ric - 2n g| >= 5e-4 on the round sphere");
}

void reeb_ricci(Checker& c, const VerifyOptions& o) {
  std::mt19937_64 gen(o.seed + 3);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Weight w = random_weight(gen, 1);
    const SpherePoint p = random_sphere_point(1, o.seed + 300 + i);
    const CurvatureData cd = curvature_fd(metric_of(w), p, 1e-3);
    const ContactFrame f = sasaki_metric(w, p);
    const Mat e = chart_basis(cd.chart, cd.chart.u);
    Vec x(3);
    for (auto& v : x) v = normal(gen);
    x /= std::sqrt(x.dot(cd.g * x));  // unit length for g_w
    const double lhs = x.dot(cd.ric * chart_components(cd.chart, f.xi));
    const double rhs = 2.0 * (e.transpose() * f.eta).dot(x);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  c.metric("max_residual", worst);
  c.require(worst < 5e-4, "|Ric(X, xi) - 2n eta(X)| >= 5e-4");
}

void transverse_scalar(Checker& c, const VerifyOptions& o) {
  std::mt19937_64 gen(o.seed + 4);
  double worst = 0.0, min_st = 1e300;
  for (int n = 1; n <= 2; ++n)
    for (int i = 0; i < 50; ++i) {
      const Weight w = random_weight(gen, n);
      const SpherePoint p = random_sphere_point(n, o.seed + 400 + i + 100 * n);
      const double st = scalar_closed(w, p).s_transverse;
      const double s_fd = curvature_fd(metric_of(w), p, 1e-3).s;
      worst = std::max(worst, std::abs(s_fd + 2 * n - st) / std::abs(st));
      min_st = std::min(min_st, std::abs(st));
    }
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < 10; ++i) {
    const int n = 1 + i % 2;
    const Weight w = random_weight(gen, n);
    const SpherePoint p = random_sphere_point(n, o.seed + 900 + i);
    const double st = scalar_closed(w, p).s_transverse;
    const double e1 = std::abs(curvature_fd(metric_of(w), p, 1e-3).s + 2 * n - st);
    const double e2 = std::abs(curvature_fd(metric_of(w), p, 5e-4).s + 2 * n - st);
    lo = std::min(lo, e1 / e2);
    hi = std::max(hi, e1 / e2);
  }
  c.metric("max_rel_err", worst);
  c.metric("min_abs_sT", min_st);
  c.metric("order_ratio_min", lo);
  c.metric("order_ratio_max", hi);
  c.require(worst < 1e-3, "FD scalar curvature off the closed form by >= 1e-3 relative");
  c.require(lo >= 3.5 && hi <= 4.5, "halving h did not shrink the error by 3.5-4.5x");
}

void volume_check(Checker& c, const VerifyOptions& o) {
  double worst = 0.0;
  for (const Weight& w : grid_weights_n1()) worst = std::max(worst, volume(w).rel_err);
  for (const Weight& w : random_weights_n2(o.seed + 5)) worst = std::max(worst, volume(w).rel_err);
  const double s3 = volume(Weight({1, 1})).numeric;
  const double s5 = volume(Weight({1, 1, 1})).numeric;
  c.metric("max_rel_err", worst);
  c.metric("round_s3_rel", rel(s3, 2 * kPi * kPi));
  c.metric("round_s5_rel", rel(s5, kPi * kPi * kPi));
  c.require(worst < 1e-8, "volume closed vs numeric >= 1e-8 relative");
  c.require(rel(s3, 2 * kPi * kPi) < 1e-12, "Vol(S^3) != 2 pi^2");
  c.require(rel(s5, kPi * kPi * kPi) < 1e-12, "Vol(S^5) != pi^3");
}

void mean_zero(Checker& c, const VerifyOptions& o) {
  double worst = 0.0, s0_err = 0.0;
  std::vector<Weight> all = grid_weights_n1();
  for (const Weight& w : random_weights_n2(o.seed + 5)) all.push_back(w);
  for (const Weight& w : all) {
    const int n = w.n();
    const double total = w.total();
    auto dev = [&](const Vec& r) {
      double d = 0.0, num = 0.0;
      for (int j = 0; j <= n; ++j) {
        d += w[j] * r[j];
        num += w[j] * (total - (n + 1) * w[j]) * r[j];
      }
      return 4.0 * (n + 2) * num / d;
    };
    auto s = [&](const Vec& r) {
      double d = 0.0, num = 0.0;
      for (int j = 0; j <= n; ++j) {
        d += w[j] * r[j];
        num += w[j] * (2 * total - (n + 2) * w[j]) * r[j];
      }
      return 4.0 * (n + 1) * num / d - 2.0 * n;
    };
    const QuadratureSpec spec = QuadratureSpec::gauss(64);
    const double vol = volume_closed(w);
    const double s0 = mean_scalar(w);
    worst = std::max(worst, std::abs(integrate_invariant(w, dev, spec)) / (std::abs(s0) * vol));
    const double mean = integrate_invariant(w, s, spec) /
                        integrate_invariant(w, [](const Vec&) { return 1.0; }, spec);
    s0_err = std::max(s0_err, rel(mean, s0));
  }
  c.metric("max_normalized_integral", worst);
  c.metric("s0_rel_err", s0_err);
  c.require(worst < 1e-6, "int (s - s0) d mu is not ~0");
  c.require(s0_err < 1e-12, "volume mean of s differs from 2n(2W - 1)");
}

void futaki_agreement(Checker& c, const VerifyOptions&) {
  const QuadratureSpec spec = QuadratureSpec::gauss(64);
  double worst_rel = 0.0, worst_abs = 0.0;
  for (const Weight& w : grid_weights_n1())
    for (int j = 0; j < 2; ++j) {
      std::vector<double> e(2, 0.0);
      e[j] = 1.0;
      const FutakiInput b(e);
      const double closed = futaki_closed(w, b);
      for (FutakiMethod m : {FutakiMethod::chart, FutakiMethod::sphere}) {
        const double v = futaki_numeric(w, b, m, spec);
        if (std::abs(closed) < 1e-12)
          worst_abs = std::max(worst_abs, std::abs(v));
        else
          worst_rel = std::max(worst_rel, rel(v, closed));
      }
    }
  // Spot value against the analytic inner integral int_0^inf (1 - 2x)/(1 + 2x)^4 dx = 1/12.
  const Weight w12({1, 2});
  const double inner = integrate_orthant(
      1, [](const Vec& x) { return (1.0 - 2.0 * x[0]) / std::pow(1.0 + 2.0 * x[0], 4); }, 64);
  const double spot = futaki_closed(w12, FutakiInput({1, 0}));
  const double spot_chart = futaki_numeric(w12, FutakiInput({1, 0}), FutakiMethod::chart, spec);
  const double oracle = -24.0 * kPi * kPi * (1.0 / 12.0);
  // Vanishing locus along w = (1 - t, t).
  int zeros = 0, zero_at = -1;
  double min_nonzero = 1e300;
  for (int i = 0; i <= 20; ++i) {
    const double t = (i + 1) / 22.0;
    const Weight w({1.0 - t, t});
    const ClassifyReport r = classify(w, 1.0, false);
    double norm = r.futaki_norm;
    for (int j = 0; j < 2; ++j) {
      std::vector<double> e(2, 0.0);
      e[j] = 1.0;
      norm = std::max(norm, std::abs(futaki_numeric(w, FutakiInput(e), FutakiMethod::chart, spec)));
    }
    if (norm < 1e-10) {
      ++zeros;
      zero_at = i;
    } else {
      min_nonzero = std::min(min_nonzero, norm);
    }
  }
  c.metric("max_rel_disagreement", worst_rel);
  c.metric("max_abs_at_zeros", worst_abs);
  c.metric("inner_integral_err", std::abs(inner - 1.0 / 12.0));
  c.metric("spot_rel_err", rel(spot, oracle));
  c.metric("spot_chart_rel_err", rel(spot_chart, oracle));
  c.metric("sweep_zeros", zeros);
  c.metric("sweep_min_nonzero_norm", min_nonzero);
  c.require(worst_rel < 1e-4, "Futaki evaluators disagree by >= 1e-4 relative");
  c.require(worst_abs < 1e-8, "Futaki evaluators nonzero (>= 1e-8) where the closed form vanishes");
  c.require(rel(spot, oracle) < 1e-6 && rel(spot_chart, oracle) < 1e-6,
            "F((1,2),(1,0)) != -2 pi^2");
  c.require(std::abs(inner - 1.0 / 12.0) < 1e-10, "orthant inner integral != 1/12");
  c.require(zeros == 1 && zero_at == 10, "Futaki vanishing locus is not exactly w ~ (1,1)");
  c.require(min_nonzero > 1e-3, "Futaki norm off the round ray is <= 1e-3");
}

void variational(Checker& c, const VerifyOptions& o) {
  const Weight w({1, 2});
  const BasicProfile zero = BasicProfile::zero(8);
  const BasicProfile base = BasicProfile::mode(8, 1, 0.05);
  std::mt19937_64 gen(o.seed + 8);
  std::normal_distribution<double> normal;
  double s_order = 1e300, mu_res = 0.0, fv_order = 1e300, fv_rel = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> d(8);
    for (int k = 0; k < 8; ++k) d[k] = 0.01 * normal(gen) / ((k + 1.0) * (k + 1.0));
    const BasicProfile dir(d);
    for (const BasicProfile* phi : {&zero, &base}) {
      const ExpansionCheck ex = expansion_check(w, *phi, dir);
      s_order = std::min(s_order, ex.s_order);
      mu_res = std::max(mu_res, ex.mu_max_rel);
    }
    const FirstVariation fv = first_variation_check(w, base, dir);
    fv_order = std::min(fv_order, fv.order);
    fv_rel = std::max(fv_rel, fv.rel_err);
  }
  // At the extremal baseline both sides vanish; dir = 0 gives exact zeros.
  const FirstVariation at_zero =
      first_variation_check(w, zero, BasicProfile({0.01, -0.004, 0.002, 0.001}));
  const FirstVariation null_dir = first_variation_check(w, base, BasicProfile::zero(8));
  const LichnerowiczSpectrum spec = lichnerowicz_spectrum(w, zero);
  c.metric("expansion_s_order", s_order);
  c.metric("expansion_mu_rel", mu_res);
  c.metric("first_variation_order", fv_order);
  c.metric("first_variation_rel_err", fv_rel);
  c.metric("baseline_analytic", at_zero.analytic);
  c.metric("kernel_dim", spec.kernel_dim);
  c.metric("sv2", spec.singular_values[1]);
  c.metric("sv3", spec.singular_values[2]);
  c.require(s_order >= 1.9, "scalar-curvature expansion order < 1.9");
  c.require(mu_res < 1e-10, "volume expansion residual >= 1e-10");
  c.require(fv_order >= 1.9, "first-variation convergence order < 1.9");
  c.require(fv_rel < 1e-2, "first-variation rel_err >= 1e-2");
  c.require(std::abs(at_zero.analytic) < 1e-6, "gradient at the extremal baseline is not ~0");
  c.require(null_dir.fd_derivative == 0.0 && null_dir.analytic == 0.0,
            "dir = 0 does not give exact zeros");
  c.require(spec.kernel_dim == 2 && spec.singular_values[2] > 1e-3,
            "Lichnerowicz kernel is not span{1, sigma}");
}

void flow_check(Checker& c, const VerifyOptions&) {
  const Weight w({1, 2});
  FlowConfig cfg;
  cfg.K = 8;
  const FlowReport r = run_flow(w, BasicProfile::mode(8, 1, 0.05), cfg);
  bool monotone = true;
  for (std::size_t i = 1; i < r.energies.size(); ++i) monotone = monotone && r.energies[i] <= r.energies[i - 1];
  const double gap = std::abs(r.energies.back() - r.baseline_energy) / r.baseline_energy;
  c.metric("iterations", r.iterations);
  c.metric("initial_energy", r.energies.front());
  c.metric("final_energy", r.energies.back());
  c.metric("relative_gap", gap);
  c.metric("final_grad_norm", r.grad_norms.back());
  c.metric("extremal_residual", r.extremal_residual);
  c.require(r.converged, "flow did not converge: " + r.status);
  c.require(monotone, "energies increased");
  c.require(gap < 1e-3, "final energy not within 1e-3 of E(phi = 0)");
  c.require(r.grad_norms.back() < 1e-4, "final gradient >= 1e-4");
  c.require(r.iterations <= 500, "more than 500 iterations");
}

void homothety(Checker& c, const VerifyOptions& o) {
  std::mt19937_64 gen(o.seed + 10);
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  double closed = 0.0, fd = 0.0, dens = 0.0, tensor = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + i % 2;
    const Weight w = random_weight(gen, n);
    const double a = scale(gen);
    const SpherePoint p = random_sphere_point(n, o.seed + 1100 + i);
    const double base = scalar_closed(w, p).s + 2 * n;
    // Closed form at the weight w / a is the homothety-scaled structure.
    const double scaled = scalar_closed(w.scaled(1.0 / a), p).s + 2 * n;
    closed = std::max(closed, rel(scaled, base / a));
    const double hfd = curvature_fd(metric_of(w, a), p, 1e-3).s + 2 * n;
    fd = std::max(fd, rel(hfd, base / a));
    dens = std::max(dens, rel(volume_density(homothety_frame(w, a, p)),
                              std::pow(a, n + 1) * volume_density(sasaki_metric(w, p))));
    const ContactFrame fa = homothety_frame(w, a, p), fw = sasaki_metric(w.scaled(1.0 / a), p);
    tensor = std::max({tensor, (fa.g - fw.g).cwiseAbs().maxCoeff(),
                       (fa.eta - fw.eta).cwiseAbs().maxCoeff(), (fa.xi - fw.xi).cwiseAbs().maxCoeff()});
  }
  // Einstein scan over a in [0.5, 2].
  auto scan = [&](const Weight& w, int& below, double& at) {
    below = 0;
    at = -1;
    const SpherePoint p = random_sphere_point(w.n(), o.seed + 1200);
    for (int k = 0; k <= 20; ++k) {
      const double a = 0.5 * std::pow(4.0, k / 20.0);
      if (einstein_residuals(w, a, p, 1e-3).einstein_res < 5e-4) {
        ++below;
        at = a;
      }
    }
  };
  int b1, b2, b3, b4;
  double a1, a2, a3, a4;
  scan(Weight({1, 1}), b1, a1);
  scan(Weight({1, 1, 1}), b2, a2);
  scan(Weight({1, 2}), b3, a3);
  scan(Weight({1, 2, 3}), b4, a4);
  c.metric("closed_rel", closed);
  c.metric("fd_rel", fd);
  c.metric("density_rel", dens);
  c.metric("frame_identification", tensor);
  c.metric("scan_round_s3_minima", b1);
  c.metric("scan_round_s3_at", a1);
  c.metric("scan_round_s5_minima", b2);
  c.metric("scan_weighted_minima", b3 + b4);
  c.require(closed < 1e-6, "closed-form homothety law violated");
  c.require(fd < 1e-3, "FD homothety law violated");
  c.require(dens < 1e-12, "d mu_a != a^{n+1} d mu");
  c.require(tensor < 1e-12, "frame of w/a differs from the homothety frame");
  c.require(b1 == 1 && std::abs(a1 - 1.0) < 1e-12 && b2 == 1 && std::abs(a2 - 1.0) < 1e-12,
            "round scan does not locate exactly one Einstein point at a = 1");
  c.require(b3 == 0 && b4 == 0, "an Einstein point was found off the round ray");
}

void deformation_invariance(Checker& c, const VerifyOptions&) {
  const Weight w({1, 2});
  const FutakiInput b({1, 0});
  const double f0 = futaki_via_potential(w, b, BasicProfile::zero(8)).via_potential;
  const std::vector<BasicProfile> profiles = {BasicProfile({0.05}), BasicProfile({0.0, 0.01}),
                                              BasicProfile({0.02, -0.005, 0.002})};
  double worst = 0.0, worst_direct = 0.0;
  for (const BasicProfile& phi : profiles) {
    const FutakiPotentialReport r = futaki_via_potential(w, b, phi);
    worst = std::max(worst, rel(r.via_potential, f0));
    worst_direct = std::max(worst_direct, rel(r.direct, f0));
  }
  c.metric("F0", f0);
  c.metric("F0_rel_closed", rel(f0, futaki_closed(w, b)));
  c.metric("max_rel_change", worst);
  c.metric("max_rel_change_direct", worst_direct);
  c.require(rel(f0, futaki_closed(w, b)) < 1e-3, "F via the Ricci potential != closed form");
  c.require(worst < 1e-2 && worst_direct < 1e-2, "Futaki invariant changed along the deformation");
}

struct Entry {
  const char* name;
  double limit;  // seconds
  void (*fn)(Checker&, const VerifyOptions&);
};

const Entry kEntries[] = {
    {"contact identities (n=1,2; 20 weights x 100 points)", 5, contact_identities},
    {"round-sphere calibration and Einstein FD", 30, round_calibration},
    {"Ric(X, xi) = 2n eta(X)", 60, reeb_ricci},
    {"closed-form transverse scalar vs FD, order check", 0, transverse_scalar},
    {"volume closed vs numeric", 0, volume_check},
    {"mean-zero of s - s0", 0, mean_zero},
    {"Futaki closed/chart/sphere agreement and vanishing locus", 0, futaki_agreement},
    {"variational suite (expansions, first variation, L^B kernel)", 180, variational},
    {"descent to the extremal representative", 300, flow_check},
    {"transverse homothety laws and Einstein scan", 0, homothety},
    {"deformation invariance of the Futaki invariant", 0, deformation_invariance},
};

}  // namespace

std::string CriterionResult::line() const {
  std::ostringstream os;
  os << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << " ";
  for (const auto& [k, v] : metrics) os << " " << k << "=" << format_number(v);
  char buf[32];
  std::snprintf(buf, sizeof buf, "  (%.2f s)", seconds);
  os << buf;
  if (!pass && !note.empty()) os << "  -- " << note;
  return os.str();
}

bool SuiteReport::all_pass() const {
  for (const auto& c : criteria)
    if (!c.pass) return false;
  return true;
}

CriterionResult run_criterion(int id, const VerifyOptions& opts) {
  if (id < 1 || id > 11) throw std::invalid_argument("criterion id must be in 1..11");
  const Entry& e = kEntries[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = e.name;
  r.time_limit = e.limit;
  Checker check(r);
  const auto start = std::chrono::steady_clock::now();
  try {
    e.fn(check, opts);
  } catch (const std::exception& ex) {
    check.require(false, std::string("exception: ") + ex.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (e.limit > 0) check.require(r.seconds < e.limit, "runtime limit exceeded");
  r.pass = check.ok();
  return r;
}

std::vector<int> suite_criteria(std::string_view suite) {
  if (suite == "identities") return {1, 2};
  if (suite == "curvature") return {3, 4, 10};
  if (suite == "futaki") return {5, 6, 7, 11};
  if (suite == "variational") return {8, 9};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  throw std::invalid_argument("unknown suite: " + std::string(suite));
}

SuiteReport run_suite(std::string_view suite, const VerifyOptions& opts) {
  SuiteReport rep;
  rep.suite = std::string(suite);
  for (int id : suite_criteria(suite)) rep.criteria.push_back(run_criterion(id, opts));
  return rep;
}

nlohmann::ordered_json to_json(const CriterionResult& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["name"] = r.name;
  j["pass"] = r.pass;
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.metrics) m[k] = v;
  j["metrics"] = m;
  j["note"] = r.note;
  return j;
}

nlohmann::ordered_json to_json(const SuiteReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["pass"] = r.all_pass();
  j["criteria"] = nlohmann::ordered_json::array();
  for (const auto& c : r.criteria) j["criteria"].push_back(to_json(c));
  return j;
}

}  // namespace sasaki
