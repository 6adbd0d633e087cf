#include "sasaki/cli.hpp"

#include "sasaki/curvature.hpp"
#include "sasaki/extremal.hpp"
#include "sasaki/futaki.hpp"
#include "sasaki/quadrature.hpp"
#include "sasaki/report.hpp"
#include "sasaki/structures.hpp"
#include "sasaki/verify.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace sasaki {

namespace {

// Argument problems detected after parsing; mapped to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double parse_decimal(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

struct Common {
  std::string weights;
  int n = -1;
  double fd_step = kDefaultFdStep;
  int quad_order = 64;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string output = "human";
  std::string config;
};

Weight make_weight(const Common& c) {
  if (c.weights.empty()) throw UsageError("--weights is required");
  std::vector<double> e;
  try {
    e = parse_number_list(c.weights);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(std::string("--weights: ") + ex.what());
  }
  if (c.n >= 0 && static_cast<int>(e.size()) != c.n + 1)
    throw UsageError("--weights: expected n+1 = " + std::to_string(c.n + 1) + " entries, got " +
                     std::to_string(e.size()));
  for (double v : e)
    if (!(v > 0.0) || !std::isfinite(v))
      throw UsageError("--weights: entries must be finite and > 0");
  if (e.size() < 2) throw UsageError("--weights: need at least 2 entries (n >= 1)");
  return Weight(std::move(e));
}

void require_positive(double v, const char* flag) {
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(std::string(flag) + ": must be > 0");
}

std::string human(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

// ---- config file ----

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("--config: line " + std::to_string(lineno) + " is not key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    kv[key] = value;
  }
  return kv;
}

bool has_flag(const std::vector<std::string>& args, const std::string& name) {
  const std::string flag = "--" + name;
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

// Appends file settings that the command line does not already give.
std::vector<std::string> merge_config(const std::vector<std::string>& args, CLI::App& app,
                                      CLI::App* sub) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::vector<std::string> merged = args;
  for (const auto& [key, value] : read_config(path)) {
    if (key == "config") continue;
    const CLI::Option* opt = sub ? sub->get_option_no_throw("--" + key) : nullptr;
    if (!opt) opt = app.get_option_no_throw("--" + key);
    if (!opt) throw UsageError("--config: unknown key '" + key + "'");
    if (has_flag(args, key)) continue;
    if (opt->get_expected_max() == 0) {
      if (value == "true" || value == "1" || value == "yes") merged.push_back("--" + key);
      else if (!(value == "false" || value == "0" || value == "no"))
        throw UsageError("--config: flag '" + key + "' needs true/false");
    } else {
      merged.push_back("--" + key + "=" + value);
    }
  }
  return merged;
}

void apply_threads(const Common& c) {
  int threads = c.threads;
  if (threads <= 0) {
    if (const char* env = std::getenv("SASAKI_THREADS")) {
      try {
        threads = std::stoi(env);
      } catch (const std::exception&) {
        throw UsageError("SASAKI_THREADS: not an integer");
      }
    }
  }
  set_worker_threads(std::max(0, threads));
}

// ---- subcommands ----

int cmd_structure_check(const Common& c, int points, double a, std::ostream& out) {
  const Weight w = make_weight(c);
  require_positive(a, "--a");
  if (points < 1) throw UsageError("--points: must be >= 1");
  FrameResiduals worst;
  worst.min_eigenvalue = 1e300;
  double reeb_d = 0.0;
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < points; ++i) {
    const SpherePoint p = random_sphere_point(w.n(), c.seed + static_cast<std::uint64_t>(i));
    const ContactFrame f = homothety_frame(w, a, p);
    const FrameResiduals r = check_frame(f);
    worst.eta_xi = std::max(worst.eta_xi, r.eta_xi);
    worst.phi_square = std::max(worst.phi_square, r.phi_square);
    worst.phi_xi = std::max(worst.phi_xi, r.phi_xi);
    worst.eta_phi = std::max(worst.eta_phi, r.eta_phi);
    worst.compatibility = std::max(worst.compatibility, r.compatibility);
    worst.contact = std::max(worst.contact, r.contact);
    worst.symmetry = std::max(worst.symmetry, r.symmetry);
    worst.min_eigenvalue = std::min(worst.min_eigenvalue, r.min_eigenvalue);
    // eta_round(xi_w) = D
    const Vec eta_round = -(complex_structure(w.n()) * p.ambient());
    const double d = sasaki_metric(w, p).D;
    reeb_d = std::max(reeb_d, std::abs(eta_round.dot(reeb_field(w, p).v) - d));
    rows.push_back({static_cast<double>(i), r.eta_xi, r.phi_square, r.phi_xi, r.eta_phi,
                    r.compatibility, r.contact, r.symmetry, r.min_eigenvalue});
  }
  const bool pass = worst.worst() < 1e-10 && worst.min_eigenvalue > 0.0 && reeb_d < 1e-12;
  if (c.output == "json") {
    Json j;
    j["command"] = "structure-check";
    j["n"] = w.n();
    j["weights"] = to_json(w);
    j["a"] = a;
    j["points"] = points;
    j["seed"] = c.seed;
    j["residuals"] = to_json(worst);
    j["eta_reeb_minus_D"] = reeb_d;
    j["worst"] = worst.worst();
    j["pass"] = pass;
    emit_json(out, j);
  } else if (c.output == "csv") {
    out << "point,eta_xi,phi_square,phi_xi,eta_phi,compatibility,contact,symmetry,min_eigenvalue\n";
    for (const auto& r : rows) write_csv_row(out, r);
  } else {
    out << "structure-check n=" << w.n() << " points=" << points << " a=" << human(a) << "\n"
        << "  eta(xi) - 1            " << human(worst.eta_xi) << "\n"
        << "  Phi^2 + 1 - xi eta     " << human(worst.phi_square) << "\n"
        << "  Phi(xi)                " << human(worst.phi_xi) << "\n"
        << "  eta o Phi              " << human(worst.eta_phi) << "\n"
        << "  g(Phi., Phi.) - g + ee " << human(worst.compatibility) << "\n"
        << "  g(Phi., .) - k d(eta)  " << human(worst.contact) << "\n"
        << "  g - g^T                " << human(worst.symmetry) << "\n"
        << "  min eig(g)             " << human(worst.min_eigenvalue) << "\n"
        << "  eta(xi_w) - D          " << human(reeb_d) << "\n"
        << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kExitOk : kExitFailure;
}

int cmd_curvature(const Common& c, int points, double a, bool richardson, std::ostream& out) {
  const Weight w = make_weight(c);
  require_positive(a, "--a");
  if (points < 1) throw UsageError("--points: must be >= 1");
  if (!(c.fd_step >= 1e-5 && c.fd_step <= 1e-2)) throw UsageError("--fd-step: must lie in [1e-5, 1e-2]");
  const int n = w.n();
  struct Row {
    SpherePoint p;
    double s_fd, s_closed, st_closed, rel_err, reeb;
  };
  std::vector<Row> rows;
  double max_rel = 0.0;
  for (int i = 0; i < points; ++i) {
    const SpherePoint p = random_sphere_point(n, c.seed + static_cast<std::uint64_t>(i));
    const EinsteinResiduals er = [&] {
      if (!richardson) return einstein_residuals(w, a, p, c.fd_step);
      EinsteinResiduals r = einstein_residuals(w, a, p, c.fd_step);
      r.curvature = curvature_fd([&](const SpherePoint& q) { return homothety_frame(w, a, q).g; }, p,
                                 c.fd_step, FdOptions{true});
      return r;
    }();
    const ScalarReport sr = scalar_closed(w, a, p);
    const double rel = std::abs(er.curvature.s + 2 * n - sr.s_transverse) / std::abs(sr.s_transverse);
    max_rel = std::max(max_rel, rel);
    rows.push_back({p, er.curvature.s, sr.s, sr.s_transverse, rel, er.reeb_res});
  }
  if (c.output == "json") {
    Json j;
    j["command"] = "curvature";
    j["n"] = n;
    j["weights"] = to_json(w);
    j["a"] = a;
    j["fd_step"] = c.fd_step;
    j["richardson"] = richardson;
    j["seed"] = c.seed;
    j["rows"] = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Json r;
      r["point"] = i;
      r["r"] = rows[i].p.radii();
      r["s_fd"] = rows[i].s_fd;
      r["s_closed"] = rows[i].s_closed;
      r["s_transverse_closed"] = rows[i].st_closed;
      r["rel_err"] = rows[i].rel_err;
      r["reeb_res"] = rows[i].reeb;
      j["rows"].push_back(r);
    }
    j["max_rel_err"] = max_rel;
    emit_json(out, j);
  } else if (c.output == "csv") {
    out << "point";
    for (int k = 0; k <= n; ++k) out << ",r" << k;
    out << ",s_fd,s_closed,s_transverse_closed,rel_err,reeb_res\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::vector<double> v{static_cast<double>(i)};
      for (double r : rows[i].p.radii()) v.push_back(r);
      for (double x : {rows[i].s_fd, rows[i].s_closed, rows[i].st_closed, rows[i].rel_err, rows[i].reeb})
        v.push_back(x);
      write_csv_row(out, v);
    }
  } else {
    out << "curvature n=" << n << " a=" << human(a) << " h=" << human(c.fd_step)
        << (richardson ? " (Richardson)" : "") << "\n";
    out << "  point        s_fd            s_closed        rel_err     |Ric(.,xi)-2n eta|\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "  %5zu  %15.10f  %15.10f  %10.3e  %10.3e\n", i, rows[i].s_fd,
                    rows[i].s_closed, rows[i].rel_err, rows[i].reeb);
      out << buf;
    }
    out << "  max rel err " << human(max_rel) << "\n";
  }
  return kExitOk;
}

int cmd_volume(const Common& c, long mc_samples, std::ostream& out) {
  const Weight w = make_weight(c);
  if (c.quad_order < 2) throw UsageError("--quad-order: must be >= 2");
  if (mc_samples != 0 && mc_samples < 1000) throw UsageError("--mc-samples: must be 0 or >= 1000");
  const VolumeReport v = volume(w, c.quad_order);
  McResult mc;
  if (mc_samples > 0)
    mc = integrate_mc(w, [](const SpherePoint&) { return 1.0; }, QuadratureSpec::mc(mc_samples, c.seed));
  if (c.output == "json") {
    Json j;
    j["command"] = "volume";
    j["n"] = w.n();
    j["weights"] = to_json(w);
    j["quad_order"] = c.quad_order;
    j["closed"] = v.closed;
    j["numeric"] = v.numeric;
    j["rel_err"] = v.rel_err;
    j["mc"] = mc_samples > 0 ? Json{{"samples", mc_samples}, {"seed", c.seed}, {"value", mc.value},
                                    {"stderr", mc.stderr_}}
                             : Json(nullptr);
    emit_json(out, j);
  } else if (c.output == "csv") {
    out << "closed,numeric,rel_err\n";
    write_csv_row(out, {v.closed, v.numeric, v.rel_err});
  } else {
    out << "volume n=" << w.n() << "\n  closed  " << human(v.closed) << "\n  numeric " << human(v.numeric)
        << "\n  rel err " << human(v.rel_err) << "\n";
    if (mc_samples > 0)
      out << "  mc      " << human(mc.value) << " +- " << human(mc.stderr_) << "\n";
  }
  return kExitOk;
}

int cmd_futaki(const Common& c, const std::string& b_text, const std::string& method, std::ostream& out) {
  const Weight w = make_weight(c);
  if (b_text.empty()) throw UsageError("--b is required");
  std::vector<double> b;
  try {
    b = parse_number_list(b_text);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(std::string("--b: ") + ex.what());
  }
  if (b.size() != w.size()) throw UsageError("--b: expected n+1 = " + std::to_string(w.size()) + " entries");
  if (c.quad_order < 2) throw UsageError("--quad-order: must be >= 2");
  std::vector<FutakiMethod> methods;
  if (method == "all") {
    methods = {FutakiMethod::closed, FutakiMethod::chart, FutakiMethod::sphere};
  } else {
    try {
      methods = {parse_futaki_method(method)};
    } catch (const std::invalid_argument&) {
      throw UsageError("--method: expected closed, chart, sphere or all");
    }
  }
  const FutakiInput in(b);
  const QuadratureSpec spec = QuadratureSpec::gauss(c.quad_order);
  std::map<FutakiMethod, double> values;
  for (FutakiMethod m : methods) values[m] = futaki_numeric(w, in, m, spec);
  double lo = 1e300, hi = -1e300;
  for (const auto& [m, v] : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (c.output == "json") {
    Json j;
    j["command"] = "futaki";
    j["n"] = w.n();
    j["weights"] = to_json(w);
    j["b"] = b;
    j["method"] = method;
    j["quad_order"] = c.quad_order;
    Json vals;
    for (FutakiMethod m : {FutakiMethod::closed, FutakiMethod::chart, FutakiMethod::sphere}) {
      const auto it = values.find(m);
      vals[std::string(to_string(m))] = it == values.end() ? Json(nullptr) : Json(it->second);
    }
    j["values"] = vals;
    j["spread"] = hi - lo;
    emit_json(out, j);
  } else if (c.output == "csv") {
    out << "method,value\n";
    for (const auto& [m, v] : values) out << to_string(m) << ',' << format_number(v) << '\n';
  } else {
    out << "futaki n=" << w.n() << "\n";
    for (const auto& [m, v] : values) out << "  " << to_string(m) << "\t" << human(v) << "\n";
    if (values.size() > 1) out << "  spread\t" << human(hi - lo) << "\n";
  }
  return kExitOk;
}

int cmd_classify(const Common& c, double a, bool no_fd, std::ostream& out) {
  const Weight w = make_weight(c);
  require_positive(a, "--a");
  const ClassifyReport r = classify(w, a, !no_fd);
  if (c.output == "json") {
    Json j = to_json(r);
    j["command"] = "classify";
    j["n"] = w.n();
    j["weights"] = to_json(w);
    j["a"] = a;
    emit_json(out, j);
  } else if (c.output == "csv") {
    out << "csc,einstein,futaki_norm";
    for (std::size_t k = 0; k < r.A.size(); ++k) out << ",A" << k;
    out << "\n" << (r.csc ? 1 : 0) << ',' << (r.einstein ? 1 : 0) << ',' << format_number(r.futaki_norm);
    for (double v : r.A) out << ',' << format_number(v);
    out << "\n";
  } else {
    out << "classify n=" << w.n() << " a=" << human(a) << "\n  A =";
    for (double v : r.A) out << " " << human(v);
    out << "\n  constant scalar curvature: " << (r.csc ? "yes" : "no")
        << "\n  Sasaki-Einstein:           " << (r.einstein ? "yes" : "no")
        << "\n  max |F(e_j)|:              " << human(r.futaki_norm) << "\n";
    if (r.csc)
      out << "  eta-Einstein lambda:       " << human(r.lambda) << "\n  folded scale a/l:          "
          << human(r.folded_scale) << "\n";
    if (r.einstein_residual >= 0) out << "  |Ric - 2n g| (FD):         " << human(r.einstein_residual) << "\n";
  }
  return kExitOk;
}

struct FlowArgs {
  double perturb = 0.05;
  std::string phi0;
  int K = 8;
  double tol = 1e-4;
  int max_iter = 500;
  double step = 1.0;
  std::string gradient = "complex-step";
  std::string out_file;
  std::string profile_csv;
  int profile_rows = 101;
};

int cmd_flow(const Common& c, const FlowArgs& f, std::ostream& out) {
  const Weight w = make_weight(c);
  if (w.n() != 1) throw UsageError("--weights: flow supports n = 1 only (2 entries)");
  if (f.K < 1 || f.K > BasicProfile::kMaxModes) throw UsageError("--basis-size: must lie in [1, 16]");
  if (!(f.tol > 0.0)) throw UsageError("--tol: must be > 0");
  if (f.max_iter < 0) throw UsageError("--max-iter: must be >= 0");
  require_positive(f.step, "--step");
  if (f.profile_rows < 2) throw UsageError("--profile-rows: must be >= 2");
  FlowConfig cfg;
  cfg.K = f.K;
  cfg.tol = f.tol;
  cfg.max_iter = f.max_iter;
  cfg.step = f.step;
  cfg.quad_order = c.quad_order;
  if (f.gradient == "complex-step") cfg.gradient = GradientMethod::complex_step;
  else if (f.gradient == "central") cfg.gradient = GradientMethod::central;
  else throw UsageError("--gradient: expected complex-step or central");
  BasicProfile phi0 = BasicProfile::mode(f.K, 1, f.perturb);
  if (!f.phi0.empty()) {
    std::vector<double> coeffs;
    try {
      coeffs = parse_number_list(f.phi0);
    } catch (const std::invalid_argument& ex) {
      throw UsageError(std::string("--phi0: ") + ex.what());
    }
    if (static_cast<int>(coeffs.size()) > f.K) throw UsageError("--phi0: more coefficients than --basis-size");
    coeffs.resize(f.K, 0.0);
    phi0 = BasicProfile(coeffs);
  }
  const FlowReport r = run_flow(w, phi0, cfg);
  Json j;
  j["command"] = "flow";
  j["weights"] = to_json(w);
  j["config"] = Json{{"basis_size", f.K}, {"tol", f.tol},    {"max_iter", f.max_iter},
                     {"step", f.step},    {"gradient", f.gradient}, {"quad_order", c.quad_order}};
  j["initial"] = to_json(phi0);
  const Json report = to_json(r);
  for (const auto& [k, v] : report.items()) j[k] = v;
  if (!f.out_file.empty()) {
    std::ofstream o(f.out_file);
    if (!o) throw ComputationError("cannot write " + f.out_file);
    o << j.dump(2) << '\n';
  }
  if (!f.profile_csv.empty()) {
    std::ofstream o(f.profile_csv);
    if (!o) throw ComputationError("cannot write " + f.profile_csv);
    write_profile_csv(o, profile_table(w, r.final, f.profile_rows));
  }
  if (c.output == "json") {
    emit_json(out, j);
  } else if (c.output == "csv") {
    out << "iteration,energy,grad_norm\n";
    for (std::size_t i = 0; i < r.energies.size(); ++i)
      write_csv_row(out, {static_cast<double>(i), r.energies[i], r.grad_norms[i]});
  } else {
    out << "flow w=(" << human(w[0]) << "," << human(w[1]) << ") K=" << f.K << "\n";
    for (std::size_t i = 0; i < r.energies.size(); ++i) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "  %4zu  E=%.12f  |grad|=%.3e\n", i, r.energies[i], r.grad_norms[i]);
      out << buf;
    }
    out << "  status: " << r.status << " after " << r.iterations << " iterations\n"
        << "  E(phi=0) = " << human(r.baseline_energy) << ", relative gap "
        << human((r.energies.back() - r.baseline_energy) / r.baseline_energy) << "\n"
        << "  extremal residual |(1-pi)s|/|s| = " << human(r.extremal_residual) << "\n";
  }
  return r.converged ? kExitOk : kExitFailure;
}

int cmd_verify(const Common& c, const std::string& suite, std::ostream& out) {
  try {
    (void)suite_criteria(suite);
  } catch (const std::invalid_argument&) {
    throw UsageError("--suite: expected identities, curvature, futaki, variational or all");
  }
  VerifyOptions opts;
  if (c.seed != 0) opts.seed = c.seed;
  SuiteReport rep;
  rep.suite = suite;
  for (int id : suite_criteria(suite)) {
    rep.criteria.push_back(run_criterion(id, opts));
    if (c.output == "human") out << rep.criteria.back().line() << std::endl;
  }
  if (c.output == "json") {
    emit_json(out, to_json(rep));
  } else if (c.output == "csv") {
    out << "id,pass\n";
    for (const auto& r : rep.criteria) out << r.id << ',' << (r.pass ? 1 : 0) << '\n';
  } else {
    int passed = 0;
    for (const auto& r : rep.criteria) passed += r.pass;
    out << passed << "/" << rep.criteria.size() << " criteria passed\n";
  }
  return rep.all_pass() ? kExitOk : kExitFailure;
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto slash = item.find('/');
    if (slash == std::string::npos) {
      out.push_back(parse_decimal(item));
    } else {
      const double num = parse_decimal(std::string_view(item).substr(0, slash));
      const double den = parse_decimal(std::string_view(item).substr(slash + 1));
      if (den == 0.0) throw std::invalid_argument("zero denominator in '" + item + "'");
      out.push_back(num / den);
    }
  }
  if (out.empty() || (!text.empty() && text.back() == ','))
    throw std::invalid_argument("empty entry in list '" + text + "'");
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Sasakian structures on S^{2n+1}: curvature, volume, Futaki invariant "
               "and extremal descent",
               "sasaki-cli"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--weights", c.weights, "Weight vector, comma-separated (decimals or p/q)");
  app.add_option("--n", c.n, "Complex dimension n (weights must have n+1 entries)")->check(CLI::Range(1, 64));
  app.add_option("--fd-step", c.fd_step, "Finite-difference step")->capture_default_str();
  app.add_option("--quad-order", c.quad_order, "Gauss nodes per axis")->capture_default_str();
  app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", c.threads, "Worker threads (default: SASAKI_THREADS or all cores)");
  app.add_option("--output", c.output, "Output format")
      ->check(CLI::IsMember({"human", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--config", c.config, "key=value file mirroring the flags");

  int points = 100;
  double a = 1.0;
  auto* structure = app.add_subcommand("structure-check", "Contact-metric identities at sampled points");
  structure->add_option("--points", points, "Number of random points")->capture_default_str();
  structure->add_option("--a", a, "Transverse homothety factor")->capture_default_str();

  int curv_points = 5;
  bool richardson = false;
  auto* curvature = app.add_subcommand("curvature", "FD scalar curvature vs the closed form");
  curvature->add_option("--points", curv_points, "Number of random points")->capture_default_str();
  curvature->add_option("--a", a, "Transverse homothety factor")->capture_default_str();
  curvature->add_flag("--richardson", richardson, "Richardson-extrapolate the FD Ricci tensor");

  long mc_samples = 0;
  auto* vol = app.add_subcommand("volume", "Volume: closed form vs quadrature");
  vol->add_option("--mc-samples", mc_samples, "Also estimate by Monte Carlo (0 = off)");

  std::string b_text, method = "all";
  auto* fut = app.add_subcommand("futaki", "Futaki invariant on a torus direction");
  fut->add_option("--b", b_text, "Coefficients b of X_b = sum b_j H_j");
  fut->add_option("--method", method, "closed, chart, sphere or all")->capture_default_str();

  bool no_fd = false;
  auto* cls = app.add_subcommand("classify", "CSC / Sasaki-Einstein classification");
  cls->add_option("--a", a, "Transverse homothety factor")->capture_default_str();
  cls->add_flag("--no-fd-check", no_fd, "Skip the FD confirmation of the Einstein condition");

  FlowArgs fa;
  auto* flow = app.add_subcommand("flow", "Descent of E = int s^2 to the extremal representative (n = 1)");
  flow->add_option("--perturb", fa.perturb, "Initial profile amplitude of cos(pi sigma)")->capture_default_str();
  flow->add_option("--phi0", fa.phi0, "Initial cosine coefficients (overrides --perturb)");
  flow->add_option("--basis-size", fa.K, "Number of cosine modes K")->capture_default_str();
  flow->add_option("--tol", fa.tol, "Gradient infinity-norm tolerance")->capture_default_str();
  flow->add_option("--max-iter", fa.max_iter, "Iteration cap")->capture_default_str();
  flow->add_option("--step", fa.step, "Initial line-search step")->capture_default_str();
  flow->add_option("--gradient", fa.gradient, "complex-step or central")->capture_default_str();
  flow->add_option("--out", fa.out_file, "Write the JSON report to FILE");
  flow->add_option("--profile-csv", fa.profile_csv, "Write the final profile table to FILE");
  flow->add_option("--profile-rows", fa.profile_rows, "Rows of the profile table")->capture_default_str();

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run the acceptance suites");
  verify->add_option("--suite", suite, "identities, curvature, futaki, variational or all")
      ->capture_default_str();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    // Locate the subcommand first so config keys can resolve against it.
    CLI::App* chosen = nullptr;
    for (const auto& s : args)
      if (auto* sub = app.get_subcommand_no_throw(s)) {
        chosen = sub;
        break;
      }
    std::vector<std::string> merged = merge_config(args, app, chosen);
    std::vector<std::string> reversed(merged.rbegin(), merged.rend());
    app.parse(reversed);
    apply_threads(c);
    if (c.n >= 0 && !c.weights.empty()) (void)make_weight(c);
    if (structure->parsed()) return cmd_structure_check(c, points, a, out);
    if (curvature->parsed()) return cmd_curvature(c, curv_points, a, richardson, out);
    if (vol->parsed()) return cmd_volume(c, mc_samples, out);
    if (fut->parsed()) return cmd_futaki(c, b_text, method, out);
    if (cls->parsed()) return cmd_classify(c, a, no_fd, out);
    if (flow->parsed()) return cmd_flow(c, fa, out);
    if (verify->parsed()) return cmd_verify(c, suite, out);
    return kExitUsage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ComputationError& e) {
    err << "computation failed: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "computation failed: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace sasaki
