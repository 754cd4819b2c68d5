#include "iglp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "iglp/corpus.hpp"
#include "iglp/errors.hpp"
#include "iglp/gfunctions.hpp"
#include "iglp/kernels.hpp"
#include "iglp/oracles.hpp"
#include "iglp/quadrature.hpp"
#include "iglp/regions_bounds.hpp"
#include "iglp/rng.hpp"
#include "iglp/special_functions.hpp"
#include "iglp/spectral.hpp"

namespace iglp {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("config line " + std::to_string(lineno) +
                           ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) +
                         ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw config_error("config line " + std::to_string(lineno) + ": empty key");
    cfg.kv[section.empty() ? key : section + "." + key] = value;
  }
  if (cfg.has("seed")) cfg.seed = static_cast<std::uint64_t>(cfg.geti("seed", 1));
  if (cfg.has("threads")) cfg.threads = cfg.geti("threads", 0);
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string ExperimentConfig::gets(const std::string& key, const std::string& def) const {
  auto it = kv.find(key);
  return it == kv.end() ? def : it->second;
}

int ExperimentConfig::geti(const std::string& key, int def) const {
  auto it = kv.find(key);
  if (it == kv.end()) return def;
  try {
    size_t used = 0;
    int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': '" + it->second +
                       "' is not an integer");
  }
}

double ExperimentConfig::getd(const std::string& key, double def) const {
  auto it = kv.find(key);
  if (it == kv.end()) return def;
  try {
    size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': '" + it->second +
                       "' is not a number");
  }
}

std::vector<double> ExperimentConfig::getlist(const std::string& key,
                                              const std::vector<double>& def) const {
  auto it = kv.find(key);
  if (it == kv.end()) return def;
  std::vector<double> out;
  std::stringstream ss(it->second);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    try {
      size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw config_error("config key '" + key + "': '" + tok + "' is not a number");
    }
  }
  if (out.empty()) throw config_error("config key '" + key + "': empty list");
  return out;
}

// ---------------------------------------------------------------------------
// report plumbing
// ---------------------------------------------------------------------------

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn) {
  unsigned want = threads > 0 ? static_cast<unsigned>(threads)
                              : std::max(1u, std::thread::hardware_concurrency());
  if (want <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  unsigned nthreads = std::min<std::size_t>(want, count);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nthreads);
  for (unsigned tid = 0; tid < nthreads; ++tid) {
    pool.emplace_back([&, tid]() {
      try {
        for (std::size_t i = tid; i < count; i += nthreads) fn(i);
      } catch (...) {
        errors[tid] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace {

struct Csv {
  std::string body;
  explicit Csv(const std::string& header) : body("# schema=1\n" + header + "\n") {}
  void row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) body += ',';
      body += cells[i];
    }
    body += '\n';
  }
};

std::string fmt(double v) { return format_double(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }

struct ReportBuilder {
  ojson doc;
  bool all_pass = true;

  ReportBuilder(const std::string& experiment, const ExperimentConfig& cfg) {
    doc["experiment"] = experiment;
    doc["seed"] = cfg.seed;
    doc["threads"] = cfg.threads;
    ojson conf = ojson::object();
    for (const auto& [k, v] : cfg.kv) conf[k] = v;
    doc["config"] = conf;
    doc["assertions"] = ojson::array();
    doc["metrics"] = ojson::object();
  }

  void check(const std::string& name, bool pass, const std::string& detail) {
    doc["assertions"].push_back(
        ojson{{"name", name}, {"pass", pass}, {"detail", detail}});
    if (!pass) all_pass = false;
  }

  void metric(const std::string& name, double value) { doc["metrics"][name] = value; }

  std::string finish() {
    doc["status"] = all_pass ? "pass" : "fail";
    return doc.dump(2) + "\n";
  }
};

// Pinned reference values for the supporting numeric oracles; every run emits
// them so drift in the foundations is visible next to the experiment output.
std::string make_fixtures_json() {
  ojson doc = ojson::array();
  auto pin = [&doc](const std::string& op, const std::string& inputs, double computed,
                    double reference) {
    doc.push_back(ojson{{"operation", op},
                        {"inputs", inputs},
                        {"computed", computed},
                        {"reference", reference},
                        {"abs_diff", std::fabs(computed - reference)}});
  };

  pin("invgauss_heat", "x=0, y=0, t=1, n=1",
      invgauss_heat({0.0}, {0.0}, 1.0), 0.22320643594977561);
  pin("gamma_integral", "a=2, lam=3", gamma_integral(2.0, 3.0), 1.0 / 9.0);
  pin("gamma_integral", "a=0.5, lam=2", gamma_integral(0.5, 2.0),
      std::sqrt(3.14159265358979323846 / 2.0));
  pin("hermite", "k=3, u=2", hermite(3, 2.0), 40.0);
  pin("hermite_tilde", "k=(2), x=(0)", hermite_tilde({2}, {0.0}), -2.0);
  pin("hermite_tilde_l2_norm", "k=(3)", hermite_tilde_l2_norm({3}),
      std::sqrt(3.14159265358979323846 * 8.0 * 6.0));
  pin("stirling2", "N=5, l=3", static_cast<double>(stirling2(5, 3)), 25.0);
  {
    FDResult r = fd_time_derivative([](double t) { return std::sin(t); }, 0.7, 2);
    pin("fd_time_derivative", "F=sin, t=0.7, m=2", r.value, -std::sin(0.7));
  }
  pin("weyl_integral", "F=e^{-2t}, t=0.3, alpha=0.5",
      weyl_integral([](double t) { return std::exp(-2.0 * t); }, 0.3, 0.5),
      std::sqrt(2.0) * std::exp(-0.6));
  return doc.dump(2) + "\n";
}

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

HermiteExpansion single_mode(int n, const MultiIndex& k, double c = 1.0) {
  HermiteExpansion f;
  f.n = n;
  f.vdim = 1;
  f.terms[k] = {c};
  return f;
}

HermiteExpansion random_expansion(int n, int maxdeg, Rng& rng) {
  HermiteExpansion f;
  f.n = n;
  f.vdim = 1;
  for (const MultiIndex& k : multiindices_up_to_degree(n, maxdeg))
    f.terms[k] = {rng.uniform(-1.0, 1.0)};
  return f;
}

double coefficient(const HermiteExpansion& f, const MultiIndex& k) {
  auto it = f.terms.find(k);
  return it == f.terms.end() ? 0.0 : it->second[0];
}

}  // namespace

// ---------------------------------------------------------------------------
// teuwen-verify: the corrected time-derivative identity for the Mehler kernel
// ---------------------------------------------------------------------------

ExperimentReport run_teuwen_verify(const ExperimentConfig& cfg) {
  ReportBuilder report("teuwen-verify", cfg);
  Csv csv("check,m,n,points,mismatches,control_mismatches,max_rel_err");

  int points = cfg.geti("teuwen.points", 200);
  int m_fd_max = cfg.geti("teuwen.m_fd_max", 4);
  if (points < 1 || m_fd_max < 1 || m_fd_max > kMaxTimeOrder)
    throw config_error("teuwen: points and m_fd_max must be positive (m_fd_max <= " +
                       std::to_string(kMaxTimeOrder) + ")");

  // exact comparison in Q[x, y, E, R]: the closed form against repeated
  // symbolic differentiation, plus the sign-flipped negative control
  int total_control = 0;
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 2; ++n) {
      TermTable canonical = symbolic_mehler_dt(m, n);
      int mismatches = term_table_mismatches(canonical, mehler_dt_term_table(m, n, true));
      int control = term_table_mismatches(canonical, mehler_dt_term_table(m, n, false));
      total_control += control;
      csv.row({"symbolic", fmt(m), fmt(n), "0", fmt(mismatches), fmt(control), "0"});
      report.check("symbolic_identity_m" + std::to_string(m) + "_n" + std::to_string(n),
                   mismatches == 0,
                   std::to_string(mismatches) + " mismatching monomials");
      if (m >= 1)
        report.check("negative_control_m" + std::to_string(m) + "_n" + std::to_string(n),
                     control >= 1,
                     "sign-flipped variant differs on " + std::to_string(control) +
                         " monomials");
    }
  }
  report.metric("control_mismatch_total", total_control);

  // numeric cross-check at random points. Direct central differences of order
  // m amplify roundoff like h^{-m}, so order 1 validates m = 1 against the
  // kernel itself and each higher order against the closed form one order
  // below (inductive chain, FD stays first order throughout).
  double fd_worst = 0.0;
  for (int m = 1; m <= m_fd_max; ++m) {
    for (int n = 1; n <= 2; ++n) {
      std::vector<double> errs(points);
      parallel_for(points, cfg.threads, [&](std::size_t i) {
        Rng local(cfg.seed ^ fnv1a("teuwen-pt/" + std::to_string(m) + "/" +
                                   std::to_string(n) + "/" + std::to_string(i)));
        std::vector<double> x(n), y(n);
        for (int d = 0; d < n; ++d) x[d] = local.uniform(-2.0, 2.0);
        for (int d = 0; d < n; ++d) y[d] = local.uniform(-2.0, 2.0);
        double t = local.log_uniform(0.1, 3.0);
        double closed = dt_m_ou(x, y, t, m);
        FDScheme scheme;
        scheme.base_step = std::min(0.01, 0.2 * t);
        FDResult fd = fd_time_derivative(
            [&](double u) {
              return m == 1 ? mehler_ou(x, y, u) : dt_m_ou(x, y, u, m - 1);
            },
            t, 1, scheme);
        double scale = std::max({std::fabs(closed), std::fabs(fd.value), 1e-10});
        errs[i] = std::fabs(closed - fd.value) / scale;
      });
      double worst = *std::max_element(errs.begin(), errs.end());
      fd_worst = std::max(fd_worst, worst);
      csv.row({"fd", fmt(m), fmt(n), fmt(points), "0", "0", fmt(worst)});
      report.check("fd_crosscheck_m" + std::to_string(m) + "_n" + std::to_string(n),
                   worst <= 1e-7, "max relative error " + format_double(worst));
    }
  }
  report.metric("fd_max_rel_err", fd_worst);

  ExperimentReport out;
  out.exit_code = report.all_pass ? 0 : 2;
  out.summary_json = report.finish();
  out.csv_files.emplace_back("teuwen.csv", csv.body);
  out.fixtures_json = make_fixtures_json();
  return out;
}

// ---------------------------------------------------------------------------
// gfun-constants: fitted norm-equivalence constants across (p, q, beta)
// ---------------------------------------------------------------------------

ExperimentReport run_gfun_constants(const ExperimentConfig& cfg) {
  ReportBuilder report("gfun-constants", cfg);
  Csv csv("q,beta,p,member,upper,lower,skipped");

  int n = cfg.geti("gfun.n", 1);
  std::string corpus_sel = cfg.gets("gfun.corpus", "eigen:6");
  std::vector<double> q_list = cfg.getlist("gfun.q_list", {2.0});
  std::vector<double> beta_list = cfg.getlist("gfun.beta_list", {0.5, 1.0, 2.0});
  std::vector<double> p_list = cfg.getlist("gfun.p_list", {2.0});
  std::string semi = cfg.gets("gfun.semigroup", "heat");

  if (n < 1 || n > 3) throw config_error("gfun.n must lie in [1, 3]");
  for (double q : q_list)
    if (q <= 1.0)
      throw config_error("gfun.q_list: q must exceed 1 (L^q(dt/t) with q <= 1 "
                         "is outside the admissible range)");
  for (double p : p_list) {
    if (p < 1.0) throw config_error("gfun.p_list: p must be >= 1");
    if (p == 1.0 && !corpus_supports_p1(corpus_sel))
      throw config_error("gfun: p = 1 requires a super-Gaussian corpus "
                         "(selector 'supergauss')");
  }

  SemigroupTag tag;
  if (semi == "heat") tag = SemigroupTag::heat_A;
  else if (semi == "poisson") tag = SemigroupTag::poisson_A;
  else if (semi == "poisson_shift") tag = SemigroupTag::poisson_A_minus_I;
  else throw config_error("gfun.semigroup must be heat, poisson, or poisson_shift");

  auto corpus = make_corpus(corpus_sel, n, cfg.seed);
  bool eigen_corpus = corpus_sel.rfind("eigen", 0) == 0;

  SpaceGrid sgrid = gauss_hermite_grid(cfg.geti("gfun.space_points", 60), n,
                                       std::vector<double>(n, 0.0), 1.0,
                                       MeasureTag::inverse_gauss);
  TimeGrid tgrid = make_time_grid(cfg.getd("gfun.t_min", 1e-10),
                                  cfg.getd("gfun.t_max", 64.0),
                                  cfg.geti("gfun.time_points", 8192));

  double closed_form_worst = 0.0;
  for (double q : q_list) {
    for (double beta : beta_list) {
      GFunctionSpec spec;
      spec.beta = beta;
      spec.k = MultiIndex(n, 0);
      spec.q = q;
      spec.semigroup_tag = tag;
      for (double p : p_list) {
        RatioReport rr = ratio_probe(spec, corpus, p, sgrid, tgrid);
        for (const RatioRecord& rec : rr.records)
          csv.row({fmt(q), fmt(beta), fmt(p), fmt(rec.member), fmt(rec.upper),
                   fmt(rec.lower), rec.skipped ? "1" : "0"});
        std::string combo = "q" + format_double(q) + "_b" + format_double(beta) +
                            "_p" + format_double(p);
        report.metric("max_upper_" + combo, rr.max_upper);
        report.metric("max_lower_" + combo, rr.max_lower);
        report.check("finite_constants_" + combo,
                     std::isfinite(rr.max_upper) && std::isfinite(rr.max_lower) &&
                         rr.max_upper > 0.0 && rr.max_lower > 0.0,
                     "upper " + format_double(rr.max_upper) + ", lower " +
                         format_double(rr.max_lower));

        // eigenfunctions: the ratio has the exact value Gamma(q b)^{1/q} q^{-b},
        // independent of the eigenvalue and of p
        if (eigen_corpus && (tag == SemigroupTag::heat_A || tag == SemigroupTag::poisson_A)) {
          double expected =
              std::exp(std::lgamma(q * beta) / q - beta * std::log(q));
          double worst = 0.0;
          for (const RatioRecord& rec : rr.records)
            if (!rec.skipped) worst = std::max(worst, rel_err(rec.upper, expected));
          closed_form_worst = std::max(closed_form_worst, worst);
          report.check("eigen_closed_form_" + combo, worst <= 1e-4,
                       "max deviation from Gamma(qb)^{1/q} q^{-b}: " +
                           format_double(worst));
        }
      }
    }
  }
  if (eigen_corpus) report.metric("eigen_closed_form_max_rel_err", closed_form_worst);

  ExperimentReport out;
  out.exit_code = report.all_pass ? 0 : 2;
  out.summary_json = report.finish();
  out.csv_files.emplace_back("gfun_constants.csv", csv.body);
  out.fixtures_json = make_fixtures_json();
  return out;
}

// ---------------------------------------------------------------------------
// weak11-growth: lower-bound proxy on the counterexample slabs J(z)
// ---------------------------------------------------------------------------

ExperimentReport run_weak11_growth(const ExperimentConfig& cfg) {
  ReportBuilder report("weak11-growth", cfg);
  Csv csv("k,eta,log_min_g,log_measure,log_proxy");

  int n = cfg.geti("weak11.n", 1);
  if (n != 1) throw config_error("weak11.n: only n = 1 is supported");
  std::vector<double> eta_list = cfg.getlist("weak11.eta_list", {2, 3, 4, 5, 6, 7, 8});
  std::vector<double> k_list = cfg.getlist("weak11.k_list", {3, 0});
  int samples = cfg.geti("weak11.samples", 64);
  double q = cfg.getd("weak11.q", 2.0);
  if (samples < 2) throw config_error("weak11.samples must be at least 2");
  if (!std::is_sorted(eta_list.begin(), eta_list.end()))
    throw config_error("weak11.eta_list must be increasing");

  TimeGrid tgrid = make_time_grid(cfg.getd("weak11.t_min", 1e-5),
                                  cfg.getd("weak11.t_max", 8.0),
                                  cfg.geti("weak11.time_points", 192));

  for (double kd : k_list) {
    int kdeg = static_cast<int>(kd);
    if (kdeg < 0 || kdeg > kMaxSpaceOrder)
      throw config_error("weak11.k_list: orders must lie in [0, " +
                         std::to_string(kMaxSpaceOrder) + "]");
    MultiIndex k(1, kdeg);
    std::vector<double> proxy(eta_list.size());
    for (size_t ei = 0; ei < eta_list.size(); ++ei) {
      JRegion region;
      region.eta = eta_list[ei];
      region.n = 1;
      std::vector<double> z = region.z();

      // the minimum of g over the slab interval sits at or near an endpoint
      // where |d log g / dx| ~ 2x, so random draws inject O(2x / samples)
      // log-noise into the trend; an endpoint-inclusive equispaced grid keeps
      // the minimizer deterministic
      double zn = region.z_norm();
      double lo = 4.0 * zn / 3.0;
      double step = (1.5 * zn - lo) / (samples - 1);
      std::vector<double> gvals(samples);
      parallel_for(samples, cfg.threads, [&](std::size_t i) {
        std::vector<double> x{lo + i * step};
        // g-function of the Dirac limit of the bump at z, normalized to unit
        // mass in gamma_{-1}: the normalization contributes a factor
        // 1 / (pi^{n/2} e^{|z|^2}), applied below in log space
        gvals[i] = time_lq_norm(tgrid, [&](double t) {
          return std::pow(t, 1.0 + kdeg) * poisson_dtm_dxk(x, z, t, 1, k);
        }, q);
      });
      double min_g = *std::min_element(gvals.begin(), gvals.end());
      if (!(min_g > 0.0) || !std::isfinite(min_g))
        throw evaluation_error("weak11: degenerate g minimum on J(z), eta = " +
                               format_double(eta_list[ei]));
      double z2 = 0.0;
      for (double zi : z) z2 += zi * zi;
      double log_min_g =
          std::log(min_g) - z2 - 0.5 * n * std::log(3.14159265358979323846);
      double log_measure = region.log_measure();
      proxy[ei] = log_min_g + log_measure;
      csv.row({fmt(kdeg), fmt(eta_list[ei]), fmt(log_min_g), fmt(log_measure),
               fmt(proxy[ei])});
    }

    report.metric("proxy_first_k" + std::to_string(kdeg), proxy.front());
    report.metric("proxy_last_k" + std::to_string(kdeg), proxy.back());
    if (kdeg >= 3) {
      bool increasing = true;
      for (size_t i = 1; i < proxy.size(); ++i)
        if (proxy[i] <= proxy[i - 1]) increasing = false;
      report.check("proxy_increasing_k" + std::to_string(kdeg), increasing,
                   "span " + format_double(proxy.back() - proxy.front()));
    } else {
      bool tail_nonincreasing = true;
      for (size_t i = 1; i < proxy.size(); ++i)
        if (eta_list[i - 1] >= 5.0 && proxy[i] > proxy[i - 1] + 1e-9)
          tail_nonincreasing = false;
      report.check("proxy_tail_nonincreasing_k" + std::to_string(kdeg),
                   tail_nonincreasing,
                   "span " + format_double(proxy.back() - proxy.front()));
    }
  }

  ExperimentReport out;
  out.exit_code = report.all_pass ? 0 : 2;
  out.summary_json = report.finish();
  out.csv_files.emplace_back("weak11.csv", csv.body);
  out.fixtures_json = make_fixtures_json();
  return out;
}

// ---------------------------------------------------------------------------
// bound-sample: fitted constants for the pointwise kernel estimates
// ---------------------------------------------------------------------------

ExperimentReport run_bound_sample(const ExperimentConfig& cfg) {
  ReportBuilder report("bound-sample", cfg);
  Csv csv("bound,branch,samples,fitted_constant,doubled_constant,growth,nonfinite");

  BoundParams params;
  params.n = cfg.geti("bound.n", 1);
  params.m = cfg.geti("bound.m", 1);
  params.q = cfg.getd("bound.q", 2.0);
  params.eta = cfg.getd("bound.eta", 0.9);
  params.delta = cfg.getd("bound.delta", 0.6);
  params.nu = cfg.getd("bound.nu", 1.0);
  params.tgrid = make_time_grid(cfg.getd("bound.t_min", 1e-6),
                                cfg.getd("bound.t_max", 32.0),
                                cfg.geti("bound.time_points", 384));
  double p = cfg.getd("bound.p", 2.0);
  std::size_t nsamples = static_cast<std::size_t>(cfg.geti("bound.samples", 4000));

  if (params.n < 1 || params.n > 3) throw config_error("bound.n must lie in [1, 3]");
  if (params.m < 1) throw config_error("bound.m must be positive");
  if (params.m > kMaxTimeOrder)
    throw capability_error("bound.m exceeds the supported time order cap of " +
                           std::to_string(kMaxTimeOrder));
  if (params.q <= 1.0) throw config_error("bound.q must exceed 1");
  if (nsamples < 10) throw config_error("bound.samples must be at least 10");
  // admissibility window for the exponent template behind A2
  if (!(params.eta - params.delta < 2.0 / p && 2.0 / p < params.eta + params.delta))
    throw config_error("bound: parameters must satisfy eta - delta < 2/p < "
                       "eta + delta; got eta = " + format_double(params.eta) +
                       ", delta = " + format_double(params.delta) + ", p = " +
                       format_double(p));

  struct Entry {
    std::string id;
    int branch;
  };
  std::vector<Entry> entries = {{"AcotDeriv", 0}, {"A2", 0}, {"A2", 1},
                                {"b", 0},         {"c", 0},  {"diferencia", 0}};
  if (cfg.has("bound.ids")) {
    entries.clear();
    std::stringstream ss(cfg.gets("bound.ids", ""));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      size_t colon = tok.find(':');
      if (colon == std::string::npos)
        entries.push_back({tok, 0});
      else
        entries.push_back({tok.substr(0, colon), std::stoi(tok.substr(colon + 1))});
    }
    if (entries.empty()) throw config_error("bound.ids: empty list");
  }

  std::vector<std::pair<BoundReport, BoundReport>> results(entries.size());
  parallel_for(entries.size(), cfg.threads, [&](std::size_t i) {
    BoundParams local = params;
    local.a2_branch = entries[i].branch;
    std::string tag = entries[i].id + ":" + std::to_string(entries[i].branch);
    BoundProblem prob = make_bound_problem(entries[i].id, local);
    Rng rng1(cfg.seed ^ fnv1a("bound/" + tag));
    results[i].first =
        verify_bound(entries[i].id, prob.sampler, prob.lhs, prob.rhs, nsamples, rng1);
    // doubled run re-seeds identically, so the first nsamples draws repeat and
    // the fitted constant can only move up
    Rng rng2(cfg.seed ^ fnv1a("bound/" + tag));
    results[i].second = verify_bound(entries[i].id, prob.sampler, prob.lhs, prob.rhs,
                                     2 * nsamples, rng2);
  });

  for (size_t i = 0; i < entries.size(); ++i) {
    const BoundReport& r1 = results[i].first;
    const BoundReport& r2 = results[i].second;
    double growth = (r2.fitted_constant - r1.fitted_constant) /
                    std::max(r1.fitted_constant, 1e-300);
    std::string tag = entries[i].id +
                      (entries[i].id == "A2" ? ":" + std::to_string(entries[i].branch)
                                             : std::string());
    csv.row({entries[i].id, fmt(entries[i].branch), fmt(nsamples),
             fmt(r1.fitted_constant), fmt(r2.fitted_constant), fmt(growth),
             fmt(r1.nonfinite + r2.nonfinite)});
    report.metric("fitted_" + tag, r1.fitted_constant);
    report.check("finite_" + tag,
                 std::isfinite(r1.fitted_constant) && r1.fitted_constant > 0.0,
                 "fitted constant " + format_double(r1.fitted_constant));
    report.check("stable_" + tag, growth <= 0.10,
                 "growth under sample doubling: " + format_double(growth));
    report.check("no_nonfinite_" + tag, r1.nonfinite + r2.nonfinite == 0,
                 std::to_string(r1.nonfinite + r2.nonfinite) +
                     " non-finite evaluations");
  }

  ExperimentReport out;
  out.exit_code = report.all_pass ? 0 : 2;
  out.summary_json = report.finish();
  out.csv_files.emplace_back("bounds.csv", csv.body);
  out.fixtures_json = make_fixtures_json();
  return out;
}

// ---------------------------------------------------------------------------
// spectral-identities: Riesz/semigroup algebra and Plancherel bookkeeping
// ---------------------------------------------------------------------------

ExperimentReport run_spectral_identities(const ExperimentConfig& cfg) {
  ReportBuilder report("spectral-identities", cfg);
  Csv csv("identity,n,detail,err,tol");

  int max_n = cfg.geti("spectral.max_n", 3);
  int max_deg = cfg.geti("spectral.max_degree", 10);
  if (max_n < 1 || max_n > 3) throw config_error("spectral.max_n must lie in [1, 3]");
  if (max_deg < 1 || max_deg > 2 * kDegreeCapPerDim)
    throw config_error("spectral.max_degree out of range");

  // Riesz intertwining: R_i P_t^A = P_t^{A-I} R_i, coefficient-level
  for (int n = 1; n <= max_n; ++n) {
    double worst = 0.0;
    for (const MultiIndex& k : multiindices_up_to_degree(n, max_deg)) {
      HermiteExpansion f = single_mode(n, k);
      for (int i = 0; i < n; ++i) {
        MultiIndex ke = k;
        ++ke[i];
        for (double t : {0.3, 1.0}) {
          double lhs = coefficient(riesz_transform(poisson_action(f, t, OperatorTag::A), i), ke);
          double rhs = coefficient(
              poisson_action(riesz_transform(f, i), t, OperatorTag::A_minus_I), ke);
          worst = std::max(worst, std::fabs(lhs - rhs));
        }
      }
    }
    csv.row({"intertwining", fmt(n), "deg<=" + std::to_string(max_deg), fmt(worst),
             "1e-14"});
    report.check("intertwining_n" + std::to_string(n), worst <= 1e-14,
                 "max coefficient gap " + format_double(worst));
  }

  // Riesz action pins: coefficient -1/sqrt(n+|k|) on the shifted mode
  {
    double worst = 0.0;
    for (int n = 1; n <= max_n; ++n)
      for (const MultiIndex& k : multiindices_up_to_degree(n, max_deg))
        for (int i = 0; i < n; ++i) {
          MultiIndex ke = k;
          ++ke[i];
          double got = coefficient(riesz_transform(single_mode(n, k), i), ke);
          worst = std::max(worst,
                           std::fabs(got + 1.0 / std::sqrt(n + degree(k))));
        }
    csv.row({"riesz_action", fmt(max_n), "deg<=" + std::to_string(max_deg), fmt(worst),
             "1e-15"});
    report.check("riesz_action", worst <= 1e-15,
                 "max deviation " + format_double(worst));
  }

  // Exact polarization per mode: <f, g> = 4 int (t dP_t f)(t dP_t g) dt/t,
  // right side reduced with the Gamma-integral oracle
  {
    double worst = 0.0;
    Rng rng(cfg.seed ^ fnv1a("spectral/polar"));
    for (int n = 1; n <= max_n; ++n)
      for (const MultiIndex& k : multiindices_up_to_degree(n, std::min(max_deg, 6))) {
        double c = rng.uniform(0.5, 2.0), d = rng.uniform(0.5, 2.0);
        double nrm2 = std::exp(2.0 * hermite_tilde_l2_norm_log(k));
        double rate = semigroup_rate(SemigroupTag::poisson_A, n, k);
        double lhs = c * d * nrm2;
        double rhs = 4.0 * c * d * nrm2 * rate * rate * gamma_integral(2.0, 2.0 * rate);
        worst = std::max(worst, rel_err(rhs, lhs));
      }
    csv.row({"polarization_exact", fmt(max_n), "deg<=6", fmt(worst), "1e-14"});
    report.check("polarization_exact", worst <= 1e-14,
                 "max relative gap " + format_double(worst));
  }

  // Quadrature-mediated polarization: space integral on the inverse Gaussian
  // grid, time integral on a fine log grid
  {
    int n = 1;
    Rng rng(cfg.seed ^ fnv1a("spectral/polar-quad"));
    HermiteExpansion f = random_expansion(n, 4, rng);
    HermiteExpansion g = random_expansion(n, 4, rng);
    SpaceGrid sgrid = gauss_hermite_grid(48, n, {0.0}, 1.0, MeasureTag::inverse_gauss);
    TimeGrid tgrid = make_time_grid(1e-8, 64.0, cfg.geti("spectral.time_points", 32768));
    double lhs = integrate(sgrid, [&](const std::vector<double>& x) {
      return f.evaluate_scalar(x) * g.evaluate_scalar(x);
    });
    double rhs = time_integral(tgrid, [&](double t) {
      HermiteExpansion df = weyl_time_derivative(f, t, 1.0, SemigroupTag::poisson_A);
      HermiteExpansion dg = weyl_time_derivative(g, t, 1.0, SemigroupTag::poisson_A);
      double inner = integrate(sgrid, [&](const std::vector<double>& x) {
        return df.evaluate_scalar(x) * dg.evaluate_scalar(x);
      });
      return 4.0 * t * t * inner;
    });
    double err = rel_err(rhs, lhs);
    csv.row({"polarization_quadrature", fmt(n), "deg<=4", fmt(err), "1e-6"});
    report.check("polarization_quadrature", err <= 1e-6,
                 "relative gap " + format_double(err));
  }

  // Plancherel bookkeeping for the square function, m = 1, one derivative
  {
    int n = 1, m = 1;
    MultiIndex k{1};
    Rng rng(cfg.seed ^ fnv1a("spectral/plancherel"));
    HermiteExpansion f = random_expansion(n, 4, rng);
    SpaceGrid sgrid = gauss_hermite_grid(48, n, {0.0}, 1.0, MeasureTag::inverse_gauss);
    TimeGrid tgrid = make_time_grid(1e-8, 64.0, cfg.geti("spectral.time_points", 32768));

    double closed = 0.0;
    for (const auto& [l, c] : f.terms) {
      double lam = n + degree(l);
      MultiIndex lk = l;
      lk[0] += k[0];
      double nrm2 = std::exp(2.0 * hermite_tilde_l2_norm_log(lk));
      closed += c[0] * c[0] * nrm2 * std::pow(lam, 2.0 * m) *
                std::exp(std::lgamma(2.0 * m + degree(k)) -
                         (2.0 * m + degree(k)) * std::log(2.0 * lam));
    }
    double quad = time_integral(tgrid, [&](double t) {
      double inner = integrate(sgrid, [&](const std::vector<double>& x) {
        double v = 0.0;
        for (const auto& [l, c] : f.terms) {
          double lam = n + degree(l);
          MultiIndex lk = l;
          lk[0] += k[0];
          // d_x^k d_t^m of e^{-lam t} H~_l = (-1)^{m+|k|} lam^m e^{-lam t}
          // H~_{l+k}; the overall sign drops under the square
          v += c[0] * std::pow(lam, m) * std::exp(-lam * t) * hermite_tilde(lk, x);
        }
        return v * v;
      });
      return std::pow(t, 2.0 * (m + 0.5 * degree(k))) * inner;
    });
    double err = rel_err(quad, closed);
    csv.row({"plancherel", fmt(n), "m=1,|k|=1", fmt(err), "1e-5"});
    report.check("plancherel", err <= 1e-5, "relative gap " + format_double(err));
  }

  // kernel vs spectral action of the heat semigroup
  {
    double worst = 0.0;
    for (int n = 1; n <= std::min(max_n, 2); ++n) {
      SpaceGrid ygrid = gauss_hermite_grid(n == 1 ? 80 : 48, n,
                                           std::vector<double>(n, 0.0), 1.0,
                                           MeasureTag::lebesgue);
      for (const MultiIndex& k : multiindices_up_to_degree(n, 6)) {
        double lam = n + degree(k);
        for (double t : {0.5, 1.0}) {
          std::vector<double> x(n, 0.4);
          double applied = integrate(ygrid, [&](const std::vector<double>& y) {
            return invgauss_heat(x, y, t) * hermite_tilde(k, y);
          });
          double want = std::exp(-lam * t) * hermite_tilde(k, x);
          worst = std::max(worst, std::fabs(applied - want) /
                                      std::max(std::fabs(want), 1e-12));
        }
      }
    }
    csv.row({"kernel_vs_spectral", fmt(std::min(max_n, 2)), "deg<=6", fmt(worst),
             "1e-7"});
    report.check("kernel_vs_spectral", worst <= 1e-7,
                 "max relative error " + format_double(worst));
  }

  ExperimentReport out;
  out.exit_code = report.all_pass ? 0 : 2;
  out.summary_json = report.finish();
  out.csv_files.emplace_back("spectral.csv", csv.body);
  out.fixtures_json = make_fixtures_json();
  return out;
}

ExperimentReport run_experiment(const std::string& verb, const ExperimentConfig& cfg) {
  if (verb == "teuwen-verify") return run_teuwen_verify(cfg);
  if (verb == "gfun-constants") return run_gfun_constants(cfg);
  if (verb == "weak11-growth") return run_weak11_growth(cfg);
  if (verb == "bound-sample") return run_bound_sample(cfg);
  if (verb == "spectral-identities") return run_spectral_identities(cfg);
  throw config_error("unknown experiment '" + verb + "'");
}

}  // namespace iglp
