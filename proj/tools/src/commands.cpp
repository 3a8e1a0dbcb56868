#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include <gyrochap/demchenko_cf.hpp>
#include <gyrochap/full_flow.hpp>
#include <gyrochap/hamiltonization.hpp>
#include <gyrochap/integrals.hpp>
#include <gyrochap/reduced_flow.hpp>

#include "gyrochap_cli/app.hpp"
#include "gyrochap_cli/io.hpp"

namespace gyrochap::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

ode::Options ode_options(const Config& c, bool dense) {
  ode::Options o;
  o.rtol = c.run.rtol;
  o.atol = c.run.atol;
  o.sample_dt = c.run.sample_dt;
  o.keep_dense = dense;
  o.max_steps = c.run.max_steps;
  const int n = c.rolling.n;
  o.project = [n](Vec& y) { project_state(y, n); };
  return o;
}

json stats_json(const ode::Stats& s) {
  return {{"accepted", s.accepted}, {"rejected", s.rejected}, {"rhs_evals", s.rhs_evals}};
}

json drift_json(const std::vector<DriftEntry>& d) {
  json arr = json::array();
  for (const auto& e : d)
    arr.push_back({{"name", e.name},
                   {"initial", e.initial},
                   {"max_abs", e.max_abs},
                   {"max_rel", e.max_rel},
                   {"worst_time", e.worst_time}});
  return arr;
}

// integrals of the twisted system in (γ, p̃)
std::vector<Integral> twisted_suite(const RollingSpec& s) {
  std::vector<Integral> out;
  out.push_back({"h_star", [s](const Vec& y) {
                   const Vec g = y.head(s.n), p = y.tail(s.n);
                   return 0.5 * std::pow(cal_A(s, g), 1.0 - 1.0 / s.epsilon) *
                          p.dot(p.cwiseQuotient(s.a));
                 }});
  if (s.a(0) != s.a(2))
    out.push_back({"Phi_12", [s](const Vec& y) { return phi12_twisted(s, y); }});
  for (int i = 2; i < s.n; ++i)
    for (int j = i + 1; j < s.n; ++j)
      out.push_back({"Phi_" + std::to_string(i + 1) + std::to_string(j + 1),
                     [s, i, j](const Vec& y) { return y(i) * y(s.n + j) - y(j) * y(s.n + i); }});
  return out;
}

void require_isotropic(const Config& c, const char* what) {
  if (!c.isotropic) throw config_error(std::string(what) + " needs family \"isotropic\"");
}

void require_son2(const Config& c, const char* what) {
  if (!is_son2_family(c.rolling))
    throw config_error(std::string(what) +
                       " needs a3 = ... = an and kappa with only the (1,2) entry");
}

void simulate_one(const Config& c, const Vec& y0, const fs::path& dir, std::uint64_t seed) {
  const RollingSpec& s = c.rolling;
  const int n = s.n;
  fs::create_directories(dir);
  json report = {{"command", "simulate"},
                 {"flow", to_string(c.run.flow)},
                 {"n", n},
                 {"family", c.family},
                 {"epsilon", s.epsilon},
                 {"seed", seed},
                 {"t_end", c.run.t_end}};

  std::vector<std::string> cols{c.run.flow == Flow::Twisted ? "tau" : "t"};
  for (auto& x : indexed("gamma", n)) cols.push_back(x);
  for (auto& x : indexed(c.run.flow == Flow::Twisted ? "ptilde" : "p", n)) cols.push_back(x);

  ode::Trajectory tr;
  std::vector<Integral> suite;
  switch (c.run.flow) {
    case Flow::Reduced:
    case Flow::Full:
      tr = ode::integrate([&](double, const Vec& y, Vec& dy) { dy = reduced_rhs(s, y); }, 0.0, y0,
                          c.run.t_end, ode_options(c, c.run.flow == Flow::Full));
      suite = c.isotropic ? integral_suite(*c.isotropic) : integral_suite(s);
      break;
    case Flow::Demchenko: {
      require_isotropic(c, "flow demchenko");
      const DemchenkoSpec d = *c.isotropic;
      tr = ode::integrate([&](double, const Vec& y, Vec& dy) { dy = demchenko_rhs(d, y); }, 0.0,
                          y0, c.run.t_end, ode_options(c, false));
      suite = integral_suite(d);
      break;
    }
    case Flow::Twisted: {
      require_son2(c, "flow twisted");
      Vec w0 = y0;
      w0.tail(n) *= multiplier_N(s, y0.head(n));
      tr = ode::integrate([&](double, const Vec& w, Vec& dw) { dw = twisted_rhs(s, w); }, 0.0, w0,
                          c.run.t_end, ode_options(c, false));
      suite = twisted_suite(s);
      break;
    }
  }

  double norm_err = 0, tan_err = 0;
  for (const auto& y : tr.y) {
    norm_err = std::max(norm_err, std::abs(y.head(n).squaredNorm() - 1));
    tan_err = std::max(tan_err, std::abs(y.head(n).dot(y.tail(n))));
  }
  const auto drift = drift_report(suite, tr);
  double worst = 0;
  for (const auto& d : drift) worst = std::max(worst, d.max_rel);
  report["integrals"] = drift_json(drift);
  report["max_rel_drift"] = worst;
  report["constraints"] = {{"max_norm_error", norm_err}, {"max_tangency", tan_err}};
  report["stats"] = stats_json(tr.stats);

  if (c.run.flow == Flow::Full) {
    const FullTrajectory full = reconstruct_full(s, tr, Mat::Identity(n, n));
    for (auto& x : indexed("r", n)) cols.push_back(x);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) cols.push_back("g_" + std::to_string(i) + std::to_string(j));
    CsvTable csv(cols);
    for (std::size_t k = 0; k < full.samples.size(); ++k) {
      const FullSample& x = full.samples[k];
      std::vector<double> row{x.t};
      for (int i = 0; i < 2 * n; ++i) row.push_back(tr.y[k](i));
      for (int i = 0; i < n; ++i) row.push_back(x.r(i));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) row.push_back(x.g(i, j));
      csv.add(row);
    }
    const FullResiduals r = full_residuals(s, full);
    report["residuals"] = {{"orthogonality", r.orthogonality}, {"no_twist", r.no_twist},
                           {"rolling", r.rolling},           {"admissible", r.admissible},
                           {"multiplier", r.multiplier},     {"contact", r.contact}};
    write_atomic(dir / "trajectory.csv", csv.str());
  } else {
    CsvTable csv(cols);
    for (std::size_t k = 0; k < tr.size(); ++k) {
      std::vector<double> row{tr.t[k]};
      for (int i = 0; i < 2 * n; ++i) row.push_back(tr.y[k](i));
      csv.add(row);
    }
    write_atomic(dir / "trajectory.csv", csv.str());
  }
  write_json(dir / "drift.json", report);
}

}  // namespace

// ---------------------------------------------------------------------------
int cmd_simulate(const Config& c, const fs::path& out, std::uint64_t seed, std::ostream& log) {
  simulate_one(c, initial_state(c, seed), out, seed);
  log << "simulate: wrote " << (out / "trajectory.csv").string() << "\n";
  if (c.sweep == 0) return kOk;

  // batch: each worker owns run_<k>/ and nothing else
  std::atomic<int> next{0}, failed{0};
  std::mutex err_mu;
  std::string first_error;
  auto worker = [&] {
    for (int k; (k = next.fetch_add(1)) < c.sweep;) {
      const std::uint64_t sd = seed + 1 + static_cast<std::uint64_t>(k);
      Config ck = c;
      ck.gamma.reset();
      ck.p.reset();
      try {
        simulate_one(ck, initial_state(ck, sd), out / ("run_" + std::to_string(k)), sd);
      } catch (const std::exception& e) {
        ++failed;
        std::lock_guard<std::mutex> lk(err_mu);
        if (first_error.empty()) first_error = e.what();
      }
    }
  };
  const int workers = worker_count(c.sweep);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  log << "simulate: sweep of " << c.sweep << " runs on " << workers << " workers, " << failed
      << " failed\n";
  if (failed) throw integration_error(IntegrationFailure::NonFinite, 0.0, first_error);
  return kOk;
}

// ---------------------------------------------------------------------------
namespace {

struct VerifyItem {
  CheckResult result;
  bool expected = true;
};

bool closedness_expected(const RollingSpec& s) {
  if (s.n == 3 || is_son2_family(s)) return true;
  if (max_abs(kappa_or_zero(s)) == 0.0) return true;
  return classify(s) == Family::Isotropic;  // 𝒩 is constant
}

CheckResult sigma_zero_check(const RollingSpec& s, std::uint64_t seed) {
  Rng rng(seed);
  CheckResult r;
  r.name = "sigma_zero";
  r.tolerance = 1e-12;
  for (int k = 0; k < 1000; ++k) {
    const Vec g = random_unit(s.n, rng);
    const Vec X = random_tangent(g, rng), Y = random_tangent(g, rng), Z = random_tangent(g, rng);
    r.residual = std::max({r.residual, std::abs(sigma_tensor(s, g, X, Y, Z)),
                           gyro_tensor_C(s, g, X, Y).cwiseAbs().maxCoeff()});
  }
  r.pass = r.residual <= r.tolerance;
  r.detail = "max |Sigma|, |C| at 1000 random points";
  return r;
}

CheckResult integrals_check(const Config& c, std::uint64_t seed) {
  const RollingSpec& s = c.rolling;
  const Vec y0 = initial_state(c, seed);
  const auto tr = ode::integrate([&](double, const Vec& y, Vec& dy) { dy = reduced_rhs(s, y); },
                                 0.0, y0, c.run.t_end, ode_options(c, false));
  const auto d = drift_report(c.isotropic ? integral_suite(*c.isotropic) : integral_suite(s), tr);
  CheckResult r;
  r.name = "integrals";
  r.tolerance = 1e-8;
  std::ostringstream os;
  for (const auto& e : d) {
    r.residual = std::max(r.residual, e.max_rel);
    os << e.name << " " << e.max_rel << "; ";
  }
  r.pass = r.residual <= r.tolerance;
  r.detail = os.str();
  return r;
}

CheckResult hamiltonization_check(const Config& c, std::uint64_t seed) {
  ode::Options o;
  o.rtol = std::min(c.run.rtol, 1e-11);
  o.atol = std::min(c.run.atol, 1e-13);
  const auto rep =
      hamiltonization_equivalence(c.rolling, initial_state(c, seed), std::min(c.run.t_end, 20.0), o);
  CheckResult r;
  r.name = "hamiltonization";
  r.tolerance = 1e-6;
  r.residual = rep.max_gamma_error;
  r.pass = r.residual <= r.tolerance;
  r.detail = "reduced vs twisted gamma sup-norm";
  return r;
}

}  // namespace

int cmd_verify(const Config& c, const fs::path* out, std::uint64_t seed, std::ostream& log) {
  const RollingSpec& s = c.rolling;
  std::vector<std::string> names = c.checks;
  if (names.empty()) {
    names = {"measure", "theta", "phi_simple", "closedness", "integrals"};
    if (std::abs(s.epsilon - 0.5) < 1e-15) names.push_back("sigma_zero");
    if (is_son2_family(s)) names.push_back("hamiltonization");
  }
  std::vector<VerifyItem> items;
  for (const auto& name : names) {
    VerifyItem it;
    if (name == "measure") {
      it.result = check_measure(s, seed, 1000);
    } else if (name == "theta") {
      it.result = theta_form_check(s, seed);
    } else if (name == "phi_simple") {
      it.result = check_phi_simple(s, seed, 500, 1e-9);
    } else if (name == "closedness") {
      it.result = check_magnetic_closedness(s, seed);
      it.expected = closedness_expected(s);
    } else if (name == "sigma_zero") {
      it.result = sigma_zero_check(s, seed);
      it.expected = std::abs(s.epsilon - 0.5) < 1e-15;
    } else if (name == "integrals") {
      it.result = integrals_check(c, seed);
    } else if (name == "hamiltonization") {
      require_son2(c, "check hamiltonization");
      it.result = hamiltonization_check(c, seed);
    } else {
      throw config_error("unknown check \"" + name + "\"");
    }
    it.result.name = name;
    items.push_back(it);
  }

  bool ok = true;
  json arr = json::array();
  for (const auto& it : items) {
    const bool as_expected = it.result.pass == it.expected;
    ok = ok && as_expected;
    log << (it.result.pass ? "PASS " : "FAIL ") << it.result.name << " residual "
        << it.result.residual << " tol " << it.result.tolerance << " (expected "
        << (it.expected ? "PASS" : "FAIL") << ")\n";
    arr.push_back({{"name", it.result.name},
                   {"pass", it.result.pass},
                   {"expected", it.expected ? "PASS" : "FAIL"},
                   {"as_expected", as_expected},
                   {"residual", it.result.residual},
                   {"tolerance", it.result.tolerance},
                   {"detail", it.result.detail}});
  }
  if (out) {
    fs::create_directories(*out);
    write_json(*out / "verify.json", {{"command", "verify"},
                                       {"n", s.n},
                                       {"family", c.family},
                                       {"epsilon", s.epsilon},
                                       {"seed", seed},
                                       {"checks", arr},
                                       {"all_as_expected", ok}});
  }
  return ok ? kOk : kChecksFailed;
}

// ---------------------------------------------------------------------------
int cmd_solve_demchenko(const Config& c, const fs::path& out, std::uint64_t seed,
                        std::ostream& log) {
  using namespace demchenko;
  require_isotropic(c, "solve-demchenko");
  const DemchenkoSpec& d = *c.isotropic;
  if (d.n != 3 && d.n != 4) throw config_error("solve-demchenko needs n = 3 or n = 4");
  const int n = d.n;
  const Vec y0 = initial_state(c, seed);
  const Invariants inv = invariants(d, y0);
  const Cubic P = cubic(d, inv);
  const RootAnalysis ra = analyze_roots(P);

  json rep = {{"command", "solve-demchenko"},
              {"n", n},
              {"seed", seed},
              {"invariants", {{"h", inv.h}, {"phi12", inv.phi12}, {"phi34", inv.phi34}}},
              {"cubic", {{"a0", P.a0}, {"a1", P.a1}, {"a2", P.a2}, {"a3", P.a3}}},
              {"roots", ra.roots},
              {"case_tag", to_string(ra.tag)},
              {"u_bounds", {ra.u_lo, ra.u_hi}},
              {"annulus", {std::sqrt(ra.u_lo), std::sqrt(ra.u_hi)}}};
  if (n == 3) {
    const N3Conditions nc = n3_conditions(d, inv);
    rep["n3_conditions"] = {{"case_a", nc.case_a},
                            {"case_b", nc.case_b},
                            {"discriminant_zero", nc.discriminant_zero},
                            {"boundary_zero", nc.boundary_zero}};
  }

  bool uncertified = false;
  if (ra.quadratic) {
    rep["certification"] = {{"status", "not_applicable"}, {"reason", "a0 = 0"}};
  } else {
    const Invariants2 wi = weierstrass_invariants(P);
    const Certification cert = certify_invariants(P, seed, 100);
    rep["weierstrass"] = {{"g2", wi.g2}, {"g3", wi.g3}, {"g3_variant", wi.g3_variant}};
    rep["certification"] = {{"residual", cert.residual},
                            {"residual_variant", cert.residual_variant},
                            {"pass", cert.pass},
                            {"variant_pass", cert.variant_pass},
                            {"status", cert.pass           ? "derived"
                                       : cert.variant_pass ? "variant"
                                                           : "uncertified"}};
    uncertified = !cert.pass && !cert.variant_pass;
  }

  std::optional<ClosedForm> cf;
  try {
    cf.emplace(d, y0);
  } catch (const gyrochap::domain_error& e) {
    rep["error"] = e.what();
    fs::create_directories(out);
    write_json(out / "demchenko.json", rep);
    log << "solve-demchenko: " << e.what() << "\n";
    return kUncertified;
  }
  rep["branch"] = to_string(cf->branch());
  rep["period"] = std::isfinite(cf->period()) ? json(cf->period()) : json(nullptr);
  rep["phi1_increment"] = cf->phi1_increment();
  if (cf->branch() == Branch::Stationary && n == 4) {
    const Stationary st = stationary_solution(d, inv, cf->u(0.0));
    rep["stationary"] = {{"u1", st.u1},
                         {"alpha1", st.alpha1},
                         {"alpha3", st.alpha3},
                         {"constraint_residual", st.constraint_residual}};
  }

  ode::Options o = ode_options(c, false);
  o.rtol = std::min(o.rtol, 1e-12);
  o.atol = std::min(o.atol, 1e-13);
  const auto tr = ode::integrate([&](double, const Vec& y, Vec& dy) { dy = demchenko_rhs(d, y); },
                                 0.0, y0, c.run.t_end, o);
  std::vector<std::string> cols{"t", "u"};
  for (auto& x : indexed("gamma", n)) cols.push_back(x);
  for (auto& x : indexed("p", n)) cols.push_back(x);
  CsvTable csv(cols);
  double disc = 0;
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const Vec z = cf->state(tr.t[k]);
    disc = std::max(disc, (z - tr.y[k]).cwiseAbs().maxCoeff());
    std::vector<double> row{tr.t[k], cf->u(tr.t[k])};
    for (int i = 0; i < 2 * n; ++i) row.push_back(z(i));
    csv.add(row);
  }
  rep["discrepancy"] = disc;
  fs::create_directories(out);
  write_atomic(out / "closed_form.csv", csv.str());
  write_json(out / "demchenko.json", rep);
  log << "solve-demchenko: " << to_string(ra.tag) << ", branch " << to_string(cf->branch())
      << ", discrepancy " << disc << "\n";
  return uncertified ? kUncertified : kOk;
}

// ---------------------------------------------------------------------------
int cmd_compare(const Config& c, const fs::path& out, std::uint64_t seed, std::ostream& log) {
  require_son2(c, "compare");
  ode::Options o;
  o.rtol = c.run.rtol;
  o.atol = c.run.atol;
  const auto rep = hamiltonization_equivalence(c.rolling, initial_state(c, seed), c.run.t_end, o,
                                               c.run.sample_dt);
  const bool pass = rep.max_gamma_error <= 1e-6;
  fs::create_directories(out);
  write_json(out / "compare.json", {{"command", "compare"},
                                    {"n", c.rolling.n},
                                    {"seed", seed},
                                    {"t_end", c.run.t_end},
                                    {"tau_end", rep.tau_end},
                                    {"samples", rep.samples},
                                    {"max_gamma_error", rep.max_gamma_error},
                                    {"worst_time", rep.worst_time},
                                    {"tolerance", 1e-6},
                                    {"pass", pass}});
  log << "compare: max gamma error " << rep.max_gamma_error << "\n";
  return pass ? kOk : kChecksFailed;
}

// ---------------------------------------------------------------------------
int run(int argc, const char* const* argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"gyroscopic Chaplygin ball rolling over a sphere"};
  app.require_subcommand(1);
  std::string config;
  std::string out;
  std::uint64_t seed = 1;
  auto add = [&](const char* name, const char* help, bool needs_out) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "JSON configuration")->required();
    auto* o = sub->add_option("--out", out, "output directory");
    if (needs_out) o->required();
    sub->add_option("--seed", seed, "seed for random states and checks");
    return sub;
  };
  CLI::App* sim = add("simulate", "integrate a flow and report drift", true);
  CLI::App* ver = add("verify", "run structural checks", false);
  CLI::App* sol = add("solve-demchenko", "closed-form isotropic solution", true);
  CLI::App* cmp = add("compare", "reduced flow against the twisted Hamiltonian flow", true);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, log, err);
    return code == 0 ? kOk : kInvalidConfig;
  }
  try {
    const Config c = load_config(config);
    const fs::path dir(out);
    if (sim->parsed()) return cmd_simulate(c, dir, seed, log);
    if (ver->parsed()) return cmd_verify(c, out.empty() ? nullptr : &dir, seed, log);
    if (sol->parsed()) return cmd_solve_demchenko(c, dir, seed, log);
    if (cmp->parsed()) return cmd_compare(c, dir, seed, log);
  } catch (const config_error& e) {
    err << "invalid config: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const integration_error& e) {
    err << "integration failed at t = " << e.time() << ": " << e.what() << "\n";
    return kIntegrationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIntegrationFailed;
  }
  return kInvalidConfig;
}

}  // namespace gyrochap::cli
