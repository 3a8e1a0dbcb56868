#include "gyrochap_cli/config.hpp"

#include <fstream>

#include <gyrochap/reduced_flow.hpp>
#include <gyrochap/sampling.hpp>

namespace gyrochap::cli {

using nlohmann::json;

const char* to_string(Flow f) {
  switch (f) {
    case Flow::Reduced: return "reduced";
    case Flow::Twisted: return "twisted";
    case Flow::Demchenko: return "demchenko";
    case Flow::Full: return "full";
  }
  return "unknown";
}

namespace {

template <class T>
T get(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) throw config_error(std::string(where) + "." + key + " is required");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw config_error(std::string(where) + "." + key + ": " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const char* where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

Vec vec_of(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Mat kappa_of(const json& sys, int n) {
  Mat K = Mat::Zero(n, n);
  if (!sys.contains("kappa")) return K;
  const json& k = sys.at("kappa");
  if (!k.is_array()) throw config_error("system.kappa must be a list of [i, j, value]");
  for (const json& e : k) {
    if (!e.is_array() || e.size() != 3)
      throw config_error("system.kappa entries are [i, j, value] with 1-based i, j");
    const int i = e[0].get<int>() - 1, jj = e[1].get<int>() - 1;
    const double v = e[2].get<double>();
    if (i < 0 || jj < 0 || i >= n || jj >= n || i == jj)
      throw config_error("system.kappa index out of range");
    K(i, jj) += v;
    K(jj, i) -= v;
  }
  return K;
}

Flow flow_of(const std::string& s) {
  if (s == "reduced") return Flow::Reduced;
  if (s == "twisted") return Flow::Twisted;
  if (s == "demchenko") return Flow::Demchenko;
  if (s == "full" || s == "full-reconstructed") return Flow::Full;
  throw config_error("run.flow must be reduced, twisted, demchenko or full");
}

}  // namespace

Config parse_config(const json& j) {
  if (!j.is_object()) throw config_error("config must be a JSON object");
  if (!j.contains("system")) throw config_error("system is required");
  const json& sys = j.at("system");
  Config c;
  const int n = get<int>(sys, "n", "system");
  if (n < 3) throw config_error("system.n must be at least 3");
  c.family = get_or<std::string>(sys, "family", "special", "system");
  const double eps = get_or<double>(sys, "epsilon", 1.0, "system");
  const Mat K = kappa_of(sys, n);
  try {
    if (c.family == "isotropic") {
      DemchenkoSpec d;
      d.n = n;
      d.tau = get<double>(sys, "tau", "system");
      d.epsilon = eps;
      d.kappa = K;
      c.isotropic = validate_spec(d);
      c.rolling = as_rolling(*c.isotropic);
    } else if (c.family == "special") {
      RollingSpec s;
      s.n = n;
      const auto a = get<std::vector<double>>(sys, "a", "system");
      if (static_cast<int>(a.size()) != n) throw config_error("system.a must have n entries");
      s.a = vec_of(a);
      s.D = get_or<double>(sys, "D", 0.0, "system");
      s.epsilon = eps;
      s.kappa = K;
      if (sys.contains("radii")) {
        const json& r = sys.at("radii");
        s.radii = Radii{get<double>(r, "ball", "system.radii"), get<double>(r, "sphere", "system.radii"),
                        get_or<int>(r, "sign", 1, "system.radii")};
        if (!sys.contains("epsilon"))
          s.epsilon = s.radii->sphere / (s.radii->sphere + s.radii->sign * s.radii->ball);
      }
      c.rolling = validate_spec(s);
    } else {
      throw config_error("system.family must be \"special\" or \"isotropic\"");
    }
  } catch (const spec_error& e) {
    throw config_error(e.what());
  }

  if (j.contains("initial")) {
    const json& ini = j.at("initial");
    const auto g = get<std::vector<double>>(ini, "gamma", "initial");
    const auto p = get<std::vector<double>>(ini, "p", "initial");
    if (static_cast<int>(g.size()) != n || static_cast<int>(p.size()) != n)
      throw config_error("initial.gamma and initial.p must have n entries");
    c.gamma = vec_of(g);
    c.p = vec_of(p);
    if (!(c.gamma->norm() > 0)) throw config_error("initial.gamma must be nonzero");
    if (!c.gamma->allFinite() || !c.p->allFinite()) throw config_error("initial state must be finite");
  }
  if (j.contains("run")) {
    const json& r = j.at("run");
    c.run.t_end = get_or<double>(r, "t_end", c.run.t_end, "run");
    c.run.sample_dt = get_or<double>(r, "sample_dt", c.run.sample_dt, "run");
    c.run.rtol = get_or<double>(r, "rtol", c.run.rtol, "run");
    c.run.atol = get_or<double>(r, "atol", c.run.atol, "run");
    c.run.flow = flow_of(get_or<std::string>(r, "flow", "reduced", "run"));
    c.sweep = get_or<int>(r, "sweep", 0, "run");
    c.run.max_steps = get_or<std::size_t>(r, "max_steps", c.run.max_steps, "run");
  }
  if (!(c.run.t_end > 0) || !(c.run.sample_dt > 0) || !(c.run.rtol > 0) || !(c.run.atol > 0))
    throw config_error("run.t_end, run.sample_dt, run.rtol and run.atol must be positive");
  if (c.sweep < 0) throw config_error("run.sweep must be non-negative");
  if (j.contains("checks")) c.checks = get<std::vector<std::string>>(j, "checks", "config");
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw config_error(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

Vec initial_state(const Config& c, std::uint64_t seed) {
  const int n = c.rolling.n;
  if (c.gamma) {
    Vec y = pack(*c.gamma, *c.p);
    project_state(y, n);
    return y;
  }
  Rng rng(seed);
  return random_phase_point(n, rng);
}

}  // namespace gyrochap::cli
