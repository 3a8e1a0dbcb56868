#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <gyrochap/model.hpp>

namespace gyrochap::cli {

/// Malformed or inconsistent configuration; maps to exit code 2.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Flow { Reduced, Twisted, Demchenko, Full };

const char* to_string(Flow f);

struct RunOptions {
  double t_end = 10.0;
  double sample_dt = 0.01;
  double rtol = 1e-10;
  double atol = 1e-12;
  Flow flow = Flow::Reduced;
  std::size_t max_steps = 5'000'000;
};

struct Config {
  std::string family;  // "special" or "isotropic"
  RollingSpec rolling;
  std::optional<DemchenkoSpec> isotropic;
  std::optional<Vec> gamma, p;  // random initial state when absent
  RunOptions run;
  std::vector<std::string> checks;
  int sweep = 0;  // number of extra seeded runs in a batch
};

/// Parses and validates; spec_error from the model is rethrown as
/// config_error carrying the same message.
Config parse_config(const nlohmann::json& j);
Config load_config(const std::string& path);

/// Initial phase point: the configured one (projected onto T*S^{n-1}) or a
/// random one drawn from the seed.
Vec initial_state(const Config& c, std::uint64_t seed);

}  // namespace gyrochap::cli
