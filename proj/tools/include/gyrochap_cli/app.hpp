#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "gyrochap_cli/config.hpp"

namespace gyrochap::cli {

enum ExitCode : int {
  kOk = 0,
  kChecksFailed = 1,
  kInvalidConfig = 2,
  kIntegrationFailed = 3,
  kUncertified = 4,
};

/// trajectory.csv and drift.json in `out`; with run.sweep > 0 also
/// run_<k>/ for seeds seed+1 … seed+sweep, executed by a worker pool.
int cmd_simulate(const Config& c, const std::filesystem::path& out, std::uint64_t seed,
                 std::ostream& log);

/// verify.json in `out` (when given) and one line per check on `log`.
int cmd_verify(const Config& c, const std::filesystem::path* out, std::uint64_t seed,
               std::ostream& log);

/// demchenko.json and closed_form.csv in `out`.
int cmd_solve_demchenko(const Config& c, const std::filesystem::path& out, std::uint64_t seed,
                        std::ostream& log);

/// compare.json in `out`: reduced flow against the time-changed twisted flow.
int cmd_compare(const Config& c, const std::filesystem::path& out, std::uint64_t seed,
                std::ostream& log);

/// Full command line; never throws.
int run(int argc, const char* const* argv, std::ostream& log, std::ostream& err);

}  // namespace gyrochap::cli
