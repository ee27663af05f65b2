#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rspd/sim.hpp"

namespace rspd {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitUsage = 2;

/// Bad input: malformed files, invalid configurations, unsupported parameters.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds the code for (n, k), writes it as JSON (stdout when `out` is empty) and reports T and rate.
int cmd_construct(std::size_t n, std::size_t k, const std::filesystem::path& out, std::ostream& log,
                  std::ostream& stdout_sink);

/// Verifies a design file; exit 1 when any property fails.
int cmd_verify(const std::filesystem::path& design_path, std::size_t draws, std::uint64_t seed,
               const std::filesystem::path& out, std::ostream& log, std::ostream& stdout_sink);

/// CSV with one row per (n, k) in [4, n_max] x [4, k_max].
std::string table_csv(std::size_t n_max, std::size_t k_max);
int cmd_table(std::size_t n_max, std::size_t k_max, const std::filesystem::path& out, std::ostream& log,
              std::ostream& stdout_sink);

/// A named curve of a simulation run.
struct CurveSpec {
  std::string name;
  SimConfig config;
};

/// Parses a simulation config:
/// {"seed", "snr_grid", "trials_per_point", "error_target"?, "chunk"?,
///  "curves": [{"name", "design": {"construct"|"baseline": {"n","k"}} | {"path"},
///              "signal_set", "p1", "p2", "snr_scheme", "decoder"?}]}
/// Throws UsageError on any problem.
std::vector<CurveSpec> parse_sim_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

/// Rotated QPSK on X(4,4) against 16-QAM on the T = 8 orthogonal code, with the relays of the
/// latter at twice the power.
nlohmann::json fig3_preset();

struct SimulationRun {
  std::vector<std::string> names;
  std::vector<SerCurve> curves;
};
SimulationRun run_simulation(const std::vector<CurveSpec>& specs);

/// Gap (dB) between the first and second curve at the given SER, positive when the first is better.
std::optional<double> snr_gap_at(const SerCurve& better, const SerCurve& worse, double ser);

/// Runs the config, writes <out>/<name>.csv per curve and <out>/ser.json.
/// Relative design paths in the config resolve against `base_dir`.
int cmd_simulate(const nlohmann::json& config, const std::filesystem::path& out_dir, std::ostream& log,
                 const std::filesystem::path& base_dir = {});

}  // namespace rspd
