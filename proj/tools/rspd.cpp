#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rspd/commands.hpp"
#include "rspd/manifest.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Semi-orthogonal precoded distributed single-symbol-decodable STBC toolkit"};
  app.set_version_flag("--version", rspd::toolkit_version());
  app.require_subcommand(1);

  std::size_t n = 0, k = 0, draws = 20, n_max = 12, k_max = 12;
  std::uint64_t seed = 20240601;
  std::string out, design_path, config_path, preset;

  auto* construct = app.add_subcommand("construct", "Build the code for (n, k) and write it as JSON");
  construct->add_option("--n", n, "Number of symbols")->required();
  construct->add_option("--k", k, "Number of relays")->required();
  construct->add_option("--out", out, "Output design file (stdout when omitted)");

  auto* verify = app.add_subcommand("verify", "Check every decodability and structure property of a design");
  verify->add_option("design", design_path, "Design JSON file")->required();
  verify->add_option("--draws", draws, "Random channel draws")->capture_default_str();
  verify->add_option("--seed", seed, "Seed for the channel draws")->capture_default_str();
  verify->add_option("--out", out, "Report file (stdout when omitted)");

  auto* table = app.add_subcommand("table", "Rate bounds and minimum lengths as CSV");
  table->add_option("--n", n_max, "Largest number of symbols")->capture_default_str();
  table->add_option("--k", k_max, "Largest number of relays")->capture_default_str();
  table->add_option("--out", out, "Output CSV (stdout when omitted)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo symbol error rate curves");
  auto* cfg_opt = simulate->add_option("--config", config_path, "Simulation config JSON");
  simulate->add_option("--preset", preset, "Built-in config")->check(CLI::IsMember({"fig3"}))->excludes(cfg_opt);
  simulate->add_option("--seed", seed, "Override the config seed");
  simulate->add_option("--out", out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? rspd::kExitOk : rspd::kExitUsage;
  }

  try {
    if (*construct) return rspd::cmd_construct(n, k, out, std::cerr, std::cout);
    if (*verify) return rspd::cmd_verify(design_path, draws, seed, out, std::cerr, std::cout);
    if (*table) return rspd::cmd_table(n_max, k_max, out, std::cerr, std::cout);
    if (*simulate) {
      nlohmann::json cfg;
      std::filesystem::path base;
      if (!preset.empty()) {
        cfg = rspd::fig3_preset();
      } else if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw rspd::UsageError("cannot open " + config_path);
        try {
          cfg = nlohmann::json::parse(f);
        } catch (const nlohmann::json::exception& e) {
          throw rspd::UsageError(config_path + ": " + e.what());
        }
        base = std::filesystem::path(config_path).parent_path();
      } else {
        throw rspd::UsageError("simulate needs --config or --preset");
      }
      if (simulate->count("--seed")) cfg["seed"] = seed;
      return rspd::cmd_simulate(cfg, out, std::cerr, base);
    }
  } catch (const rspd::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rspd::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rspd::kExitUsage;
  }
  return rspd::kExitUsage;
}
