#include "rspd/commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rspd/bounds.hpp"
#include "rspd/constructor.hpp"
#include "rspd/design_io.hpp"
#include "rspd/manifest.hpp"
#include "rspd/verifier.hpp"

namespace rspd {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw UsageError("failed writing " + path.string());
}

// Second-phase length of the construction, from the symbolic form only.
std::size_t constructed_slots(std::size_t n, std::size_t k) {
  const std::size_t b = n % 4, n4 = n - b;
  std::size_t t = 0;
  if (n4 > 0) t += (k % 4 == 0 ? case1_symbolic(n4, k) : case2_symbolic(n4, k)).cols();
  if (b > 0) t += dostbc_symbolic(b, k).cols();
  return t;
}

template <class T>
T required(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw UsageError(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(where + ": bad \"" + key + "\": " + e.what());
  }
}

template <class T>
T optional_field(const nlohmann::json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? required<T>(j, key, where) : fallback;
}

Design design_from_entry(const nlohmann::json& j, const std::filesystem::path& base_dir, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + ": design must be an object");
  try {
    if (j.contains("path")) {
      std::filesystem::path p = required<std::string>(j, "path", where);
      if (p.is_relative()) p = base_dir / p;
      return load_design(p);
    }
    for (const char* key : {"construct", "baseline"}) {
      if (!j.contains(key)) continue;
      const auto& nk = j.at(key);
      const auto n = required<std::size_t>(nk, "n", where), k = required<std::size_t>(nk, "k", where);
      return std::string(key) == "construct" ? build_rs_pdssdc(n, k) : build_dostbc_baseline(n, k);
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(where + ": " + e.what());
  }
  throw UsageError(where + ": design needs \"path\", \"construct\" or \"baseline\"");
}

std::string safe_name(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out.empty() ? "curve" : out;
}

}  // namespace

int cmd_construct(std::size_t n, std::size_t k, const std::filesystem::path& out, std::ostream& log,
                  std::ostream& stdout_sink) {
  Construction c = [&] {
    try {
      return construct_rs_pdssdc(n, k);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  const Design& d = c.design;
  RunManifest m{"construct", {{"n", n}, {"k", k}}, 0, toolkit_version(), {}};
  if (!out.empty()) m.outputs.push_back(out.string());
  const Rational rate(static_cast<std::int64_t>(d.n_symbols()), static_cast<std::int64_t>(d.n_slots()));
  log << "n=" << n << " k=" << k << " T=" << d.n_slots() << " rate=" << rate.str() << " ("
      << rate.to_double() << ")";
  if (c.table_slots) log << " table_T=" << *c.table_slots;
  log << "\n";
  if (c.deviates())
    log << "note: constructed length " << d.n_slots() << " differs from the tabulated " << *c.table_slots << "\n";
  if (out.empty()) {
    auto j = design_to_json(d);
    j["manifest"] = m.to_json();
    stdout_sink << j.dump(2) << "\n";
  } else {
    save_design(d, out, m.to_json());
  }
  return kExitOk;
}

int cmd_verify(const std::filesystem::path& design_path, std::size_t draws, std::uint64_t seed,
               const std::filesystem::path& out, std::ostream& log, std::ostream& stdout_sink) {
  Design d = [&] {
    try {
      return load_design(design_path);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }();
  if (draws == 0) throw UsageError("draws must be at least 1");
  VerifyOptions opt;
  opt.draws = draws;
  opt.seed = seed;
  const VerificationReport r = verify(d, opt);
  RunManifest m{"verify", {{"design", design_path.string()}, {"draws", draws}}, seed, toolkit_version(), {}};
  if (!out.empty()) m.outputs.push_back(out.string());
  auto j = report_to_json(r);
  j["manifest"] = m.to_json();
  if (out.empty())
    stdout_sink << j.dump(2) << "\n";
  else
    write_text(out, j.dump(2) + "\n");
  if (r.passed()) {
    log << "all properties hold\n";
    return kExitOk;
  }
  for (const auto& f : r.failures) log << "FAIL " << f << "\n";
  return kExitPropertyFailure;
}

namespace {

const char* case_token(BoundCase c) {
  switch (c) {
    case BoundCase::NEvenKEven: return "n_even_k_even";
    case BoundCase::NEvenKOdd: return "n_even_k_odd";
    case BoundCase::NOddKEven: return "n_odd_k_even";
    case BoundCase::NOddKOdd: return "n_odd_k_odd";
  }
  return "";
}

}  // namespace

std::string table_csv(std::size_t n_max, std::size_t k_max) {
  std::ostringstream os;
  os << "n,k,case,bound,bound_value,t_rs,t_dostbc,achieves,constructed_t\n";
  for (std::size_t n = 4; n <= n_max; ++n)
    for (std::size_t k = 4; k <= k_max; ++k) {
      const RateBound b = rate_upper_bound(n, k);
      const MinSlotTable t = min_slots(n, k);
      os << n << ',' << k << ',' << case_token(b.case_tag) << ',' << b.bound.str() << ',' << b.bound.to_double()
         << ',' << t.t_rs << ',' << t.t_dostbc << ',' << (achieves_bound(n, k) ? "true" : "false") << ','
         << constructed_slots(n, k) << '\n';
    }
  return os.str();
}

int cmd_table(std::size_t n_max, std::size_t k_max, const std::filesystem::path& out, std::ostream& log,
              std::ostream& stdout_sink) {
  if (n_max < 4 || k_max < 4) throw UsageError("table needs n_max >= 4 and k_max >= 4");
  RunManifest m{"table", {{"n_max", n_max}, {"k_max", k_max}}, 0, toolkit_version(), {}};
  if (!out.empty()) m.outputs.push_back(out.string());
  const std::string text = "# manifest " + m.fingerprint() + "\n" + table_csv(n_max, k_max);
  if (out.empty())
    stdout_sink << text;
  else
    write_text(out, text);
  log << (n_max - 3) * (k_max - 3) << " rows\n";
  return kExitOk;
}

std::vector<CurveSpec> parse_sim_config(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  const std::string top = "config";
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  if (!j.contains("seed")) throw UsageError("config: an explicit \"seed\" is required");
  const auto seed = required<std::uint64_t>(j, "seed", top);
  const auto grid = required<std::vector<double>>(j, "snr_grid", top);
  const auto trials = required<std::int64_t>(j, "trials_per_point", top);
  if (trials < 1) throw UsageError("config: trials_per_point must be at least 1");
  const auto errors = optional_field<std::int64_t>(j, "error_target", 200, top);
  const auto chunk = optional_field<std::int64_t>(j, "chunk", 2000, top);
  if (errors < 1 || chunk < 1) throw UsageError("config: error_target and chunk must be at least 1");
  if (!j.contains("curves") || !j.at("curves").is_array() || j.at("curves").empty())
    throw UsageError("config: \"curves\" must be a non-empty array");

  std::vector<CurveSpec> out;
  for (std::size_t i = 0; i < j.at("curves").size(); ++i) {
    const auto& c = j.at("curves")[i];
    const std::string where = "curves[" + std::to_string(i) + "]";
    const auto name = required<std::string>(c, "name", where);
    if (!c.contains("design")) throw UsageError(where + ": missing \"design\"");
    Design d = design_from_entry(c.at("design"), base_dir, where);
    try {
      SimConfig cfg{.design = std::move(d),
                    .signal_set = make_signal_set(required<std::string>(c, "signal_set", where)),
                    .p1 = optional_field<double>(c, "p1", 1.0, where),
                    .p2 = optional_field<double>(c, "p2", 1.0, where),
                    .scheme = snr_scheme_from_string(optional_field<std::string>(c, "snr_scheme", "physical", where)),
                    .snr_grid = grid,
                    .trials_per_point = static_cast<std::size_t>(trials),
                    .error_target = static_cast<std::size_t>(errors),
                    .chunk = static_cast<std::size_t>(chunk),
                    .seed = seed,
                    .decoder = decoder_from_string(optional_field<std::string>(c, "decoder", "single_symbol", where)),
                    .label = name};
      cfg.validate();
      out.push_back({name, std::move(cfg)});
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(where + ": " + e.what());
    }
  }
  return out;
}

nlohmann::json fig3_preset() {
  std::vector<double> grid;
  for (int s = 0; s <= 24; s += 2) grid.push_back(s);
  return {{"seed", 20240601},
          {"snr_grid", grid},
          {"trials_per_point", 1000000},
          {"error_target", 200},
          {"chunk", 2000},
          {"curves",
           {{{"name", "x44_rotated_qpsk"},
             {"design", {{"construct", {{"n", 4}, {"k", 4}}}}},
             {"signal_set", "rotated_qpsk:0.39269908169872414"},
             {"p1", 1.0},
             {"p2", 1.0},
             {"snr_scheme", "rs_pdssdc_44"},
             {"decoder", "single_symbol"}},
            {{"name", "xp44_qam16"},
             {"design", {{"baseline", {{"n", 4}, {"k", 4}}}}},
             {"signal_set", "qam16"},
             {"p1", 1.0},
             {"p2", 2.0},
             {"snr_scheme", "dostbc_44"},
             {"decoder", "single_symbol"}}}}};
}

SimulationRun run_simulation(const std::vector<CurveSpec>& specs) {
  SimulationRun run;
  for (const auto& s : specs) {
    run.names.push_back(s.name);
    run.curves.push_back(run_ser(s.config));
  }
  return run;
}

std::optional<double> snr_gap_at(const SerCurve& better, const SerCurve& worse, double ser) {
  const auto a = snr_at_ser(better, ser), b = snr_at_ser(worse, ser);
  if (!a || !b) return std::nullopt;
  return *b - *a;
}

int cmd_simulate(const nlohmann::json& config, const std::filesystem::path& out_dir, std::ostream& log,
                 const std::filesystem::path& base_dir) {
  const auto specs = parse_sim_config(config, base_dir);
  RunManifest m{"simulate", config, config.at("seed").get<std::uint64_t>(), toolkit_version(), {}};
  for (const auto& s : specs) m.outputs.push_back((out_dir / (safe_name(s.name) + ".csv")).string());
  m.outputs.push_back((out_dir / "ser.json").string());

  const SimulationRun run = run_simulation(specs);
  nlohmann::json curves = nlohmann::json::array();
  for (std::size_t i = 0; i < run.curves.size(); ++i) {
    write_text(out_dir / (safe_name(run.names[i]) + ".csv"),
               "# manifest " + m.fingerprint() + "\n" + curve_to_csv(run.curves[i]));
    auto cj = curve_to_json(run.curves[i]);
    cj["name"] = run.names[i];
    curves.push_back(cj);
    log << run.names[i] << ":";
    for (const auto& p : run.curves[i].points) log << " " << p.snr_db << "dB=" << p.ser();
    log << "\n";
  }
  nlohmann::json doc{{"manifest", m.to_json()}, {"curves", curves}};
  if (run.curves.size() >= 2) {
    nlohmann::json cmp = nlohmann::json::object();
    for (double ser : {1e-2, std::pow(10.0, -2.5), 1e-3}) {
      const auto g = snr_gap_at(run.curves[0], run.curves[1], ser);
      cmp["gap_db_at_" + std::to_string(ser)] = g ? nlohmann::json(*g) : nlohmann::json();
      if (g) log << "gap at SER " << ser << ": " << *g << " dB\n";
    }
    for (std::size_t i = 0; i < 2; ++i) {
      const auto s = fitted_slope(run.curves[i], 1e-4, 1e-2);
      cmp["slope_" + run.names[i]] = s ? nlohmann::json(*s) : nlohmann::json();
    }
    doc["comparison"] = cmp;
  }
  write_text(out_dir / "ser.json", doc.dump(2) + "\n");
  return kExitOk;
}

}  // namespace rspd
