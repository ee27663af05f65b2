#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rspd/constructor.hpp"
#include "rspd/design_io.hpp"
#include "rspd/precoder.hpp"
#include "rspd/symbolic.hpp"
#include "rspd/verifier.hpp"

namespace rspd::testing {

inline std::filesystem::path fixture_dir() { return RSPD_FIXTURE_DIR; }

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream f(p);
  if (!f) throw std::runtime_error("missing fixture " + p.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline PrecoderPair load_precoders(const std::string& name) {
  const auto j = nlohmann::json::parse(read_text(fixture_dir() / name));
  const auto n = j.at("n").get<std::size_t>();
  return {matrix_from_json(j.at("p"), n, n), matrix_from_json(j.at("q"), n, n)};
}

/// Design typed in from a printed code and its printed precoders.
inline Design load_sym_design(const std::string& sym_name, const PrecoderPair& pp) {
  const auto f = parse_symbolic(read_text(fixture_dir() / sym_name));
  return design_from_symbolic(f.matrix, f.n_symbols, pp.p, pp.q);
}

struct Fixture {
  std::string name;
  Design printed;
  std::optional<Design> constructed;
  std::vector<RowPair> matching;
  bool unitary = true;
  bool pdssdc = true;
};

inline std::vector<Fixture> reference_fixtures() {
  const auto p4 = load_precoders("precoders_n4.json"), p6 = load_precoders("precoders_n6.json");
  const auto pc = load_precoders("precoders_pciod.json");
  const auto id2 = identity_precoders(2), id4 = identity_precoders(4);
  const std::vector<RowPair> two{{0, 2}, {1, 3}}, four{{0, 2}, {1, 3}, {4, 6}, {5, 7}};
  std::vector<Fixture> f;
  f.push_back({"X(4,4)", load_sym_design("x_4_4.sym", p4), build_rs_pdssdc(4, 4), two});
  f.push_back({"X(4,8)", load_sym_design("x_4_8.sym", p4), build_rs_pdssdc(4, 8), four});
  f.push_back({"X(4,6)", load_sym_design("x_4_6.sym", p4), build_rs_pdssdc(4, 6), two});
  f.push_back({"X(6,8)", load_sym_design("x_6_8.sym", p6), build_rs_pdssdc(6, 8), four});
  f.push_back({"X'(2,8)", load_sym_design("xp_2_8.sym", id2), build_dostbc(2, 8), {}});
  f.push_back({"X'(4,4)", load_sym_design("xp_4_4.sym", id4), build_dostbc_baseline(4, 4), {}});
  f.push_back({"PCIOD", load_sym_design("pciod.sym", pc), std::nullopt, {}, false, true});
  return f;
}

inline Design x_dssdc() { return load_design(fixture_dir() / "x_dssdc.json"); }

/// Validated design when the relay structure holds, unvalidated otherwise.
inline Design rebuild(const Design& d, std::vector<ComplexMatrix> a, std::vector<ComplexMatrix> b) {
  try {
    return Design::create(d.precoder_p(), d.precoder_q(), a, b);
  } catch (const DesignError&) {
    return Design::unvalidated(d.precoder_p(), d.precoder_q(), std::move(a), std::move(b));
  }
}

/// Single-entry relay mutants: a zero entry becomes a random unit, a nonzero entry is zeroed,
/// negated, rotated by j or moved to the other relay matrix of the same relay.
inline std::vector<Design> single_entry_mutants(const Design& d, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const cplx units[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  std::vector<Design> out;
  while (out.size() < count) {
    auto a = d.relay_a();
    auto b = d.relay_b();
    const std::size_t k = rng() % d.n_relays(), n = rng() % d.n_symbols(), t = rng() % d.n_slots();
    const bool use_a = rng() % 2;
    auto& m = use_a ? a[k] : b[k];
    auto& other = use_a ? b[k] : a[k];
    cplx& e = m(n, t);
    if (e == cplx{}) {
      e = units[rng() % 4];
    } else {
      switch (rng() % 4) {
        case 0: e = {}; break;
        case 1: e = -e; break;
        case 2: e *= cplx{0, 1}; break;
        default:
          other(n, t) = e;
          e = {};
      }
    }
    Design mutant = rebuild(d, std::move(a), std::move(b));
    if (mutant.relay_a() == d.relay_a() && mutant.relay_b() == d.relay_b()) continue;
    out.push_back(std::move(mutant));
  }
  return out;
}

/// Exact equality of the codewords rendered at every real basis coordinate with h = 1.
inline bool same_basis_renderings(const Design& x, const Design& y) {
  if (x.n_symbols() != y.n_symbols() || x.n_relays() != y.n_relays() || x.n_slots() != y.n_slots()) return false;
  const std::vector<cplx> ones(x.n_relays(), cplx{1, 0});
  for (std::size_t p = 0; p < 2 * x.n_symbols(); ++p) {
    std::vector<double> u(2 * x.n_symbols(), 0.0);
    u[p] = 1.0;
    if (!(codeword_at(x, ones, u) == codeword_at(y, ones, u))) return false;
  }
  return true;
}

}  // namespace rspd::testing
