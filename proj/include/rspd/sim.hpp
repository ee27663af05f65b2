#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rspd/design.hpp"
#include "rspd/random.hpp"
#include "rspd/verifier.hpp"

namespace rspd {

inline constexpr double kPi = 3.14159265358979323846;

class SignalSetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite constellation with unit average energy and distinct points.
struct SignalSet {
  std::vector<cplx> points;
  std::string label;
  std::size_t bits_per_symbol = 0;
  bool difference_condition_checked = false;
  bool difference_condition_ok = false;

  std::size_t size() const { return points.size(); }
};

/// Nonzero differences a - b over ordered pairs of distinct points.
std::vector<cplx> difference_set(std::span<const cplx> points);

/// True when no difference lies on the lines at +45 or -45 degrees (angle tolerance in radians).
bool avoids_diagonal_lines(std::span<const cplx> differences, double angle_tol = 1e-9);

/// Builds a set from explicit points; normalizes to unit energy and rejects duplicates.
SignalSet make_signal_set(std::vector<cplx> points, std::string label);

/// QPSK exp(j(pi/4 + m pi/2 + theta)). Throws SignalSetError when a difference falls on +-45 degrees.
SignalSet rotated_qpsk(double theta = kPi / 8);

/// Square 16-QAM on the +-{1,3} +-{1,3}j grid scaled by 1/sqrt(10).
SignalSet qam16();

/// "qam16", "rotated_qpsk" or "rotated_qpsk:<theta in radians>".
SignalSet make_signal_set(std::string_view kind);

enum class DecoderKind { exhaustive, single_symbol };
std::string to_string(DecoderKind d);
DecoderKind decoder_from_string(std::string_view s);

/// Average-SNR-per-channel-use formula used to place a curve on the SNR axis.
/// `physical` is P1 P2 m / ((1 + P1) N + P2 m) with m the number of nonzero relay entries.
enum class SnrScheme { rs_pdssdc_44, dostbc_44, physical };
std::string to_string(SnrScheme s);
SnrScheme snr_scheme_from_string(std::string_view s);

/// Closed forms 4 p1 p2 / (p1 + 1 + 4 p2) and 2 p1 p2 / (p1 + 1 + 2 p2). Throws for the
/// design-dependent `physical` scheme.
double snr_per_channel_use(SnrScheme scheme, double p1, double p2);
double snr_per_channel_use(SnrScheme scheme, const Design& d, double p1, double p2);

struct PowerPoint {
  double p1 = 0.0;
  double p2 = 0.0;
};

/// Scales (w1, w2) by the common factor that gives the requested SNR (dB).
PowerPoint powers_for_snr(SnrScheme scheme, const Design& d, double w1, double w2, double snr_db);

/// p1, p2 are the relative source and relay powers; each grid point scales both by one factor.
struct SimConfig {
  Design design;
  SignalSet signal_set;
  double p1 = 1.0;
  double p2 = 1.0;
  SnrScheme scheme = SnrScheme::physical;
  std::vector<double> snr_grid;
  std::size_t trials_per_point = 1000000;
  std::size_t error_target = 200;
  std::size_t chunk = 2000;
  std::uint64_t seed = 20240601;
  DecoderKind decoder = DecoderKind::single_symbol;
  std::string label;

  /// Throws std::invalid_argument when an invariant fails.
  void validate() const;
};

/// Replaces random draws in simulate_link; used for noiseless checks.
struct LinkOverrides {
  std::optional<std::vector<cplx>> h;
  std::optional<std::vector<cplx>> g;
  std::optional<std::vector<std::size_t>> symbols;
  bool zero_noise = false;
};

struct LinkTrial {
  std::vector<cplx> y;
  std::vector<cplx> h;
  std::vector<cplx> g;
  std::vector<std::size_t> symbols;       // indices into the signal set
  std::vector<cplx> noise;                 // relay plus destination noise at the destination
  double p1 = 0.0;
  double p2 = 0.0;
};

/// Source vector s = Lambda[idx] / sqrt(N), so E[s s^H] = 1.
std::vector<cplx> source_vector(const SignalSet& set, std::span<const std::size_t> symbols);

/// Per-design tables: for every real coordinate p of s and relay k, the T-vectors
/// e~_p A_k and e~_p^* B_k with e~_p the interleaved unit coordinate, plus A_k^H A_k + B_k^H B_k.
class LinkModel {
 public:
  explicit LinkModel(Design d);

  const Design& design() const { return d_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t t() const { return t_; }

  /// c g X(e_p) / sqrt(N) for every coordinate p, as a 2N x T row-major array.
  std::vector<cplx> coordinate_responses(std::span<const cplx> h, std::span<const cplx> g, double gain) const;
  /// R for the given relay-destination channel.
  ComplexMatrix covariance(std::span<const cplx> g, double p1, double p2) const;

 private:
  Design d_;
  std::size_t n_, k_, t_;
  std::vector<cplx> a_, b_;  // [p][k][t]
  std::vector<ComplexMatrix> gram_;
};

/// One two-phase transmission at explicit powers.
LinkTrial transmit(const LinkModel& m, const SignalSet& set, double p1, double p2, Rng& rng,
                   const LinkOverrides& ov = {});
LinkTrial transmit(const Design& d, const SignalSet& set, double p1, double p2, Rng& rng,
                   const LinkOverrides& ov = {});

/// One transmission at a grid SNR.
LinkTrial simulate_link(const SimConfig& cfg, double snr_db, Rng& rng, const LinkOverrides& ov = {});

/// Effective gain sqrt(P1 P2 T / (1 + P1)) applied to g X(s) with E[s s^H] = 1.
double effective_gain(const Design& d, double p1, double p2);

inline constexpr double kEnumerationGuard = 1e6;

/// ML metric (y - c g X) R^-1 (y - c g X)^H in whitened form, with per-symbol contributions
/// tabulated once per channel realization.
class MetricTable {
 public:
  MetricTable(const LinkModel& m, const SignalSet& set, std::span<const cplx> y, std::span<const cplx> h,
              std::span<const cplx> g, double p1, double p2);

  std::size_t n_symbols() const { return n_; }
  std::size_t set_size() const { return m_; }
  double metric(std::span<const std::size_t> symbols) const;

  /// Lexicographic enumeration, first minimizer wins. Throws std::length_error past the guard.
  std::vector<std::size_t> exhaustive() const;
  /// Per-symbol scan with the other symbols pinned to index 0.
  std::vector<std::size_t> single_symbol() const;

 private:
  const cplx* contribution(std::size_t i, std::size_t lambda) const {
    return contrib_.data() + (i * m_ + lambda) * t_;
  }
  std::size_t n_, m_, t_;
  std::vector<cplx> y_;        // whitened receive vector
  std::vector<cplx> contrib_;  // [i][lambda][t], whitened
};

/// Global metric minimizer over |Lambda|^N candidates in lexicographic order; the first
/// minimizer wins ties. Throws std::length_error beyond kEnumerationGuard candidates.
std::vector<std::size_t> ml_decode_exhaustive(std::span<const cplx> y, const Design& d,
                                              std::span<const cplx> h, std::span<const cplx> g,
                                              const SignalSet& set, double p1, double p2);

/// Per-symbol minimization with the other symbols pinned to Lambda[0].
std::vector<std::size_t> ssd_decode(std::span<const cplx> y, const VerifiedDesign& d,
                                    std::span<const cplx> h, std::span<const cplx> g,
                                    const SignalSet& set, double p1, double p2);

struct SerPoint {
  double snr_db = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  std::size_t trials = 0;
  std::size_t symbol_errors = 0;
  std::size_t symbols_decoded = 0;
  double ser() const {
    return symbols_decoded ? static_cast<double>(symbol_errors) / static_cast<double>(symbols_decoded) : 0.0;
  }
};

struct SerCurve {
  std::string label;
  std::string fingerprint;
  std::string stop_rule;
  std::uint64_t seed = 0;
  std::vector<SerPoint> points;
};

/// Runs chunks of `cfg.chunk` trials per grid point, chunk c seeded by (seed, point, c), until
/// `error_target` symbol errors or `trials_per_point` trials.
SerCurve run_ser(const SimConfig& cfg);

std::string config_fingerprint(const SimConfig& cfg);
nlohmann::json config_to_json(const SimConfig& cfg);

std::string curve_to_csv(const SerCurve& c);
nlohmann::json curve_to_json(const SerCurve& c);

/// SNR (dB) at which the curve crosses `ser`, by linear interpolation of log10(SER) in dB.
std::optional<double> snr_at_ser(const SerCurve& c, double ser);

/// Least-squares slope of log10(SER) against log10(SNR) over points with SER in [lo, hi].
std::optional<double> fitted_slope(const SerCurve& c, double lo, double hi);

}  // namespace rspd
