#include "rspd/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rspd/design_io.hpp"
#include "rspd/manifest.hpp"
#include "rspd/precoder.hpp"

namespace rspd {

namespace {

double norm2(const cplx* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(v[i]);
  return acc;
}

double residual_norm2(const cplx* a, const cplx* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(a[i] - b[i]);
  return acc;
}

// Lower-triangular L with L L^H = R for Hermitian positive definite R.
ComplexMatrix cholesky(const ComplexMatrix& r) {
  const std::size_t n = r.rows();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = r(j, j).real();
    for (std::size_t p = 0; p < j; ++p) d -= std::norm(l(j, p));
    if (!(d > 0.0)) throw std::domain_error("covariance is not positive definite");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx acc = r(i, j);
      for (std::size_t p = 0; p < j; ++p) acc -= l(i, p) * std::conj(l(j, p));
      l(i, j) = acc / l(j, j).real();
    }
  }
  return l;
}

double relay_energy(const Design& d) {
  double m = 0.0;
  for (std::size_t k = 0; k < d.n_relays(); ++k)
    for (const auto* mat : {&d.relay_a(k), &d.relay_b(k)})
      for (const cplx& z : mat->entries()) m += std::norm(z);
  return m;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::vector<cplx> difference_set(std::span<const cplx> points) {
  std::vector<cplx> out;
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = 0; b < points.size(); ++b)
      if (a != b) out.push_back(points[a] - points[b]);
  return out;
}

bool avoids_diagonal_lines(std::span<const cplx> differences, double angle_tol) {
  for (const cplx& d : differences) {
    if (std::abs(d) <= kTol) continue;
    double phase = std::fmod(std::arg(d) + 2 * kPi, kPi / 2);
    if (std::abs(phase - kPi / 4) <= angle_tol) return false;
  }
  return true;
}

SignalSet make_signal_set(std::vector<cplx> points, std::string label) {
  if (points.size() < 2) throw SignalSetError("a signal set needs at least two points");
  double energy = 0.0;
  for (const cplx& p : points) energy += std::norm(p);
  energy /= static_cast<double>(points.size());
  if (!(energy > 0.0)) throw SignalSetError("signal set has zero energy");
  for (cplx& p : points) p /= std::sqrt(energy);
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b)
      if (std::abs(points[a] - points[b]) <= kTol) throw SignalSetError("signal set points must be distinct");
  SignalSet s;
  s.bits_per_symbol = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(points.size()))));
  s.points = std::move(points);
  s.label = std::move(label);
  return s;
}

SignalSet rotated_qpsk(double theta) {
  std::vector<cplx> pts;
  for (int m = 0; m < 4; ++m) pts.push_back(std::polar(1.0, kPi / 4 + m * kPi / 2 + theta));
  SignalSet s = make_signal_set(std::move(pts), "rotated_qpsk(" + fmt("%.6g", theta) + ")");
  s.difference_condition_checked = true;
  s.difference_condition_ok = avoids_diagonal_lines(difference_set(s.points));
  if (!s.difference_condition_ok)
    throw SignalSetError("rotation " + fmt("%.6g", theta) + " puts a point difference on a +-45 degree line");
  return s;
}

SignalSet qam16() {
  std::vector<cplx> pts;
  for (int re : {-3, -1, 1, 3})
    for (int im : {-3, -1, 1, 3}) pts.emplace_back(re / std::sqrt(10.0), im / std::sqrt(10.0));
  return make_signal_set(std::move(pts), "qam16");
}

SignalSet make_signal_set(std::string_view kind) {
  if (kind == "qam16") return qam16();
  if (kind == "rotated_qpsk") return rotated_qpsk();
  constexpr std::string_view prefix = "rotated_qpsk:";
  if (kind.substr(0, prefix.size()) == prefix) {
    const std::string arg(kind.substr(prefix.size()));
    std::size_t used = 0;
    double theta = 0.0;
    try {
      theta = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) throw SignalSetError("bad rotation angle '" + arg + "'");
    return rotated_qpsk(theta);
  }
  throw SignalSetError("unknown signal set '" + std::string(kind) + "'");
}

std::string to_string(DecoderKind d) { return d == DecoderKind::exhaustive ? "exhaustive" : "single_symbol"; }

DecoderKind decoder_from_string(std::string_view s) {
  if (s == "exhaustive") return DecoderKind::exhaustive;
  if (s == "single_symbol") return DecoderKind::single_symbol;
  throw std::invalid_argument("unknown decoder '" + std::string(s) + "'");
}

std::string to_string(SnrScheme s) {
  switch (s) {
    case SnrScheme::rs_pdssdc_44: return "rs_pdssdc_44";
    case SnrScheme::dostbc_44: return "dostbc_44";
    case SnrScheme::physical: return "physical";
  }
  return "physical";
}

SnrScheme snr_scheme_from_string(std::string_view s) {
  if (s == "rs_pdssdc_44") return SnrScheme::rs_pdssdc_44;
  if (s == "dostbc_44") return SnrScheme::dostbc_44;
  if (s == "physical") return SnrScheme::physical;
  throw std::invalid_argument("unknown SNR scheme '" + std::string(s) + "'");
}

double snr_per_channel_use(SnrScheme scheme, double p1, double p2) {
  if (!(p1 > 0.0) || !(p2 > 0.0)) throw std::invalid_argument("powers must be positive");
  switch (scheme) {
    case SnrScheme::rs_pdssdc_44: return 4 * p1 * p2 / (p1 + 1 + 4 * p2);
    case SnrScheme::dostbc_44: return 2 * p1 * p2 / (p1 + 1 + 2 * p2);
    case SnrScheme::physical: break;
  }
  throw std::invalid_argument("the physical SNR needs a design");
}

double snr_per_channel_use(SnrScheme scheme, const Design& d, double p1, double p2) {
  if (scheme != SnrScheme::physical) return snr_per_channel_use(scheme, p1, p2);
  if (!(p1 > 0.0) || !(p2 > 0.0)) throw std::invalid_argument("powers must be positive");
  const double m = relay_energy(d), n = static_cast<double>(d.n_symbols());
  return p1 * p2 * m / ((1 + p1) * n + p2 * m);
}

PowerPoint powers_for_snr(SnrScheme scheme, const Design& d, double w1, double w2, double snr_db) {
  if (!(w1 > 0.0) || !(w2 > 0.0)) throw std::invalid_argument("power weights must be positive");
  const double target = std::pow(10.0, snr_db / 10.0);
  auto f = [&](double rho) { return snr_per_channel_use(scheme, d, rho * w1, rho * w2); };
  double lo = 1e-12, hi = 1.0;
  while (f(hi) < target) {
    hi *= 2;
    if (hi > 1e15) throw std::domain_error("SNR target out of range");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  const double rho = std::sqrt(lo * hi);
  return {rho * w1, rho * w2};
}

void SimConfig::validate() const {
  if (trials_per_point < 1) throw std::invalid_argument("trials_per_point must be at least 1");
  if (!(p1 > 0.0) || !(p2 > 0.0)) throw std::invalid_argument("p1 and p2 must be positive");
  if (snr_grid.empty()) throw std::invalid_argument("snr_grid is empty");
  if (chunk < 1) throw std::invalid_argument("chunk must be at least 1");
  if (error_target < 1) throw std::invalid_argument("error_target must be at least 1");
  if (signal_set.size() < 2) throw std::invalid_argument("signal set is empty");
  if (design.n_relays() == 0 || design.n_slots() == 0) throw std::invalid_argument("design is empty");
}

std::vector<cplx> source_vector(const SignalSet& set, std::span<const std::size_t> symbols) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(symbols.size()));
  std::vector<cplx> s(symbols.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = set.points.at(symbols[i]) * scale;
  return s;
}

LinkModel::LinkModel(Design d)
    : d_(std::move(d)), n_(d_.n_symbols()), k_(d_.n_relays()), t_(d_.n_slots()) {
  const PrecoderPair pp{d_.precoder_p(), d_.precoder_q()};
  a_.assign(2 * n_ * k_ * t_, cplx{});
  b_.assign(2 * n_ * k_ * t_, cplx{});
  for (std::size_t p = 0; p < 2 * n_; ++p) {
    std::vector<cplx> e(n_);
    e[p / 2] = p % 2 ? cplx{0, 1} : cplx{1, 0};
    const auto st = interleave(e, pp);
    std::vector<cplx> stc(st.size());
    std::transform(st.begin(), st.end(), stc.begin(), [](cplx z) { return std::conj(z); });
    for (std::size_t k = 0; k < k_; ++k) {
      const auto ra = std::span<const cplx>(st) * d_.relay_a(k);
      const auto rb = std::span<const cplx>(stc) * d_.relay_b(k);
      std::copy(ra.begin(), ra.end(), a_.begin() + (p * k_ + k) * t_);
      std::copy(rb.begin(), rb.end(), b_.begin() + (p * k_ + k) * t_);
    }
  }
  for (std::size_t k = 0; k < k_; ++k) {
    const auto& a = d_.relay_a(k);
    const auto& b = d_.relay_b(k);
    gram_.push_back(a.adjoint() * a + b.adjoint() * b);
  }
}

std::vector<cplx> LinkModel::coordinate_responses(std::span<const cplx> h, std::span<const cplx> g,
                                                  double gain) const {
  if (h.size() != k_ || g.size() != k_) throw DimensionError("need one channel coefficient per relay");
  const double scale = gain / std::sqrt(static_cast<double>(n_));
  std::vector<cplx> out(2 * n_ * t_);
  for (std::size_t p = 0; p < 2 * n_; ++p)
    for (std::size_t k = 0; k < k_; ++k) {
      const cplx ca = scale * g[k] * h[k], cb = scale * g[k] * std::conj(h[k]);
      const cplx* a = a_.data() + (p * k_ + k) * t_;
      const cplx* b = b_.data() + (p * k_ + k) * t_;
      for (std::size_t t = 0; t < t_; ++t) out[p * t_ + t] += ca * a[t] + cb * b[t];
    }
  return out;
}

ComplexMatrix LinkModel::covariance(std::span<const cplx> g, double p1, double p2) const {
  if (g.size() != k_) throw DimensionError("g must have one coefficient per relay");
  const double scale = relay_power_scale(d_, p1, p2);
  ComplexMatrix r = ComplexMatrix::identity(t_);
  for (std::size_t k = 0; k < k_; ++k) r += (scale * std::norm(g[k])) * gram_[k];
  return r;
}

double effective_gain(const Design& d, double p1, double p2) {
  return std::sqrt(relay_power_scale(d, p1, p2) * p1 * static_cast<double>(d.n_symbols()));
}

LinkTrial transmit(const LinkModel& m, const SignalSet& set, double p1, double p2, Rng& rng,
                   const LinkOverrides& ov) {
  const Design& d = m.design();
  const std::size_t kk = m.k(), n = m.n(), t = m.t();
  LinkTrial tr;
  tr.p1 = p1;
  tr.p2 = p2;
  tr.h = ov.h ? *ov.h : cscg_vector(rng, kk);
  tr.g = ov.g ? *ov.g : cscg_vector(rng, kk);
  if (tr.h.size() != kk || tr.g.size() != kk) throw DimensionError("need one channel coefficient per relay");
  if (ov.symbols) {
    tr.symbols = *ov.symbols;
    if (tr.symbols.size() != n) throw DimensionError("need one symbol index per symbol");
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, set.size() - 1);
    tr.symbols.resize(n);
    for (auto& s : tr.symbols) s = pick(rng);
  }
  const auto st = interleave(source_vector(set, tr.symbols), {d.precoder_p(), d.precoder_q()});
  const double alpha = std::sqrt(relay_power_scale(d, p1, p2));
  const double amp = std::sqrt(p1 * static_cast<double>(n));

  tr.y.assign(t, cplx{});
  tr.noise.assign(t, cplx{});
  std::vector<cplx> r(n), rc(n), nk(n), nkc(n);
  for (std::size_t k = 0; k < kk; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      nk[i] = ov.zero_noise ? cplx{} : cscg(rng);
      r[i] = amp * tr.h[k] * st[i] + nk[i];
      rc[i] = std::conj(r[i]);
      nkc[i] = std::conj(nk[i]);
    }
    const auto sa = std::span<const cplx>(r) * d.relay_a(k);
    const auto sb = std::span<const cplx>(rc) * d.relay_b(k);
    const auto na = std::span<const cplx>(nk) * d.relay_a(k);
    const auto nb = std::span<const cplx>(nkc) * d.relay_b(k);
    for (std::size_t j = 0; j < t; ++j) {
      tr.y[j] += tr.g[k] * alpha * (sa[j] + sb[j]);
      tr.noise[j] += tr.g[k] * alpha * (na[j] + nb[j]);
    }
  }
  for (std::size_t j = 0; j < t; ++j) {
    const cplx w = ov.zero_noise ? cplx{} : cscg(rng);
    tr.y[j] += w;
    tr.noise[j] += w;
  }
  return tr;
}

LinkTrial transmit(const Design& d, const SignalSet& set, double p1, double p2, Rng& rng,
                   const LinkOverrides& ov) {
  return transmit(LinkModel(d), set, p1, p2, rng, ov);
}

LinkTrial simulate_link(const SimConfig& cfg, double snr_db, Rng& rng, const LinkOverrides& ov) {
  cfg.validate();
  const auto pw = powers_for_snr(cfg.scheme, cfg.design, cfg.p1, cfg.p2, snr_db);
  return transmit(cfg.design, cfg.signal_set, pw.p1, pw.p2, rng, ov);
}

MetricTable::MetricTable(const LinkModel& m, const SignalSet& set, std::span<const cplx> y,
                         std::span<const cplx> h, std::span<const cplx> g, double p1, double p2)
    : n_(m.n()), m_(set.size()), t_(m.t()) {
  if (y.size() != t_) throw DimensionError("y must have T entries");
  const auto resp = m.coordinate_responses(h, g, effective_gain(m.design(), p1, p2));
  const ComplexMatrix w = inverse(cholesky(m.covariance(g, p1, p2))).adjoint();
  y_ = y * w;
  std::vector<std::vector<cplx>> white(2 * n_);
  for (std::size_t p = 0; p < 2 * n_; ++p)
    white[p] = std::span<const cplx>(resp.data() + p * t_, t_) * w;
  contrib_.assign(n_ * m_ * t_, cplx{});
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t l = 0; l < m_; ++l) {
      const cplx x = set.points[l];
      cplx* c = contrib_.data() + (i * m_ + l) * t_;
      for (std::size_t j = 0; j < t_; ++j) c[j] = x.real() * white[2 * i][j] + x.imag() * white[2 * i + 1][j];
    }
}

double MetricTable::metric(std::span<const std::size_t> symbols) const {
  if (symbols.size() != n_) throw DimensionError("need one symbol index per symbol");
  std::vector<cplx> r = y_;
  for (std::size_t i = 0; i < n_; ++i) {
    const cplx* c = contribution(i, symbols[i]);
    for (std::size_t j = 0; j < t_; ++j) r[j] -= c[j];
  }
  return norm2(r.data(), t_);
}

std::vector<std::size_t> MetricTable::exhaustive() const {
  if (std::pow(static_cast<double>(m_), static_cast<double>(n_)) > kEnumerationGuard)
    throw std::length_error("exhaustive search over " + std::to_string(m_) + "^" + std::to_string(n_) +
                            " candidates exceeds the enumeration guard");
  std::vector<std::vector<cplx>> partial(n_ + 1, y_);
  std::vector<std::size_t> idx(n_, 0), best(n_, 0);
  double best_metric = std::numeric_limits<double>::infinity();
  std::size_t depth = 0;
  // Depth-first odometer: symbol 0 is the most significant digit.
  while (true) {
    if (depth == n_) {
      const double v = norm2(partial[n_].data(), t_);
      if (v < best_metric) {
        best_metric = v;
        best = idx;
      }
      while (depth > 0 && ++idx[depth - 1] == m_) idx[--depth] = 0;
      if (depth == 0) break;
      --depth;
      continue;
    }
    const cplx* c = contribution(depth, idx[depth]);
    for (std::size_t j = 0; j < t_; ++j) partial[depth + 1][j] = partial[depth][j] - c[j];
    ++depth;
  }
  return best;
}

std::vector<std::size_t> MetricTable::single_symbol() const {
  std::vector<cplx> base = y_;
  for (std::size_t i = 0; i < n_; ++i) {
    const cplx* c = contribution(i, 0);
    for (std::size_t j = 0; j < t_; ++j) base[j] -= c[j];
  }
  std::vector<std::size_t> out(n_, 0);
  std::vector<cplx> r(t_);
  for (std::size_t i = 0; i < n_; ++i) {
    const cplx* c0 = contribution(i, 0);
    for (std::size_t j = 0; j < t_; ++j) r[j] = base[j] + c0[j];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < m_; ++l) {
      const double v = residual_norm2(r.data(), contribution(i, l), t_);
      if (v < best) {
        best = v;
        out[i] = l;
      }
    }
  }
  return out;
}

std::vector<std::size_t> ml_decode_exhaustive(std::span<const cplx> y, const Design& d,
                                              std::span<const cplx> h, std::span<const cplx> g,
                                              const SignalSet& set, double p1, double p2) {
  return MetricTable(LinkModel(d), set, y, h, g, p1, p2).exhaustive();
}

std::vector<std::size_t> ssd_decode(std::span<const cplx> y, const VerifiedDesign& d,
                                    std::span<const cplx> h, std::span<const cplx> g,
                                    const SignalSet& set, double p1, double p2) {
  return MetricTable(LinkModel(d.design()), set, y, h, g, p1, p2).single_symbol();
}

nlohmann::json config_to_json(const SimConfig& cfg) {
  nlohmann::json pts = nlohmann::json::array();
  for (const cplx& p : cfg.signal_set.points) pts.push_back({p.real(), p.imag()});
  return {{"design", design_to_json(cfg.design)},
          {"signal_set", {{"label", cfg.signal_set.label}, {"points", pts}}},
          {"p1", cfg.p1},
          {"p2", cfg.p2},
          {"snr_scheme", to_string(cfg.scheme)},
          {"snr_grid", cfg.snr_grid},
          {"trials_per_point", cfg.trials_per_point},
          {"error_target", cfg.error_target},
          {"chunk", cfg.chunk},
          {"seed", cfg.seed},
          {"decoder", to_string(cfg.decoder)},
          {"label", cfg.label}};
}

std::string config_fingerprint(const SimConfig& cfg) { return json_fingerprint(config_to_json(cfg)); }

SerCurve run_ser(const SimConfig& cfg) {
  cfg.validate();
  const LinkModel model(cfg.design);
  if (cfg.decoder == DecoderKind::single_symbol) certify(cfg.design);
  SerCurve curve;
  curve.label = cfg.label;
  curve.seed = cfg.seed;
  curve.fingerprint = config_fingerprint(cfg);
  curve.stop_rule = "chunks of " + std::to_string(cfg.chunk) + " trials until " +
                    std::to_string(cfg.error_target) + " symbol errors or " +
                    std::to_string(cfg.trials_per_point) + " trials";
  const std::size_t n = model.n();
  for (std::size_t pi = 0; pi < cfg.snr_grid.size(); ++pi) {
    SerPoint pt;
    pt.snr_db = cfg.snr_grid[pi];
    const auto pw = powers_for_snr(cfg.scheme, cfg.design, cfg.p1, cfg.p2, pt.snr_db);
    pt.p1 = pw.p1;
    pt.p2 = pw.p2;
    for (std::uint64_t c = 0; pt.symbol_errors < cfg.error_target && pt.trials < cfg.trials_per_point; ++c) {
      Rng rng = make_rng({cfg.seed, pi, c});
      const std::size_t batch = std::min(cfg.chunk, cfg.trials_per_point - pt.trials);
      for (std::size_t i = 0; i < batch; ++i) {
        const auto tr = transmit(model, cfg.signal_set, pw.p1, pw.p2, rng);
        const MetricTable mt(model, cfg.signal_set, tr.y, tr.h, tr.g, pw.p1, pw.p2);
        const auto dec = cfg.decoder == DecoderKind::exhaustive ? mt.exhaustive() : mt.single_symbol();
        for (std::size_t s = 0; s < n; ++s) pt.symbol_errors += dec[s] != tr.symbols[s];
      }
      pt.trials += batch;
      pt.symbols_decoded += batch * n;
    }
    curve.points.push_back(pt);
  }
  return curve;
}

std::string curve_to_csv(const SerCurve& c) {
  std::ostringstream os;
  os << "# label " << c.label << "\n# fingerprint " << c.fingerprint << "\n# seed " << c.seed
     << "\n# stop_rule " << c.stop_rule << "\n";
  os << "snr_db,ser,errors,trials,symbols,p1,p2\n";
  for (const auto& p : c.points)
    os << fmt("%.6g", p.snr_db) << ',' << fmt("%.9e", p.ser()) << ',' << p.symbol_errors << ',' << p.trials << ','
       << p.symbols_decoded << ',' << fmt("%.9e", p.p1) << ',' << fmt("%.9e", p.p2) << '\n';
  return os.str();
}

nlohmann::json curve_to_json(const SerCurve& c) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : c.points)
    pts.push_back({{"snr_db", p.snr_db},
                   {"ser", p.ser()},
                   {"symbol_errors", p.symbol_errors},
                   {"trials", p.trials},
                   {"symbols_decoded", p.symbols_decoded},
                   {"p1", p.p1},
                   {"p2", p.p2}});
  return {{"label", c.label}, {"fingerprint", c.fingerprint}, {"seed", c.seed}, {"stop_rule", c.stop_rule},
          {"points", pts}};
}

std::optional<double> snr_at_ser(const SerCurve& c, double ser) {
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
    const auto &a = c.points[i], &b = c.points[i + 1];
    const double sa = a.ser(), sb = b.ser();
    if (sa <= 0.0 || sb <= 0.0) continue;
    if (sa >= ser && sb <= ser) {
      if (sa == sb) return a.snr_db;
      const double f = (std::log10(sa) - std::log10(ser)) / (std::log10(sa) - std::log10(sb));
      return a.snr_db + f * (b.snr_db - a.snr_db);
    }
  }
  return std::nullopt;
}

std::optional<double> fitted_slope(const SerCurve& c, double lo, double hi) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : c.points) {
    const double s = p.ser();
    if (s > 0.0 && s >= lo && s <= hi) xy.emplace_back(p.snr_db / 10.0, std::log10(s));
  }
  if (xy.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (auto [x, y] : xy) mx += x, my += y;
  mx /= xy.size();
  my /= xy.size();
  double sxy = 0, sxx = 0;
  for (auto [x, y] : xy) sxy += (x - mx) * (y - my), sxx += (x - mx) * (x - mx);
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace rspd
