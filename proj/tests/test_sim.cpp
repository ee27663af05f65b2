#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "rspd/sim.hpp"
#include "support.hpp"

using namespace rspd;

namespace {

double energy(std::span<const cplx> v) {
  double e = 0;
  for (const auto& z : v) e += std::norm(z);
  return e;
}

// Direct evaluation of (y - c g X) R^-1 (y - c g X)^H for one candidate.
double direct_metric(const Design& d, const SignalSet& set, std::span<const cplx> y, std::span<const cplx> h,
                     std::span<const cplx> g, double p1, double p2, std::span<const std::size_t> idx) {
  const auto st = interleave(source_vector(set, idx), {d.precoder_p(), d.precoder_q()});
  const auto x = render_codeword(d, h, st);
  const auto gx = g * x;
  const double c = std::sqrt(p1 * p2 * static_cast<double>(d.n_slots()) / (1 + p1));
  ComplexMatrix e(1, d.n_slots());
  for (std::size_t t = 0; t < d.n_slots(); ++t) e(0, t) = y[t] - c * gx[t];
  const auto r_inv = inverse(covariance(d, g, p1, p2).r);
  return (e * r_inv * e.adjoint())(0, 0).real();
}

std::vector<std::size_t> brute_force(const Design& d, const SignalSet& set, std::span<const cplx> y,
                                     std::span<const cplx> h, std::span<const cplx> g, double p1, double p2) {
  const std::size_t n = d.n_symbols(), m = set.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= m;
  std::vector<std::size_t> best;
  double best_metric = 1e300;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::size_t> idx(n);
    std::size_t c = code;
    for (std::size_t i = n; i-- > 0;) idx[i] = c % m, c /= m;
    const double v = direct_metric(d, set, y, h, g, p1, p2, idx);
    if (v < best_metric) best_metric = v, best = idx;
  }
  return best;
}

SimConfig small_config(std::uint64_t seed) {
  return SimConfig{.design = build_rs_pdssdc(4, 4),
                   .signal_set = rotated_qpsk(),
                   .scheme = SnrScheme::rs_pdssdc_44,
                   .snr_grid = {0, 10, 20},
                   .trials_per_point = 3000,
                   .error_target = 100000,
                   .chunk = 500,
                   .seed = seed,
                   .label = "x44"};
}

}  // namespace

TEST_CASE("rotated QPSK difference angles") {
  const auto s = rotated_qpsk(kPi / 8);
  CHECK(s.difference_condition_checked);
  CHECK(s.difference_condition_ok);
  const auto diff = difference_set(s.points);
  CHECK(diff.size() == 12);
  std::set<long> angles;
  for (const auto& d : diff) {
    double deg = std::arg(d) * 180.0 / kPi;
    deg = std::fmod(deg + 360.0, 180.0);
    angles.insert(std::lround(deg * 10));
    CHECK(std::abs(deg - 45.0) > 1e-6);
    CHECK(std::abs(deg - 135.0) > 1e-6);
  }
  CHECK(angles == std::set<long>{225, 675, 1125, 1575});
}

TEST_CASE("unrotated QPSK is rejected") {
  CHECK_THROWS_AS(rotated_qpsk(0.0), SignalSetError);
  CHECK_THROWS_AS(rotated_qpsk(kPi / 2), SignalSetError);
  const cplx qpsk[] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  CHECK_FALSE(avoids_diagonal_lines(difference_set(qpsk)));
}

TEST_CASE("16-QAM normalization") {
  const auto s = qam16();
  CHECK(s.size() == 16);
  CHECK(s.bits_per_symbol == 4);
  CHECK(energy(s.points) / 16 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(s.points[0] - cplx{-3, -3} / std::sqrt(10.0)) < 1e-15);
  for (const auto& p : s.points) {
    CHECK(std::abs(std::abs(p.real()) * std::sqrt(10.0) - std::round(std::abs(p.real()) * std::sqrt(10.0))) < 1e-12);
  }
}

TEST_CASE("signal set construction") {
  CHECK(make_signal_set("qam16").size() == 16);
  CHECK(make_signal_set("rotated_qpsk").label == rotated_qpsk().label);
  CHECK(make_signal_set("rotated_qpsk:0.3").size() == 4);
  CHECK_THROWS_AS(make_signal_set("rotated_qpsk:0"), SignalSetError);
  CHECK_THROWS_AS(make_signal_set("rotated_qpsk:abc"), SignalSetError);
  CHECK_THROWS_AS(make_signal_set("psk8"), SignalSetError);
  const auto s = make_signal_set(std::vector<cplx>{{2, 0}, {-2, 0}}, "bpsk");
  CHECK(s.points[0] == cplx{1, 0});
  CHECK(s.bits_per_symbol == 1);
  CHECK_THROWS_AS(make_signal_set(std::vector<cplx>{{1, 0}, {1, 0}}, "dup"), SignalSetError);
  CHECK_THROWS_AS(make_signal_set(std::vector<cplx>{{1, 0}}, "one"), SignalSetError);
}

TEST_CASE("SNR per channel use formulas") {
  CHECK(snr_per_channel_use(SnrScheme::rs_pdssdc_44, 1, 1) == doctest::Approx(4.0 / 6.0));
  CHECK(snr_per_channel_use(SnrScheme::dostbc_44, 1, 1) == doctest::Approx(0.5));
  CHECK(snr_per_channel_use(SnrScheme::rs_pdssdc_44, 1, 1e-9) < 1e-8);
  CHECK(snr_per_channel_use(SnrScheme::dostbc_44, 1, 1e-9) < 1e-8);
  CHECK_THROWS_AS(snr_per_channel_use(SnrScheme::physical, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(snr_per_channel_use(SnrScheme::rs_pdssdc_44, 0, 1), std::invalid_argument);
}

TEST_CASE("physical SNR against the closed forms") {
  const Design x44 = build_rs_pdssdc(4, 4), xp44 = build_dostbc_baseline(4, 4);
  for (double p1 : {0.5, 1.0, 7.0})
    for (double p2 : {0.25, 1.0, 30.0}) {
      CHECK(snr_per_channel_use(SnrScheme::physical, x44, p1, p2) ==
            doctest::Approx(snr_per_channel_use(SnrScheme::rs_pdssdc_44, p1, p2)));
      // The orthogonal-code formula counts relay power at half the physical rate.
      CHECK(snr_per_channel_use(SnrScheme::physical, xp44, p1, p2) ==
            doctest::Approx(snr_per_channel_use(SnrScheme::dostbc_44, p1, 2 * p2)));
    }
}

TEST_CASE("power solve hits the requested SNR") {
  const Design d = build_rs_pdssdc(4, 4);
  for (double db : {-5.0, 0.0, 13.0, 30.0}) {
    const auto pw = powers_for_snr(SnrScheme::dostbc_44, d, 1.0, 2.0, db);
    CHECK(pw.p2 == doctest::Approx(2 * pw.p1));
    CHECK(10 * std::log10(snr_per_channel_use(SnrScheme::dostbc_44, pw.p1, pw.p2)) == doctest::Approx(db));
  }
  CHECK_THROWS_AS(powers_for_snr(SnrScheme::physical, d, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("noiseless channel identity") {
  for (const auto& f : testing::reference_fixtures()) {
    CAPTURE(f.name);
    const Design& d = f.printed;
    const auto set = d.n_symbols() > 4 ? rotated_qpsk() : qam16();
    Rng rng = make_rng({1});
    LinkOverrides ov;
    ov.h = std::vector<cplx>(d.n_relays(), 1.0);
    ov.g = std::vector<cplx>(d.n_relays(), 1.0);
    ov.zero_noise = true;
    const double p1 = 2.0, p2 = 3.0;
    const auto tr = transmit(d, set, p1, p2, rng, ov);
    const auto st = interleave(source_vector(set, tr.symbols), {d.precoder_p(), d.precoder_q()});
    const auto x = render_codeword(d, *ov.h, st);
    const double c = std::sqrt(p1 * p2 * static_cast<double>(d.n_slots()) / (1 + p1));
    CHECK(effective_gain(d, p1, p2) == doctest::Approx(c));
    for (std::size_t t = 0; t < d.n_slots(); ++t) {
      cplx col{};
      for (std::size_t k = 0; k < d.n_relays(); ++k) col += x(k, t);
      CHECK(std::abs(tr.y[t] - c * col) < 1e-12);
      CHECK(tr.noise[t] == cplx{});
    }
  }
}

TEST_CASE("channel second moment") {
  Rng rng = make_rng({42});
  double acc = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) acc += std::norm(cscg(rng));
  CHECK(acc / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("noiseless decoding recovers the symbols") {
  for (const auto& f : testing::reference_fixtures()) {
    CAPTURE(f.name);
    const auto vd = certify(f.printed);
    for (const auto& set : {rotated_qpsk(), qam16()}) {
      Rng rng = make_rng({7, f.printed.n_slots()});
      LinkOverrides ov;
      ov.zero_noise = true;
      for (int trial = 0; trial < 5; ++trial) {
        const auto tr = transmit(f.printed, set, 1.0, 1.0, rng, ov);
        CHECK(ssd_decode(tr.y, vd, tr.h, tr.g, set, 1.0, 1.0) == tr.symbols);
        if (std::pow(set.size(), f.printed.n_symbols()) <= 65536)
          CHECK(ml_decode_exhaustive(tr.y, f.printed, tr.h, tr.g, set, 1.0, 1.0) == tr.symbols);
      }
    }
  }
}

TEST_CASE("exhaustive search minimizes the directly evaluated metric") {
  struct Case {
    Design d;
    SignalSet set;
  };
  const std::vector<Case> cases{{build_rs_pdssdc(4, 4), rotated_qpsk()},
                                {build_dostbc_baseline(1, 2), qam16()},
                                {build_dostbc(2, 8), qam16()}};
  for (const auto& c : cases) {
    Rng rng = make_rng({99, c.d.n_slots()});
    for (int trial = 0; trial < 10; ++trial) {
      const auto tr = transmit(c.d, c.set, 1.5, 1.5, rng);
      CHECK(ml_decode_exhaustive(tr.y, c.d, tr.h, tr.g, c.set, 1.5, 1.5) ==
            brute_force(c.d, c.set, tr.y, tr.h, tr.g, 1.5, 1.5));
    }
  }
}

TEST_CASE("metric table agrees with the direct metric") {
  const Design d = build_rs_pdssdc(4, 6);
  const LinkModel model(d);
  const auto set = qam16();
  Rng rng = make_rng({3});
  const auto tr = transmit(model, set, 2.0, 1.0, rng);
  const MetricTable mt(model, set, tr.y, tr.h, tr.g, 2.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::size_t> idx(4);
    for (auto& i : idx) i = rng() % 16;
    const double direct = direct_metric(d, set, tr.y, tr.h, tr.g, 2.0, 1.0, idx);
    CHECK(mt.metric(idx) == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("single-symbol and exhaustive decoding agree on noisy trials") {
  struct Case {
    Design d;
    SignalSet set;
  };
  const std::vector<Case> cases{{build_rs_pdssdc(4, 4), rotated_qpsk()}, {build_dostbc_baseline(4, 4), qam16()}};
  for (const auto& c : cases) {
    const auto vd = certify(c.d);
    Rng rng = make_rng({5, c.d.n_slots()});
    for (int trial = 0; trial < 100; ++trial) {
      const double p = 0.5 + trial % 10;
      const auto tr = transmit(c.d, c.set, p, p, rng);
      CHECK(ssd_decode(tr.y, vd, tr.h, tr.g, c.set, p, p) ==
            ml_decode_exhaustive(tr.y, c.d, tr.h, tr.g, c.set, p, p));
    }
  }
}

TEST_CASE("enumeration guard") {
  const Design d = build_rs_pdssdc(6, 8);
  Rng rng = make_rng({1});
  const auto set = qam16();
  const auto tr = transmit(d, set, 1.0, 1.0, rng);
  CHECK_THROWS_AS(ml_decode_exhaustive(tr.y, d, tr.h, tr.g, set, 1.0, 1.0), std::length_error);
}

TEST_CASE("simulated noise has covariance R") {
  for (const Design& d : {build_rs_pdssdc(4, 4), build_dostbc_baseline(4, 4), build_rs_pdssdc(5, 4)}) {
    const LinkModel model(d);
    const auto set = rotated_qpsk();
    const auto [h0, g] = verification_draw(11, 0, d.n_relays());
    const double p1 = 3.0, p2 = 2.0;
    LinkOverrides ov;
    ov.g = g;
    Rng rng = make_rng({17});
    const std::size_t t = d.n_slots();
    ComplexMatrix acc(t, t);
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const auto tr = transmit(model, set, p1, p2, rng, ov);
      for (std::size_t a = 0; a < t; ++a)
        for (std::size_t b = 0; b < t; ++b) acc(a, b) += std::conj(tr.noise[a]) * tr.noise[b];
    }
    acc *= cplx{1.0 / n};
    const auto r = covariance(d, g, p1, p2).r;
    double diag_min = 1e300;
    for (std::size_t a = 0; a < t; ++a) diag_min = std::min(diag_min, r(a, a).real());
    for (std::size_t a = 0; a < t; ++a)
      for (std::size_t b = 0; b < t; ++b) CHECK(std::abs(acc(a, b) - r(a, b)) <= 0.03 * diag_min);
  }
}

TEST_CASE("interleaved source vectors have unit energy") {
  for (std::size_t n : {4, 6}) {
    const auto pp = build_precoders(n);
    for (const auto& set : {rotated_qpsk(), qam16()}) {
      Rng rng = make_rng({n, set.size()});
      double acc = 0;
      const int trials = 100000;
      std::vector<std::size_t> idx(n);
      for (int i = 0; i < trials; ++i) {
        for (auto& v : idx) v = rng() % set.size();
        acc += energy(interleave(source_vector(set, idx), pp));
      }
      CHECK(acc / trials == doctest::Approx(1.0).epsilon(0.01));
    }
  }
}

TEST_CASE("SER runs are deterministic and decreasing") {
  const auto a = run_ser(small_config(1)), b = run_ser(small_config(1)), c = run_ser(small_config(2));
  CHECK(curve_to_csv(a) == curve_to_csv(b));
  CHECK(curve_to_json(a) == curve_to_json(b));
  CHECK(curve_to_csv(a) != curve_to_csv(c));
  REQUIRE(a.points.size() == 3);
  for (std::size_t i = 0; i + 1 < a.points.size(); ++i) CHECK(a.points[i + 1].ser() < a.points[i].ser());
  for (const auto& p : a.points) {
    CHECK(p.trials == 3000);
    CHECK(p.symbols_decoded == 4 * p.trials);
    CHECK(p.ser() == static_cast<double>(p.symbol_errors) / static_cast<double>(p.symbols_decoded));
    CHECK(p.ser() >= 0.0);
    CHECK(p.ser() <= 1.0);
  }
  CHECK(a.fingerprint == config_fingerprint(small_config(1)));
  CHECK(a.fingerprint != c.fingerprint);
}

TEST_CASE("early stop at the error target") {
  auto cfg = small_config(3);
  cfg.error_target = 50;
  cfg.snr_grid = {0};
  const auto curve = run_ser(cfg);
  CHECK(curve.points[0].symbol_errors >= 50);
  CHECK(curve.points[0].trials == 500);
  CHECK(curve.stop_rule.find("50 symbol errors") != std::string::npos);
}

TEST_CASE("exhaustive and single-symbol SER runs coincide") {
  auto cfg = small_config(4);
  cfg.trials_per_point = 500;
  const auto ssd = run_ser(cfg);
  cfg.decoder = DecoderKind::exhaustive;
  const auto ml = run_ser(cfg);
  for (std::size_t i = 0; i < ssd.points.size(); ++i) CHECK(ssd.points[i].symbol_errors == ml.points[i].symbol_errors);
}

TEST_CASE("configuration checks") {
  auto cfg = small_config(1);
  cfg.trials_per_point = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config(1);
  cfg.p2 = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config(1);
  cfg.snr_grid.clear();
  CHECK_THROWS_AS(run_ser(cfg), std::invalid_argument);
  cfg = small_config(1);
  cfg.design = testing::x_dssdc();
  CHECK_THROWS_AS(run_ser(cfg), VerificationError);
}

TEST_CASE("curve readouts") {
  SerCurve c;
  for (int s = 0; s <= 40; s += 10) {
    SerPoint p;
    p.snr_db = s;
    p.symbols_decoded = 100000000;
    p.symbol_errors = static_cast<std::size_t>(std::llround(1e8 * std::pow(10.0, -s / 10.0)));
    c.points.push_back(p);
  }
  CHECK(*snr_at_ser(c, 1e-2) == doctest::Approx(20.0));
  CHECK(*snr_at_ser(c, std::pow(10.0, -2.5)) == doctest::Approx(25.0));
  CHECK_FALSE(snr_at_ser(c, 1e-9));
  CHECK(*fitted_slope(c, 1e-4, 1e-1) == doctest::Approx(-1.0));
  CHECK_FALSE(fitted_slope(c, 1e-9, 1e-8));
  const auto csv = curve_to_csv(c);
  CHECK(csv.find("snr_db,ser,errors,trials") != std::string::npos);
}

TEST_CASE("decoder names") {
  CHECK(decoder_from_string(to_string(DecoderKind::exhaustive)) == DecoderKind::exhaustive);
  CHECK(snr_scheme_from_string(to_string(SnrScheme::dostbc_44)) == SnrScheme::dostbc_44);
  CHECK_THROWS_AS(decoder_from_string("sphere"), std::invalid_argument);
  CHECK_THROWS_AS(snr_scheme_from_string("x"), std::invalid_argument);
}
