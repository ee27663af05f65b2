#include <doctest.h>

#include <random>

#include "rspd/precoder.hpp"
#include "support.hpp"

using namespace rspd;

namespace {

std::vector<cplx> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> nd;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {nd(rng), nd(rng)};
  return v;
}

double energy(const std::vector<cplx>& v) {
  double e = 0;
  for (const auto& z : v) e += std::norm(z);
  return e;
}

}  // namespace

TEST_CASE("precoders reproduce the printed N = 4 and N = 6 pairs") {
  for (auto [n, file] : {std::pair{4, "precoders_n4.json"}, std::pair{6, "precoders_n6.json"}}) {
    CAPTURE(n);
    const auto printed = testing::load_precoders(file);
    const auto built = build_precoders(n);
    CHECK(built.p == printed.p);
    CHECK(built.q == printed.q);
  }
}

TEST_CASE("larger precoders repeat the 4x4 blocks on the diagonal") {
  const auto g = gamma_block(), o = omega_precoder_block();
  for (std::size_t n : {8, 9, 11, 12}) {
    CAPTURE(n);
    const auto pp = build_precoders(n);
    const std::size_t y = n / 4;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const bool in_block = r < 4 * y && c < 4 * y && r / 4 == c / 4;
        const cplx p = in_block ? g(r % 4, c % 4) : (r == c && r >= 4 * y ? cplx{1} : cplx{});
        const cplx q = in_block ? o(r % 4, c % 4) : cplx{};
        CHECK(pp.p(r, c) == p);
        CHECK(pp.q(r, c) == q);
      }
  }
}

TEST_CASE("small N uses identity precoding") {
  for (std::size_t n : {1, 2, 3}) {
    const auto pp = build_precoders(n);
    CHECK(pp.p == ComplexMatrix::identity(n));
    CHECK(pp.q.is_zero());
  }
  CHECK_THROWS_AS(build_precoders(0), std::invalid_argument);
}

TEST_CASE("interleaving conserves energy") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 13; ++n) {
    const auto pp = build_precoders(n);
    for (int trial = 0; trial < 50; ++trial) {
      const auto s = random_vector(rng, n);
      CHECK(std::abs(energy(interleave(s, pp)) - energy(s)) <= 1e-9 * std::max(1.0, energy(s)));
    }
  }
}

TEST_CASE("interleaving moves whole real coordinates") {
  const auto pp = build_precoders(4);
  const auto perm = as_signed_permutation(pp);
  REQUIRE(perm);
  // Every coordinate lands on a distinct target.
  std::vector<int> hit(8, 0);
  for (std::size_t c = 0; c < 8; ++c) {
    ++hit[perm->target[c]];
    CHECK(std::abs(perm->sign[c]) == 1);
  }
  for (int h : hit) CHECK(h == 1);
  // First symbol's in-phase part goes to slot 1, its quadrature part to slot 3.
  const cplx s[] = {{1, 0}, {0, 0}, {0, 0}, {0, 0}};
  const auto st = interleave(s, pp);
  const cplx q[] = {{0, 1}, {0, 0}, {0, 0}, {0, 0}};
  const auto sq = interleave(q, pp);
  CHECK(std::abs(st[0] - cplx{1, 0}) < 1e-15);
  CHECK(std::abs(sq[2] - cplx{1, 0}) < 1e-15);
  CHECK(energy(st) == doctest::Approx(1.0));
  CHECK(energy(sq) == doctest::Approx(1.0));
}

TEST_CASE("interleaver inverts exactly") {
  std::mt19937_64 rng(2);
  for (std::size_t n : {1, 4, 6, 7, 8}) {
    const auto pp = build_precoders(n);
    const Interleaver il(pp);
    CHECK(il.size() == n);
    for (int trial = 0; trial < 20; ++trial) {
      const auto s = random_vector(rng, n);
      const auto back = il.inverse(il.forward(s));
      const auto back2 = deinterleave(interleave(s, pp), pp);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(back[i] - s[i]) < 1e-12);
        CHECK(std::abs(back2[i] - s[i]) < 1e-12);
      }
    }
  }
  const PrecoderPair scaled{ComplexMatrix::identity(2) * cplx{2.0}, ComplexMatrix(2, 2)};
  CHECK_FALSE(as_signed_permutation(scaled));
  CHECK_THROWS_AS(Interleaver{scaled}, std::invalid_argument);
}

TEST_CASE("real coordinate map of the identity") {
  const auto m = real_coordinate_map(identity_precoders(3));
  REQUIRE(m.size() == 6);
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) CHECK(m[r][c] == (r == c ? 1.0 : 0.0));
}
