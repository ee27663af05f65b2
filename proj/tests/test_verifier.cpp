#include <doctest.h>

#include <random>

#include "rspd/verifier.hpp"
#include "support.hpp"

using namespace rspd;

namespace {

std::string kind(const std::string& failure) { return failure.substr(0, failure.find(':')); }

// True when `r` fails a check that the unmutated code passes.
bool has_new_failure(const VerificationReport& r, const VerificationReport& original) {
  for (const auto& f : r.failures) {
    bool known = false;
    for (const auto& o : original.failures) known = known || kind(o) == kind(f);
    if (!known) return true;
  }
  return false;
}

std::vector<Design> valid_designs_and_mutants() {
  std::vector<Design> out;
  std::uint64_t seed = 100;
  for (const auto& f : testing::reference_fixtures()) {
    out.push_back(f.printed);
    for (auto& m : testing::single_entry_mutants(f.printed, 50, seed++))
      if (m.structurally_valid()) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

TEST_CASE("reference codes classify as expected") {
  for (const auto& f : testing::reference_fixtures()) {
    CAPTURE(f.name);
    const auto r = verify(f.printed);
    CHECK(r.pdssdc.ok() == f.pdssdc);
    CHECK(r.unitary.ok == f.unitary);
    CHECK(r.semi_orthogonal.ok);
    CHECK(r.semi_orthogonal.non_orthogonal_pairs == f.matching);
    CHECK(r.row_monomial_ok);
    CHECK(r.covariance_diagonal);
    CHECK(r.theorem1.ok());
    CHECK(r.pdssdc.max_reconstruction_error <= 1e-7);
    if (f.unitary) {
      CHECK(r.passed());
      CHECK(r.lemmas.ok());
    } else {
      // Relays that skip symbols break both unitarity and the positive row-norm property.
      REQUIRE(r.failures.size() == 2);
      CHECK(kind(r.failures[0]) == "unitary");
      CHECK(kind(r.failures[1]) == "relay matrix lemmas");
      CHECK_FALSE(r.lemmas.row_norm_ok);
      CHECK(r.lemmas.structure_ok);
    }
  }
}

TEST_CASE("the unprecoded two-relay code is not in the class") {
  const Design d = testing::x_dssdc();
  const auto r = verify(d);
  CHECK_FALSE(r.pdssdc.structural_ok);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.row_monomial_ok);
  CHECK_THROWS_AS(certify(d), VerificationError);
}

TEST_CASE("certify accepts single-symbol decodable codes") {
  for (const auto& f : testing::reference_fixtures()) {
    CAPTURE(f.name);
    CHECK_NOTHROW(certify(f.printed));
  }
}

TEST_CASE("single-entry mutants are caught") {
  std::uint64_t seed = 100;
  for (const auto& f : testing::reference_fixtures()) {
    CAPTURE(f.name);
    const auto original = verify(f.printed);
    for (const auto& m : testing::single_entry_mutants(f.printed, 50, seed++)) {
      const auto r = verify(m);
      CHECK_FALSE(r.passed());
      CHECK(has_new_failure(r, original));
    }
  }
}

TEST_CASE("diagonal covariance coincides with row-monomial relay matrices") {
  for (const auto& d : valid_designs_and_mutants()) {
    const auto r = verify(d);
    CHECK(r.covariance_diagonal == relay_matrices_row_monomial(d));
  }
}

TEST_CASE("sufficient conditions agree with the decomposition check") {
  std::size_t checked = 0;
  for (const auto& d : valid_designs_and_mutants()) {
    const auto r = verify(d);
    CHECK(r.theorem1.ok() == r.pdssdc.ok());
    ++checked;
  }
  CHECK(checked > 7);
}

TEST_CASE("quadratic form tensor reproduces X R^-1 X^H") {
  const Design d = build_rs_pdssdc(4, 6);
  const auto [h, g] = verification_draw(9, 0, d.n_relays());
  const auto t = extract_quadratic_forms(d, h, g, 1.0, 1.0);
  const auto nc = covariance(d, g, 1.0, 1.0);
  const auto r_inv = inverse(nc.r);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> u(2 * d.n_symbols());
    for (auto& v : u) v = nd(rng);
    const auto x = codeword_at(d, h, u);
    const auto m = x * r_inv * x.adjoint();
    for (std::size_t k = 0; k < d.n_relays(); ++k)
      for (std::size_t k2 = 0; k2 < d.n_relays(); ++k2)
        CHECK(std::abs(m(k, k2) - t.evaluate(k, k2, u)) <= 1e-9 * std::max(1.0, m.max_abs()));
  }
}

TEST_CASE("covariance of an Alamouti-block code is a scaled identity") {
  const Design d = build_rs_pdssdc(4, 4);
  const auto [h, g] = verification_draw(1, 3, 4);
  const double p1 = 2.0, p2 = 3.0;
  const auto nc = covariance(d, g, p1, p2);
  double sum = 0;
  for (const auto& z : g) sum += std::norm(z);
  const double scale = p2 * 4 / ((1 + p1) * 4);
  CHECK(nc.scale == doctest::Approx(scale));
  CHECK(nc.r.approx_equal(ComplexMatrix::identity(4) * cplx{1 + scale * sum}, 1e-12));
  CHECK_THROWS_AS(covariance(d, g, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(covariance(d, std::vector<cplx>(3), 1.0, 1.0), DimensionError);
}

TEST_CASE("channel draws are reproducible") {
  const auto a = verification_draw(5, 2, 4), b = verification_draw(5, 2, 4), c = verification_draw(5, 3, 4);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("report JSON uses 1-based rows") {
  const auto j = report_to_json(verify(build_rs_pdssdc(4, 4)));
  CHECK(j.at("passed").get<bool>());
  CHECK(j.at("orthogonality_matching") == nlohmann::json::parse("[[1,3],[2,4]]"));
  CHECK(j.at("draws").get<int>() == 20);
}
