#include <doctest.h>

#include <random>

#include "rspd/complex_matrix.hpp"

using namespace rspd;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> nd;
  ComplexMatrix m(r, c);
  for (auto& z : m.entries()) z = {nd(rng), nd(rng)};
  return m;
}

// Entry-wise textbook product, independent of the library kernel.
cplx naive_entry(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t i, std::size_t j) {
  cplx acc{};
  for (std::size_t p = 0; p < a.cols(); ++p) acc += a(i, p) * b(p, j);
  return acc;
}

}  // namespace

TEST_CASE("product matches the entry-wise definition") {
  std::mt19937_64 rng(1);
  const auto a = random_matrix(rng, 3, 5), b = random_matrix(rng, 5, 4);
  const auto c = a * b;
  REQUIRE(c.rows() == 3);
  REQUIRE(c.cols() == 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(c(i, j) - naive_entry(a, b, i, j)) < 1e-12);
  CHECK_THROWS_AS(b * b, DimensionError);
}

TEST_CASE("adjoint, transpose and conj") {
  const auto m = ComplexMatrix::from_rows({{{1, 2}, {3, -1}}, {{0, 1}, {2, 0}}, {{5, 0}, {0, -4}}});
  CHECK(m.transpose()(1, 2) == cplx{0, -4});
  CHECK(m.conj()(0, 0) == cplx{1, -2});
  CHECK(m.adjoint() == m.transpose().conj());
  CHECK(m.adjoint().adjoint() == m);
}

TEST_CASE("kron follows the block definition") {
  const auto a = ComplexMatrix::from_rows({{1, 2}, {3, 4}});
  const auto b = ComplexMatrix::from_rows({{0, {0, 1}}, {1, 0}});
  const auto k = kron(a, b);
  REQUIRE(k.rows() == 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t q = 0; q < 2; ++q) CHECK(k(2 * i + p, 2 * j + q) == a(i, j) * b(p, q));
}

TEST_CASE("block_diag, hcat and vcat") {
  const auto a = ComplexMatrix::from_rows({{1, 2}});
  const auto b = ComplexMatrix::from_rows({{3}, {4}});
  const auto d = block_diag(a, b);
  CHECK(d.rows() == 3);
  CHECK(d.cols() == 3);
  CHECK(d(0, 1) == cplx{2});
  CHECK(d(2, 2) == cplx{4});
  CHECK(d(1, 0) == cplx{});
  CHECK(hcat(a, a).cols() == 4);
  CHECK(vcat(b, b).rows() == 4);
  CHECK_THROWS_AS(hcat(a, b), DimensionError);
  CHECK_THROWS_AS(vcat(a, b), DimensionError);
}

TEST_CASE("inverse times matrix is the identity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = random_matrix(rng, 6, 6);
    CHECK((m * inverse(m)).approx_equal(ComplexMatrix::identity(6), 1e-9));
  }
  CHECK_THROWS_AS(inverse(ComplexMatrix(2, 2)), std::domain_error);
  CHECK_THROWS_AS(inverse(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("rank of outer products and random matrices") {
  std::mt19937_64 rng(3);
  const auto u = random_matrix(rng, 5, 1), v = random_matrix(rng, 1, 4);
  CHECK(rank(u * v) == 1);
  const auto w = random_matrix(rng, 5, 2), z = random_matrix(rng, 2, 4);
  CHECK(rank(w * z) == 2);
  CHECK(rank(random_matrix(rng, 4, 6)) == 4);
  CHECK(rank(ComplexMatrix(3, 3)) == 0);
}

TEST_CASE("structure queries") {
  auto m = ComplexMatrix::identity(3);
  CHECK(m.is_diagonal());
  CHECK(count_nonzero(m) == 3);
  m(0, 2) = {0, 1e-6};
  CHECK_FALSE(m.is_diagonal());
  CHECK(m.max_off_diagonal() == doctest::Approx(1e-6));
  CHECK(ComplexMatrix(2, 2).is_zero());
  const cplx row[] = {1, 2, 3};
  const auto r = std::span<const cplx>(row) * ComplexMatrix::identity(3);
  CHECK(r == std::vector<cplx>{1, 2, 3});
}
