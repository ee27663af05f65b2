#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "rspd/complex_matrix.hpp"

namespace rspd {

using Rng = std::mt19937_64;

/// Deterministic generator derived from a base seed and a path of stream indices.
inline Rng make_rng(std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words;
  for (std::uint64_t v : path) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

/// Circularly symmetric complex Gaussian with E|z|^2 = variance.
inline cplx cscg(Rng& rng, double variance = 1.0) {
  std::normal_distribution<double> nd(0.0, std::sqrt(variance / 2.0));
  const double re = nd(rng);
  return {re, nd(rng)};
}

inline std::vector<cplx> cscg_vector(Rng& rng, std::size_t n, double variance = 1.0) {
  std::vector<cplx> v(n);
  for (auto& z : v) z = cscg(rng, variance);
  return v;
}

}  // namespace rspd
