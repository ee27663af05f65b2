#include "rspd/precoder.hpp"

#include <cmath>
#include <stdexcept>

namespace rspd {

namespace {

constexpr cplx j1{0.0, 1.0};

double coord(cplx v, std::size_t part) { return part == 0 ? v.real() : v.imag(); }

}  // namespace

ComplexMatrix gamma_block() {
  return 0.5 * ComplexMatrix::from_rows({{1, 0, -j1, 0},
                                         {0, 1, 0, -j1},
                                         {0, 1, 0, j1},
                                         {1, 0, j1, 0}});
}

ComplexMatrix omega_precoder_block() {
  return 0.5 * ComplexMatrix::from_rows({{1, 0, j1, 0},
                                         {0, 1, 0, j1},
                                         {0, -1, 0, j1},
                                         {-1, 0, j1, 0}});
}

PrecoderPair build_precoders(std::size_t n_symbols) {
  if (n_symbols == 0) throw std::invalid_argument("need at least one symbol");
  const std::size_t y = n_symbols / 4, a = n_symbols % 4;
  if (y == 0) return identity_precoders(n_symbols);
  // Block-diagonal copies keep each group of four consecutive symbols closed under the
  // interleave, which the per-block code construction relies on.
  ComplexMatrix p = kron(ComplexMatrix::identity(y), gamma_block());
  ComplexMatrix q = kron(ComplexMatrix::identity(y), omega_precoder_block());
  if (a > 0) {
    p = block_diag(p, ComplexMatrix::identity(a));
    q = block_diag(q, ComplexMatrix(a, a));
  }
  return {std::move(p), std::move(q)};
}

PrecoderPair identity_precoders(std::size_t n_symbols) {
  return {ComplexMatrix::identity(n_symbols), ComplexMatrix(n_symbols, n_symbols)};
}

std::vector<cplx> interleave(std::span<const cplx> s, const PrecoderPair& pp) {
  if (s.size() != pp.p.rows()) throw DimensionError("symbol vector length does not match precoders");
  std::vector<cplx> sc(s.begin(), s.end());
  for (auto& v : sc) v = std::conj(v);
  auto out = s * pp.p;
  auto tail = std::span<const cplx>(sc) * pp.q;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += tail[i];
  return out;
}

std::vector<std::vector<double>> real_coordinate_map(const PrecoderPair& pp) {
  const std::size_t n = pp.p.rows();
  std::vector<std::vector<double>> m(2 * n, std::vector<double>(2 * n, 0.0));
  std::vector<cplx> s(n);
  for (std::size_t c = 0; c < 2 * n; ++c) {
    std::fill(s.begin(), s.end(), cplx{});
    s[c / 2] = (c % 2 == 0) ? cplx{1, 0} : j1;
    const auto st = interleave(s, pp);
    for (std::size_t d = 0; d < 2 * n; ++d) m[c][d] = coord(st[d / 2], d % 2);
  }
  return m;
}

std::optional<SignedPermutation> as_signed_permutation(const PrecoderPair& pp) {
  const auto m = real_coordinate_map(pp);
  const std::size_t dim = m.size();
  SignedPermutation perm{std::vector<std::size_t>(dim), std::vector<int>(dim)};
  std::vector<int> col_hits(dim, 0);
  for (std::size_t c = 0; c < dim; ++c) {
    int hits = 0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double v = m[c][d];
      if (std::abs(v) <= kTol) continue;
      if (std::abs(std::abs(v) - 1.0) > kTol) return std::nullopt;
      ++hits;
      ++col_hits[d];
      perm.target[c] = d;
      perm.sign[c] = v > 0 ? 1 : -1;
    }
    if (hits != 1) return std::nullopt;
  }
  for (int h : col_hits)
    if (h != 1) return std::nullopt;
  return perm;
}

Interleaver::Interleaver(const PrecoderPair& pp) {
  auto perm = as_signed_permutation(pp);
  if (!perm) throw std::invalid_argument("precoder real map is not a signed permutation");
  perm_ = std::move(*perm);
}

std::vector<cplx> Interleaver::forward(std::span<const cplx> s) const {
  if (s.size() != size()) throw DimensionError("symbol vector length does not match interleaver");
  std::vector<double> out(2 * size(), 0.0);
  for (std::size_t c = 0; c < out.size(); ++c)
    out[perm_.target[c]] = perm_.sign[c] * coord(s[c / 2], c % 2);
  std::vector<cplx> st(size());
  for (std::size_t i = 0; i < st.size(); ++i) st[i] = {out[2 * i], out[2 * i + 1]};
  return st;
}

std::vector<cplx> Interleaver::inverse(std::span<const cplx> s_tilde) const {
  if (s_tilde.size() != size()) throw DimensionError("vector length does not match interleaver");
  std::vector<double> out(2 * size(), 0.0);
  for (std::size_t c = 0; c < out.size(); ++c) {
    const std::size_t d = perm_.target[c];
    out[c] = perm_.sign[c] * coord(s_tilde[d / 2], d % 2);
  }
  std::vector<cplx> s(size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = {out[2 * i], out[2 * i + 1]};
  return s;
}

std::vector<cplx> deinterleave(std::span<const cplx> s_tilde, const PrecoderPair& pp) {
  return Interleaver(pp).inverse(s_tilde);
}

}  // namespace rspd
