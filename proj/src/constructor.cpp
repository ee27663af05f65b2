#include "rspd/constructor.hpp"

#include <stdexcept>
#include <string>

#include "rspd/bounds.hpp"
#include "rspd/precoder.hpp"

namespace rspd {

namespace {

int idx(std::size_t i) { return static_cast<int>(i); }

std::string nk(std::size_t n, std::size_t k) {
  return "(n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";
}

// Block-circulant scheme when 4 divides k, paired scheme otherwise.
SymbolicMatrix precoded_part(std::size_t n, std::size_t k) {
  return k % 4 == 0 ? case1_symbolic(n, k) : case2_symbolic(n, k);
}

}  // namespace

SymbolicMatrix alamouti_block(std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("Alamouti block needs two distinct symbols");
  SymbolicMatrix u(2, 2);
  u(0, 0) = sym(idx(i));
  u(0, 1) = sym(idx(j));
  u(1, 0) = sym(idx(j), true, -1.0);
  u(1, 1) = sym(idx(i), true);
  return u;
}

SymbolicMatrix alamouti_block_padded(std::size_t i) {
  SymbolicMatrix u(2, 2);
  u(0, 0) = sym(idx(i));
  u(1, 1) = sym(idx(i), true);
  return u;
}

SymbolicMatrix omega_block(std::size_t m) {
  const std::size_t s = 4 * m;
  const auto u12 = alamouti_block(s, s + 1), u34 = alamouti_block(s + 2, s + 3);
  SymbolicMatrix w(4, 4);
  w.place(u12, 0, 0);
  w.place(u34, 0, 2);
  w.place(u34, 2, 0);
  w.place(u12, 2, 2);
  return w;
}

SymbolicMatrix case1_symbolic(std::size_t n, std::size_t k) {
  if (n == 0 || n % 4 != 0 || k == 0 || k % 4 != 0)
    throw std::invalid_argument("case 1 needs n and k positive multiples of 4 " + nk(n, k));
  const std::size_t x = k / 4, y = n / 4;
  // Each 4x4 block sits on the diagonal of a 4x x 4x block; blocks for successive
  // symbol groups are juxtaposed.
  SymbolicMatrix out(k, 4 * x * y);
  for (std::size_t m = 0; m < y; ++m) {
    const auto w = omega_block(m);
    for (std::size_t i = 0; i < x; ++i) out.place(w, 4 * i, 4 * x * m + 4 * i);
  }
  return out;
}

SymbolicMatrix case2_symbolic(std::size_t n, std::size_t k) {
  if (k < 5 || k % 4 == 0)
    throw std::invalid_argument("case 2 needs k >= 5 with k not a multiple of 4 " + nk(n, k));
  return case1_symbolic(n, 4 * (k / 4 + 1)).top_rows(k);
}

SymbolicMatrix dostbc_symbolic(std::size_t b, std::size_t k, std::size_t offset) {
  if (b == 0) throw std::invalid_argument("orthogonal code needs at least one symbol");
  if (k < 2) throw std::invalid_argument("orthogonal code needs k >= 2");
  const std::size_t pairs = k / 2, width = 2 * ((b + 1) / 2);
  const std::size_t t = pairs * width + (k % 2 ? b : 0);
  SymbolicMatrix out(k, t);
  for (std::size_t p = 0; p < pairs; ++p) {
    for (std::size_t s = 0; s < b; s += 2) {
      const auto u = s + 1 < b ? alamouti_block(offset + s, offset + s + 1)
                               : alamouti_block_padded(offset + s);
      out.place(u, 2 * p, p * width + s);
    }
  }
  if (k % 2)
    for (std::size_t s = 0; s < b; ++s) out(k - 1, pairs * width + s) = sym(idx(offset + s));
  return out;
}

Design build_case1(std::size_t n, std::size_t k) {
  auto pp = build_precoders(n);
  return design_from_symbolic(case1_symbolic(n, k), n, std::move(pp.p), std::move(pp.q));
}

Design build_case2(std::size_t n, std::size_t k) {
  auto pp = build_precoders(n);
  return design_from_symbolic(case2_symbolic(n, k), n, std::move(pp.p), std::move(pp.q));
}

Design build_dostbc(std::size_t b, std::size_t k) {
  if (b < 1 || b > 3) throw std::invalid_argument("residual orthogonal code covers 1 to 3 symbols");
  return build_dostbc_baseline(b, k);
}

Design build_dostbc_baseline(std::size_t n, std::size_t k) {
  auto pp = identity_precoders(n);
  return design_from_symbolic(dostbc_symbolic(n, k), n, std::move(pp.p), std::move(pp.q));
}

Construction construct_rs_pdssdc(std::size_t n, std::size_t k) {
  if (n == 0) throw std::invalid_argument("need n >= 1");
  if (k < 4) throw std::invalid_argument("K >= 4 required (got k=" + std::to_string(k) + ")");
  const std::size_t b = n % 4, n4 = n - b;
  std::optional<std::size_t> table;
  if (n >= 4) table = min_slots(n, k).t_rs;

  if (n4 == 0) return {build_dostbc_baseline(n, k), table};
  SymbolicMatrix x = precoded_part(n4, k);
  if (b > 0) x = hcat(x, dostbc_symbolic(b, k, n4));
  auto pp = build_precoders(n);
  return {design_from_symbolic(x, n, std::move(pp.p), std::move(pp.q)), table};
}

Design build_rs_pdssdc(std::size_t n, std::size_t k) { return construct_rs_pdssdc(n, k).design; }

}  // namespace rspd
