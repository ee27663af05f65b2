#pragma once

#include <optional>

#include "rspd/design.hpp"
#include "rspd/symbolic.hpp"

namespace rspd {

/// 2x2 Alamouti block [x_i x_j; -x_j* x_i*] (0-based symbol indices, i != j).
SymbolicMatrix alamouti_block(std::size_t i, std::size_t j);

/// Alamouti block with the second symbol set to zero: [x_i 0; 0 x_i*].
SymbolicMatrix alamouti_block_padded(std::size_t i);

/// 4x4 block [U(1,2) U(3,4); U(3,4) U(1,2)] over symbols 4m .. 4m+3.
SymbolicMatrix omega_block(std::size_t m);

/// Symbolic forms of the constructions below; rows already follow the alternating plain /
/// conjugated channel pattern.
SymbolicMatrix case1_symbolic(std::size_t n, std::size_t k);
SymbolicMatrix case2_symbolic(std::size_t n, std::size_t k);

/// Distributed orthogonal code over symbols offset .. offset+b-1 for any b >= 1 and k >= 2.
/// Relay pairs (2i, 2i+1) own private column blocks of juxtaposed Alamouti blocks; with odd k
/// the last relay sends the b symbols uncoded in b private columns.
SymbolicMatrix dostbc_symbolic(std::size_t b, std::size_t k, std::size_t offset = 0);

/// N = 4y, K = 4x: T = NK/4.
Design build_case1(std::size_t n, std::size_t k);
/// N = 4y, K = 4x + a (a = 1, 2, 3, K >= 5): the K = 4(x+1) code with its last 4 - a rows dropped.
Design build_case2(std::size_t n, std::size_t k);
/// Residual orthogonal code for b in {1, 2, 3} symbols with identity precoders.
Design build_dostbc(std::size_t b, std::size_t k);
/// The same scheme for any number of symbols (e.g. the N = 4, K = 4 baseline with T = 8).
Design build_dostbc_baseline(std::size_t n, std::size_t k);

struct Construction {
  Design design;
  /// Table value for the (n, k) residue class, absent outside the tabulated range.
  std::optional<std::size_t> table_slots;

  /// True when the constructed length differs from the table value.
  bool deviates() const { return table_slots && *table_slots != design.n_slots(); }
};

/// Row-monomial semi-orthogonal code for n >= 1, k >= 4. Throws std::invalid_argument for k < 4.
Construction construct_rs_pdssdc(std::size_t n, std::size_t k);
Design build_rs_pdssdc(std::size_t n, std::size_t k);

}  // namespace rspd
