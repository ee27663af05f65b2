#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rspd/design.hpp"

namespace rspd {

/// One entry of a symbolic code matrix: coeff * h_k * x~_symbol, or coeff * conj(h_k) * conj(x~_symbol)
/// when `conj` is set. `symbol < 0` marks a zero entry. Symbol indices are 0-based.
struct SymEntry {
  int symbol = -1;
  bool conj = false;
  cplx coeff{1, 0};

  bool is_zero() const { return symbol < 0; }
  friend bool operator==(const SymEntry&, const SymEntry&) = default;
};

inline SymEntry sym(int symbol, bool conj = false, cplx coeff = {1, 0}) { return {symbol, conj, coeff}; }

/// Rows are relays, columns are time slots.
class SymbolicMatrix {
 public:
  SymbolicMatrix() = default;
  SymbolicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  SymEntry& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const SymEntry& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  /// Place `block` with its top-left corner at (row, col); throws DimensionError if it does not fit.
  void place(const SymbolicMatrix& block, std::size_t row, std::size_t col);
  SymbolicMatrix top_rows(std::size_t count) const;

  friend bool operator==(const SymbolicMatrix&, const SymbolicMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<SymEntry> e_;
};

SymbolicMatrix hcat(const SymbolicMatrix& a, const SymbolicMatrix& b);

/// Relay matrices of a symbolic code: plain entries go to A_k, conjugated entries to B_k.
Design design_from_symbolic(const SymbolicMatrix& x, std::size_t n_symbols, ComplexMatrix p,
                            ComplexMatrix q);

/// Inverse of design_from_symbolic. Requires a structurally valid design.
SymbolicMatrix symbolic_from_design(const Design& d);

/// Text form: tokens such as `0`, `x3`, `-x2*`, `jx1`, `-jx4*` (1-based symbol indices).
std::string format_entry(const SymEntry& e);
SymEntry parse_entry(std::string_view token);

/// Fixture file format: optional `#` comment lines, a header line `N K T`, then K rows of T tokens.
struct SymbolicFile {
  std::size_t n_symbols = 0;
  SymbolicMatrix matrix;
};
SymbolicFile parse_symbolic(std::string_view text);
std::string format_symbolic(const SymbolicMatrix& x, std::size_t n_symbols);

}  // namespace rspd
