#include "rspd/symbolic.hpp"

#include <charconv>
#include <sstream>

#include "rspd/design_io.hpp"

namespace rspd {

void SymbolicMatrix::place(const SymbolicMatrix& block, std::size_t row, std::size_t col) {
  if (row + block.rows() > rows_ || col + block.cols() > cols_)
    throw DimensionError("symbolic block does not fit at the requested position");
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < block.cols(); ++c) (*this)(row + r, col + c) = block(r, c);
}

SymbolicMatrix SymbolicMatrix::top_rows(std::size_t count) const {
  if (count > rows_) throw DimensionError("cannot keep more rows than the matrix has");
  SymbolicMatrix out(count, cols_);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
  return out;
}

SymbolicMatrix hcat(const SymbolicMatrix& a, const SymbolicMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hcat of symbolic matrices with different row counts");
  SymbolicMatrix out(a.rows(), a.cols() + b.cols());
  out.place(a, 0, 0);
  out.place(b, 0, a.cols());
  return out;
}

Design design_from_symbolic(const SymbolicMatrix& x, std::size_t n_symbols, ComplexMatrix p,
                            ComplexMatrix q) {
  std::vector<ComplexMatrix> a(x.rows(), ComplexMatrix(n_symbols, x.cols()));
  std::vector<ComplexMatrix> b = a;
  for (std::size_t k = 0; k < x.rows(); ++k)
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const SymEntry& e = x(k, c);
      if (e.is_zero()) continue;
      if (static_cast<std::size_t>(e.symbol) >= n_symbols)
        throw DimensionError("symbol index " + std::to_string(e.symbol + 1) + " exceeds N");
      (e.conj ? b[k] : a[k])(e.symbol, c) += e.coeff;
    }
  return Design::create(std::move(p), std::move(q), std::move(a), std::move(b));
}

SymbolicMatrix symbolic_from_design(const Design& d) {
  if (!d.structurally_valid())
    throw DesignError("symbolic form needs unit-entry column-monomial relay matrices");
  SymbolicMatrix x(d.n_relays(), d.n_slots());
  for (std::size_t k = 0; k < d.n_relays(); ++k)
    for (std::size_t n = 0; n < d.n_symbols(); ++n)
      for (std::size_t c = 0; c < d.n_slots(); ++c) {
        if (d.relay_a(k)(n, c) != cplx{}) x(k, c) = sym(static_cast<int>(n), false, d.relay_a(k)(n, c));
        if (d.relay_b(k)(n, c) != cplx{}) x(k, c) = sym(static_cast<int>(n), true, d.relay_b(k)(n, c));
      }
  return x;
}

std::string format_entry(const SymEntry& e) {
  if (e.is_zero()) return "0";
  std::string s;
  if (e.coeff == cplx{-1, 0}) s = "-";
  else if (e.coeff == cplx{0, 1}) s = "j";
  else if (e.coeff == cplx{0, -1}) s = "-j";
  else if (e.coeff != cplx{1, 0}) throw DesignError("symbolic entries need coefficients in {+-1, +-j}");
  s += "x" + std::to_string(e.symbol + 1);
  if (e.conj) s += "*";
  return s;
}

SymEntry parse_entry(std::string_view token) {
  const std::string_view original = token;
  auto fail = [&] { return FormatError("bad symbolic entry '" + std::string(original) + "'"); };
  if (token == "0") return {};
  SymEntry e;
  if (!token.empty() && (token.front() == '-' || token.front() == '+')) {
    if (token.front() == '-') e.coeff = -e.coeff;
    token.remove_prefix(1);
  }
  if (!token.empty() && token.front() == 'j') {
    e.coeff *= cplx{0, 1};
    token.remove_prefix(1);
  }
  if (token.empty() || token.front() != 'x') throw fail();
  token.remove_prefix(1);
  if (!token.empty() && token.back() == '*') {
    e.conj = true;
    token.remove_suffix(1);
  }
  int idx = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), idx);
  if (ec != std::errc{} || ptr != token.data() + token.size() || idx < 1) throw fail();
  e.symbol = idx - 1;
  return e;
}

SymbolicFile parse_symbolic(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (!tokens.empty()) rows.push_back(std::move(tokens));
  }
  if (rows.empty() || rows.front().size() != 3) throw FormatError("symbolic file needs an 'N K T' header");
  std::size_t dims[3];
  for (int i = 0; i < 3; ++i) {
    const auto& t = rows.front()[i];
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), dims[i]);
    if (ec != std::errc{} || ptr != t.data() + t.size() || dims[i] == 0)
      throw FormatError("bad header value '" + t + "'");
  }
  const auto [n, k, t] = dims;
  if (rows.size() != k + 1) throw FormatError("symbolic file must have K = " + std::to_string(k) + " rows");
  SymbolicFile f{n, SymbolicMatrix(k, t)};
  for (std::size_t r = 0; r < k; ++r) {
    if (rows[r + 1].size() != t)
      throw FormatError("row " + std::to_string(r + 1) + " must have T = " + std::to_string(t) + " entries");
    for (std::size_t c = 0; c < t; ++c) {
      f.matrix(r, c) = parse_entry(rows[r + 1][c]);
      if (f.matrix(r, c).symbol >= static_cast<int>(n)) throw FormatError("symbol index exceeds N");
    }
  }
  return f;
}

std::string format_symbolic(const SymbolicMatrix& x, std::size_t n_symbols) {
  std::ostringstream out;
  out << n_symbols << ' ' << x.rows() << ' ' << x.cols() << '\n';
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) out << (c ? " " : "") << format_entry(x(r, c));
    out << '\n';
  }
  return out.str();
}

}  // namespace rspd
