#include "rspd/design.hpp"

#include <cmath>
#include <string>

namespace rspd {

namespace {

bool is_unit_or_zero(cplx v) {
  return v == cplx{} || v == cplx{1, 0} || v == cplx{-1, 0} || v == cplx{0, 1} ||
         v == cplx{0, -1};
}

std::string at(std::size_t r, std::size_t c) {
  return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
}

}  // namespace

RelayStructure check_relay_structure(const ComplexMatrix& a, const ComplexMatrix& b) {
  RelayStructure s;
  if (!a.same_shape(b)) throw DimensionError("relay matrices A and B differ in shape");
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (!is_unit_or_zero(a(r, c)) || !is_unit_or_zero(b(r, c))) {
        if (s.unit_entries) s.detail = "entry outside {0,+-1,+-j} at " + at(r, c);
        s.unit_entries = false;
      }
      if (std::abs(a(r, c)) > kTol && std::abs(b(r, c)) > kTol) {
        if (s.disjoint_support && s.detail.empty()) s.detail = "A and B overlap at " + at(r, c);
        s.disjoint_support = false;
      }
    }
  if (!is_column_monomial(a) || !is_column_monomial(b) || !is_column_monomial(a + b)) {
    if (s.detail.empty()) s.detail = "A, B or A+B not column monomial";
    s.column_monomial = false;
  }
  return s;
}

bool is_row_monomial(const ComplexMatrix& m, double tol) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    int nz = 0;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (std::abs(m(r, c)) > tol && ++nz > 1) return false;
  }
  return true;
}

bool is_column_monomial(const ComplexMatrix& m, double tol) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    int nz = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (std::abs(m(r, c)) > tol && ++nz > 1) return false;
  }
  return true;
}

bool column_disjoint(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (!a.same_shape(b)) throw DimensionError("column_disjoint needs equal shapes");
  for (std::size_t c = 0; c < a.cols(); ++c) {
    bool in_a = false, in_b = false;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      in_a = in_a || std::abs(a(r, c)) > tol;
      in_b = in_b || std::abs(b(r, c)) > tol;
    }
    if (in_a && in_b) return false;
  }
  return true;
}

Design::Design(ComplexMatrix p, ComplexMatrix q, std::vector<ComplexMatrix> a,
               std::vector<ComplexMatrix> b)
    : p_(std::move(p)), q_(std::move(q)), a_(std::move(a)), b_(std::move(b)) {
  const std::size_t n = p_.rows();
  if (n == 0 || !p_.is_square() || !q_.same_shape(p_))
    throw DesignError("precoders must be nonempty N x N matrices of equal shape");
  if (a_.empty() || a_.size() != b_.size())
    throw DesignError("need the same nonzero number of A and B relay matrices");
  const std::size_t t = a_.front().cols();
  if (t == 0) throw DesignError("relay matrices need at least one column");
  for (std::size_t k = 0; k < a_.size(); ++k) {
    if (a_[k].rows() != n || b_[k].rows() != n || a_[k].cols() != t || b_[k].cols() != t) {
      throw DesignError("relay matrices of relay " + std::to_string(k + 1) + " are not " +
                        std::to_string(n) + "x" + std::to_string(t));
    }
  }
  valid_ = true;
  for (std::size_t k = 0; k < a_.size() && valid_; ++k)
    valid_ = check_relay_structure(a_[k], b_[k]).ok();
}

Design Design::create(ComplexMatrix p, ComplexMatrix q, std::vector<ComplexMatrix> a,
                      std::vector<ComplexMatrix> b) {
  Design d(std::move(p), std::move(q), std::move(a), std::move(b));
  if (!d.valid_) {
    for (std::size_t k = 0; k < d.a_.size(); ++k) {
      auto s = check_relay_structure(d.a_[k], d.b_[k]);
      if (!s.ok()) throw DesignError("relay " + std::to_string(k + 1) + ": " + s.detail);
    }
  }
  return d;
}

Design Design::unvalidated(ComplexMatrix p, ComplexMatrix q, std::vector<ComplexMatrix> a,
                           std::vector<ComplexMatrix> b) {
  return Design(std::move(p), std::move(q), std::move(a), std::move(b));
}

ComplexMatrix render_codeword(const Design& design, std::span<const cplx> h,
                              std::span<const cplx> s_tilde) {
  if (h.size() != design.n_relays())
    throw DimensionError("channel has " + std::to_string(h.size()) + " taps, design has " +
                         std::to_string(design.n_relays()) + " relays");
  if (s_tilde.size() != design.n_symbols())
    throw DimensionError("symbol vector length " + std::to_string(s_tilde.size()) +
                         " != N = " + std::to_string(design.n_symbols()));
  const std::size_t n = design.n_symbols(), t = design.n_slots();
  ComplexMatrix x(design.n_relays(), t);
  for (std::size_t k = 0; k < design.n_relays(); ++k) {
    const auto& a = design.relay_a(k);
    const auto& b = design.relay_b(k);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx plain = h[k] * s_tilde[i];
      const cplx conj = std::conj(h[k]) * std::conj(s_tilde[i]);
      for (std::size_t c = 0; c < t; ++c) x(k, c) += plain * a(i, c) + conj * b(i, c);
    }
  }
  return x;
}

}  // namespace rspd
