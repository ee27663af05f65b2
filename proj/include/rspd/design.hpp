#pragma once

#include <span>
#include <string>
#include <vector>

#include "rspd/complex_matrix.hpp"

namespace rspd {

class DesignError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Channel coefficients of one codeword use: h_k (source to relay k) and g_k (relay k to destination).
struct ChannelRealization {
  std::vector<cplx> source_relay;
  std::vector<cplx> relay_dest;
};

/// Outcome of the relay-matrix structure test every single-symbol decodable code must pass:
/// unit entries, disjoint A/B supports, column-monomial A, B and A+B.
struct RelayStructure {
  bool unit_entries = true;
  bool disjoint_support = true;
  bool column_monomial = true;
  std::string detail;  // first violation, empty when ok

  bool ok() const { return unit_entries && disjoint_support && column_monomial; }
};

/// Test a single relay pair (A_k, B_k). Entries must equal 0, +-1 or +-j exactly.
RelayStructure check_relay_structure(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_row_monomial(const ComplexMatrix& m, double tol = kTol);
bool is_column_monomial(const ComplexMatrix& m, double tol = kTol);

/// True iff no column index carries a nonzero in both matrices (equivalently a * b^H == 0
/// for unit-entry matrices). Throws DimensionError when shapes differ.
bool column_disjoint(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kTol);

/// The {P, Q, A_k, B_k} record defining a precoded distributed space-time block code.
///
/// `Design::create` rejects any relay set that breaks the unit-entry / disjoint-support /
/// column-monomial structure, so downstream code can rely on it. `Design::unvalidated` keeps
/// only the shape checks and exists for analysing foreign codes that are not of this form.
class Design {
 public:
  static Design create(ComplexMatrix p, ComplexMatrix q, std::vector<ComplexMatrix> a,
                       std::vector<ComplexMatrix> b);
  static Design unvalidated(ComplexMatrix p, ComplexMatrix q, std::vector<ComplexMatrix> a,
                            std::vector<ComplexMatrix> b);

  std::size_t n_symbols() const { return p_.rows(); }
  std::size_t n_relays() const { return a_.size(); }
  std::size_t n_slots() const { return a_.empty() ? 0 : a_.front().cols(); }

  const ComplexMatrix& precoder_p() const { return p_; }
  const ComplexMatrix& precoder_q() const { return q_; }
  const ComplexMatrix& relay_a(std::size_t k) const { return a_.at(k); }
  const ComplexMatrix& relay_b(std::size_t k) const { return b_.at(k); }
  const std::vector<ComplexMatrix>& relay_a() const { return a_; }
  const std::vector<ComplexMatrix>& relay_b() const { return b_; }

  /// Whether the relay structure holds (always true for `create`d designs).
  bool structurally_valid() const { return valid_; }

  friend bool operator==(const Design&, const Design&) = default;

 private:
  Design(ComplexMatrix p, ComplexMatrix q, std::vector<ComplexMatrix> a, std::vector<ComplexMatrix> b);

  ComplexMatrix p_, q_;
  std::vector<ComplexMatrix> a_, b_;
  bool valid_ = false;
};

/// K x T codeword whose k-th row is h_k s~ A_k + conj(h_k) conj(s~) B_k.
ComplexMatrix render_codeword(const Design& design, std::span<const cplx> h,
                              std::span<const cplx> s_tilde);

}  // namespace rspd
