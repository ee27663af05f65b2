#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rspd/design.hpp"

namespace rspd {

/// Settings shared by the randomized checks. A failed check is definitive; a pass holds for
/// the generic channel draws taken, which is sound with probability one.
struct VerifyOptions {
  std::size_t draws = 20;
  std::uint64_t seed = 20240601;
  double p1 = 1.0;
  double p2 = 1.0;
  double tol = 1e-8;                   // relative zero test for products and forms
  std::size_t reconstruction_samples = 200;
  double reconstruction_tol = 1e-7;
};

/// Relay gain factor P2 T / ((1 + P1) N).
double relay_power_scale(const Design& d, double p1, double p2);

struct NoiseCovariance {
  ComplexMatrix r;
  double scale = 0.0;
  std::vector<cplx> channel;
};

/// R = scale * sum_k |g_k|^2 (A_k^H A_k + B_k^H B_k) + I_T. Throws for non-positive powers.
NoiseCovariance covariance(const Design& d, std::span<const cplx> g, double p1, double p2);

/// Codeword for the real symbol coordinates u = (x_1I, x_1Q, ..., x_NI, x_NQ).
ComplexMatrix codeword_at(const Design& d, std::span<const cplx> h, std::span<const double> coords);

/// Coefficients of every entry of X R^-1 X^H as a quadratic form in the 2N real coordinates:
/// [X R^-1 X^H]_{k,k'}(u) = sum_{p,q} C^{kk'}_{pq} u_p u_q with C^{kk'} symmetric (complex valued
/// off the diagonal of X R^-1 X^H).
class QuadraticFormTensor {
 public:
  QuadraticFormTensor(std::size_t relays, std::size_t dim);

  std::size_t relays() const { return relays_; }
  std::size_t dim() const { return dim_; }
  ComplexMatrix& form(std::size_t k, std::size_t k2) { return forms_[k * relays_ + k2]; }
  const ComplexMatrix& form(std::size_t k, std::size_t k2) const { return forms_[k * relays_ + k2]; }
  cplx evaluate(std::size_t k, std::size_t k2, std::span<const double> coords) const;
  double max_abs() const;

 private:
  std::size_t relays_, dim_;
  std::vector<ComplexMatrix> forms_;
};

/// Polarization: evaluates M = X R^-1 X^H at basis vectors e_p and at e_p + e_q.
QuadraticFormTensor extract_quadratic_forms(const Design& d, std::span<const cplx> h,
                                            std::span<const cplx> g, double p1, double p2);

struct PdssdcResult {
  bool structural_ok = false;
  bool decomposition_ok = false;
  std::size_t draws_checked = 0;
  std::size_t samples_checked = 0;
  double max_reconstruction_error = 0.0;
  std::string detail;
  bool ok() const { return structural_ok && decomposition_ok; }
};
PdssdcResult check_pdssdc(const Design& d, const VerifyOptions& opt = {});

using RowPair = std::pair<std::size_t, std::size_t>;  // 0-based, first < second

struct SemiOrthogonalResult {
  std::vector<RowPair> non_orthogonal_pairs;
  bool ok = false;  // every row has at most one partner
};
SemiOrthogonalResult check_semi_orthogonal(const Design& d, const VerifyOptions& opt = {});

struct UnitaryResult {
  bool ok = false;
  std::string detail;
};
UnitaryResult check_unitary(const Design& d, const VerifyOptions& opt = {});

struct Theorem1Result {
  bool orthogonality_a = true;   // A-products for k != k'
  bool orthogonality_b = true;   // B-products for k != k'
  bool cross_ba = true;          // B_k / A_k' products
  bool cross_ab = true;          // A_k / B_k' products
  bool row_norm = true;          // A_k R^-1 A_k^H + B_k^* R^-T B_k^T real diagonal
  std::string first_violation;
  bool ok() const { return orthogonality_a && orthogonality_b && cross_ba && cross_ab && row_norm; }
};
Theorem1Result check_theorem1(const Design& d, const VerifyOptions& opt = {});

struct PairLemma {
  RowPair rows;
  bool diagonal_zero = false;
  bool products_monomial = false;
  bool sum_monomial = false;
  bool even_nonzeros = false;
  std::size_t nonzeros = 0;
  std::size_t rank = 0;
  std::size_t rank_required = 0;
  bool ok() const {
    return diagonal_zero && products_monomial && sum_monomial && even_nonzeros && rank >= rank_required;
  }
};

struct RelayLemmaReport {
  bool structure_ok = false;          // unit entries, disjoint supports, column monomial
  bool row_norm_ok = false;           // A_k A_k^H + B_k^* B_k^T diagonal with positive entries
  bool orthogonal_pairs_disjoint = false;
  std::vector<PairLemma> non_orthogonal_pairs;
  std::string detail;
  bool ok() const;
};
/// Exact checks on the relay matrices; `partners` lists the R-non-orthogonal row pairs.
RelayLemmaReport check_relay_lemmas(const Design& d, const std::vector<RowPair>& partners);

bool relay_matrices_row_monomial(const Design& d);

struct VerificationReport {
  PdssdcResult pdssdc;
  SemiOrthogonalResult semi_orthogonal;
  UnitaryResult unitary;
  Theorem1Result theorem1;
  RelayLemmaReport lemmas;
  bool row_monomial_ok = false;
  bool covariance_diagonal = false;  // over all draws
  VerifyOptions options;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

VerificationReport verify(const Design& d, const VerifyOptions& opt = {});
nlohmann::json report_to_json(const VerificationReport& r);

/// Channel draw `i` of a verification run: (h, g) each K i.i.d. CSCG(0,1).
std::pair<std::vector<cplx>, std::vector<cplx>> verification_draw(std::uint64_t seed, std::size_t i,
                                                                  std::size_t relays);

class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A design that has passed the single-symbol decodability check. Only `certify` creates one.
class VerifiedDesign {
 public:
  const Design& design() const { return design_; }

 private:
  explicit VerifiedDesign(Design d) : design_(std::move(d)) {}
  friend VerifiedDesign certify(const Design& d, const VerifyOptions& opt);
  Design design_;
};

/// Throws VerificationError with the failing reason when the design is not single-symbol decodable.
VerifiedDesign certify(const Design& d, const VerifyOptions& opt = {});

}  // namespace rspd
