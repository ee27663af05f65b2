#include "rspd/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rspd/precoder.hpp"
#include "rspd/random.hpp"

namespace rspd {

namespace {

std::vector<double> basis(std::size_t dim, std::size_t p) {
  std::vector<double> e(dim, 0.0);
  e[p] = 1.0;
  return e;
}

ComplexMatrix product_form(const ComplexMatrix& x, const ComplexMatrix& r_inv) {
  return x * r_inv * x.adjoint();
}

bool in_diagonal_class(const ComplexMatrix& m, double ref, double tol) {
  return m.max_off_diagonal() <= tol * std::max(ref, m.max_abs());
}

std::string pair_str(std::size_t k, std::size_t k2) {
  return "(" + std::to_string(k + 1) + "," + std::to_string(k2 + 1) + ")";
}

}  // namespace

double relay_power_scale(const Design& d, double p1, double p2) {
  if (!(p1 > 0.0) || !(p2 > 0.0)) throw std::invalid_argument("powers must be positive");
  return p2 * static_cast<double>(d.n_slots()) / ((1.0 + p1) * static_cast<double>(d.n_symbols()));
}

NoiseCovariance covariance(const Design& d, std::span<const cplx> g, double p1, double p2) {
  if (g.size() != d.n_relays()) throw DimensionError("g must have one coefficient per relay");
  NoiseCovariance nc{ComplexMatrix(d.n_slots(), d.n_slots()), relay_power_scale(d, p1, p2),
                     std::vector<cplx>(g.begin(), g.end())};
  for (std::size_t k = 0; k < d.n_relays(); ++k) {
    const double w = std::norm(g[k]);
    if (w == 0.0) continue;
    const auto& a = d.relay_a(k);
    const auto& b = d.relay_b(k);
    nc.r += (w * nc.scale) * (a.adjoint() * a + b.adjoint() * b);
  }
  nc.r += ComplexMatrix::identity(d.n_slots());
  return nc;
}

ComplexMatrix codeword_at(const Design& d, std::span<const cplx> h, std::span<const double> coords) {
  if (coords.size() != 2 * d.n_symbols()) throw DimensionError("need 2N real coordinates");
  std::vector<cplx> s(d.n_symbols());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = {coords[2 * i], coords[2 * i + 1]};
  const auto st = interleave(s, {d.precoder_p(), d.precoder_q()});
  return render_codeword(d, h, st);
}

QuadraticFormTensor::QuadraticFormTensor(std::size_t relays, std::size_t dim)
    : relays_(relays), dim_(dim), forms_(relays * relays, ComplexMatrix(dim, dim)) {}

cplx QuadraticFormTensor::evaluate(std::size_t k, std::size_t k2, std::span<const double> u) const {
  const auto& c = form(k, k2);
  cplx acc{};
  for (std::size_t p = 0; p < dim_; ++p) {
    if (u[p] == 0.0) continue;
    cplx row{};
    for (std::size_t q = 0; q < dim_; ++q) row += c(p, q) * u[q];
    acc += u[p] * row;
  }
  return acc;
}

double QuadraticFormTensor::max_abs() const {
  double m = 0.0;
  for (const auto& f : forms_) m = std::max(m, f.max_abs());
  return m;
}

QuadraticFormTensor extract_quadratic_forms(const Design& d, std::span<const cplx> h,
                                            std::span<const cplx> g, double p1, double p2) {
  const std::size_t dim = 2 * d.n_symbols(), kk = d.n_relays();
  const ComplexMatrix r_inv = inverse(covariance(d, g, p1, p2).r);
  auto m_at = [&](const std::vector<double>& u) { return product_form(codeword_at(d, h, u), r_inv); };

  std::vector<ComplexMatrix> single;
  single.reserve(dim);
  for (std::size_t p = 0; p < dim; ++p) single.push_back(m_at(basis(dim, p)));

  QuadraticFormTensor t(kk, dim);
  for (std::size_t p = 0; p < dim; ++p) {
    for (std::size_t k = 0; k < kk; ++k)
      for (std::size_t k2 = 0; k2 < kk; ++k2) t.form(k, k2)(p, p) = single[p](k, k2);
    for (std::size_t q = p + 1; q < dim; ++q) {
      auto u = basis(dim, p);
      u[q] = 1.0;
      const ComplexMatrix both = m_at(u);
      for (std::size_t k = 0; k < kk; ++k)
        for (std::size_t k2 = 0; k2 < kk; ++k2) {
          const cplx c = 0.5 * (both(k, k2) - single[p](k, k2) - single[q](k, k2));
          t.form(k, k2)(p, q) = c;
          t.form(k, k2)(q, p) = c;
        }
    }
  }
  return t;
}

std::pair<std::vector<cplx>, std::vector<cplx>> verification_draw(std::uint64_t seed, std::size_t i,
                                                                  std::size_t relays) {
  Rng rng = make_rng({seed, i, 0});
  auto h = cscg_vector(rng, relays);
  auto g = cscg_vector(rng, relays);
  return {std::move(h), std::move(g)};
}

PdssdcResult check_pdssdc(const Design& d, const VerifyOptions& opt) {
  if (opt.draws == 0) throw std::invalid_argument("need at least one channel draw");
  PdssdcResult res;
  res.structural_ok = d.structurally_valid();
  if (!res.structural_ok) {
    for (std::size_t k = 0; k < d.n_relays(); ++k) {
      auto s = check_relay_structure(d.relay_a(k), d.relay_b(k));
      if (!s.ok()) {
        res.detail = "relay " + std::to_string(k + 1) + ": " + s.detail;
        break;
      }
    }
  }
  const std::size_t dim = 2 * d.n_symbols(), kk = d.n_relays();
  auto fail = [&](std::string why) {
    res.decomposition_ok = false;
    if (res.detail.empty()) res.detail = std::move(why);
    return res;
  };

  res.decomposition_ok = true;
  for (std::size_t i = 0; i < opt.draws; ++i) {
    const auto [h, g] = verification_draw(opt.seed, i, kk);
    const auto t = extract_quadratic_forms(d, h, g, opt.p1, opt.p2);
    const double ref = std::max(t.max_abs(), 1e-300);
    const double zero = opt.tol * ref;
    const std::string at = " (draw " + std::to_string(i) + ")";

    // The coefficient tensor must reproduce X R^-1 X^H on random inputs.
    const ComplexMatrix r_inv = inverse(covariance(d, g, opt.p1, opt.p2).r);
    Rng rng = make_rng({opt.seed, i, 1});
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> u(dim);
    for (std::size_t sample = 0; sample < opt.reconstruction_samples; ++sample) {
      for (auto& v : u) v = unif(rng);
      const ComplexMatrix m = product_form(codeword_at(d, h, u), r_inv);
      const double scale = std::max(1.0, m.max_abs());
      for (std::size_t k = 0; k < kk; ++k)
        for (std::size_t k2 = 0; k2 < kk; ++k2) {
          const double err = std::abs(m(k, k2) - t.evaluate(k, k2, u)) / scale;
          res.max_reconstruction_error = std::max(res.max_reconstruction_error, err);
          if (err > opt.reconstruction_tol)
            return fail("quadratic form reconstruction error " + std::to_string(err) + at);
        }
      ++res.samples_checked;
    }

    for (std::size_t k = 0; k < kk; ++k)
      for (std::size_t k2 = 0; k2 < kk; ++k2) {
        const auto& c = t.form(k, k2);
        for (std::size_t p = 0; p < dim; ++p)
          for (std::size_t q = p + 1; q < dim; ++q)
            if (p / 2 != q / 2 && std::abs(c(p, q)) > zero)
              return fail("entry " + pair_str(k, k2) + " couples symbols " + std::to_string(p / 2 + 1) +
                          " and " + std::to_string(q / 2 + 1) + at);
      }

    for (std::size_t k = 0; k < kk; ++k) {
      const auto& c = t.form(k, k);
      for (std::size_t s = 0; s < d.n_symbols(); ++s)
        if (std::abs(c(2 * s, 2 * s + 1)) > zero)
          return fail("diagonal entry " + std::to_string(k + 1) + " couples the in-phase and quadrature parts of symbol " +
                      std::to_string(s + 1) + at);
      for (std::size_t p = 0; p < dim; ++p)
        if (c(p, p).real() < -zero || std::abs(c(p, p).imag()) > zero)
          return fail("diagonal entry " + std::to_string(k + 1) + " has a negative or complex square coefficient" + at);
    }

    // Diagonal forms must scale with |h_k|^2 alone: re-draw h with the same g.
    Rng hrng = make_rng({opt.seed, i, 2});
    const auto h2 = cscg_vector(hrng, kk);
    const auto t2 = extract_quadratic_forms(d, h2, g, opt.p1, opt.p2);
    for (std::size_t k = 0; k < kk; ++k) {
      const double n1 = std::norm(h[k]), n2 = std::norm(h2[k]);
      const double lim = opt.tol * std::max(ref / n1, t2.max_abs() / n2);
      const auto& c1 = t.form(k, k);
      const auto& c2 = t2.form(k, k);
      for (std::size_t p = 0; p < dim; ++p)
        for (std::size_t q = 0; q < dim; ++q)
          if (std::abs(c1(p, q) / n1 - c2(p, q) / n2) > lim)
            return fail("diagonal entry " + std::to_string(k + 1) + " is not |h_k|^2 times a channel-free form" + at);
    }
    ++res.draws_checked;
  }
  return res;
}

SemiOrthogonalResult check_semi_orthogonal(const Design& d, const VerifyOptions& opt) {
  const std::size_t kk = d.n_relays();
  std::vector<std::vector<bool>> edge(kk, std::vector<bool>(kk, false));
  for (std::size_t i = 0; i < opt.draws; ++i) {
    const auto [h, g] = verification_draw(opt.seed, i, kk);
    const auto t = extract_quadratic_forms(d, h, g, opt.p1, opt.p2);
    const double zero = opt.tol * t.max_abs();
    for (std::size_t k = 0; k < kk; ++k)
      for (std::size_t k2 = k + 1; k2 < kk; ++k2)
        if (t.form(k, k2).max_abs() > zero) edge[k][k2] = true;
  }
  SemiOrthogonalResult res;
  std::vector<int> degree(kk, 0);
  for (std::size_t k = 0; k < kk; ++k)
    for (std::size_t k2 = k + 1; k2 < kk; ++k2)
      if (edge[k][k2]) {
        res.non_orthogonal_pairs.emplace_back(k, k2);
        ++degree[k];
        ++degree[k2];
      }
  res.ok = std::all_of(degree.begin(), degree.end(), [](int x) { return x <= 1; });
  return res;
}

UnitaryResult check_unitary(const Design& d, const VerifyOptions& opt) {
  const std::size_t dim = 2 * d.n_symbols(), kk = d.n_relays();
  for (std::size_t i = 0; i < opt.draws; ++i) {
    const auto h = verification_draw(opt.seed, i, kk).first;
    for (std::size_t p = 0; p < dim; ++p) {
      const ComplexMatrix phi = codeword_at(d, h, basis(dim, p));
      const ComplexMatrix gram = phi * phi.adjoint();
      const double ref = gram.max_abs();
      const std::string which = "weight matrix of x_" + std::to_string(p / 2 + 1) + (p % 2 ? "Q" : "I");
      if (gram.max_off_diagonal() > opt.tol * ref)
        return {false, which + " has non-orthogonal rows"};
      for (std::size_t k = 0; k < kk; ++k)
        if (gram(k, k).real() <= opt.tol * std::max(ref, 1.0))
          return {false, which + " has a zero row " + std::to_string(k + 1)};
    }
  }
  return {true, {}};
}

Theorem1Result check_theorem1(const Design& d, const VerifyOptions& opt) {
  Theorem1Result res;
  const std::size_t kk = d.n_relays();
  const ComplexMatrix& p = d.precoder_p();
  const ComplexMatrix& q = d.precoder_q();
  const ComplexMatrix pc = p.conj(), qc = q.conj();
  const ComplexMatrix pt = p.transpose(), qt = q.transpose(), ph = p.adjoint(), qh = q.adjoint();

  auto violate = [&](bool& flag, const std::string& what) {
    flag = false;
    if (res.first_violation.empty()) res.first_violation = what;
  };

  for (std::size_t i = 0; i < opt.draws; ++i) {
    if (!res.orthogonality_a && !res.orthogonality_b && !res.cross_ba && !res.cross_ab && !res.row_norm) break;
    const auto g = verification_draw(opt.seed, i, kk).second;
    const ComplexMatrix ri = inverse(covariance(d, g, opt.p1, opt.p2).r);
    const ComplexMatrix rit = ri.transpose();
    const double ref = ri.max_abs();
    const std::string at = " (draw " + std::to_string(i) + ")";

    std::vector<ComplexMatrix> a_ri, b_ri, ac_rit, bc_rit;
    for (std::size_t k = 0; k < kk; ++k) {
      a_ri.push_back(d.relay_a(k) * ri);
      b_ri.push_back(d.relay_b(k) * ri);
      ac_rit.push_back(d.relay_a(k).conj() * rit);
      bc_rit.push_back(d.relay_b(k).conj() * rit);
    }

    for (std::size_t k = 0; k < kk; ++k)
      for (std::size_t k2 = 0; k2 < kk; ++k2) {
        const auto& ak = d.relay_a(k);
        const auto& bk = d.relay_b(k);
        const auto& ak2 = d.relay_a(k2);
        const auto& bk2 = d.relay_b(k2);
        if (k != k2) {
          if (res.orthogonality_a) {
            const ComplexMatrix g1 = a_ri[k] * ak2.adjoint();       // A_k R^-1 A_k'^H
            const ComplexMatrix g2 = ac_rit[k2] * ak.transpose();   // A_k'^* R^-T A_k^T
            const ComplexMatrix cases[3] = {p * g1 * ph + qc * g2 * qt,
                                            p * g1 * qh + qc * g2 * pt,
                                            q * g1 * ph + pc * g2 * qt};
            for (int c = 0; c < 3; ++c)
              if (res.orthogonality_a && !in_diagonal_class(cases[c], ref, opt.tol))
                violate(res.orthogonality_a, "A-product condition, case " + std::to_string(c + 1) +
                                                 ", rows " + pair_str(k, k2) + at);
          }
          if (res.orthogonality_b) {
            const ComplexMatrix g1 = b_ri[k] * bk2.adjoint();       // B_k R^-1 B_k'^H
            const ComplexMatrix g2 = bc_rit[k2] * bk.transpose();   // B_k'^* R^-T B_k^T
            const ComplexMatrix cases[3] = {qc * g1 * qt + p * g2 * ph,
                                            qc * g1 * pt + p * g2 * qh,
                                            pc * g1 * qt + q * g2 * ph};
            for (int c = 0; c < 3; ++c)
              if (res.orthogonality_b && !in_diagonal_class(cases[c], ref, opt.tol))
                violate(res.orthogonality_b, "B-product condition, case " + std::to_string(c + 1) +
                                                 ", rows " + pair_str(k, k2) + at);
          }
        }
        if (res.cross_ba) {
          // Pi^* [B_k R^-1 A_k'^H + A_k'^* R^-T B_k^T] Upsilon^H
          const ComplexMatrix f = b_ri[k] * ak2.adjoint() + ac_rit[k2] * bk.transpose();
          const ComplexMatrix cases[3] = {qc * f * ph, pc * f * ph, qc * f * qh};
          for (int c = 0; c < 3; ++c)
            if (res.cross_ba && !in_diagonal_class(cases[c], ref, opt.tol))
              violate(res.cross_ba, "B/A cross condition, case " + std::to_string(c + 1) + ", rows " +
                                        pair_str(k, k2) + at);
        }
        if (res.cross_ab) {
          // Pi [A_k R^-1 B_k'^H + B_k'^* R^-T A_k^T] Upsilon^T
          const ComplexMatrix f = a_ri[k] * bk2.adjoint() + bc_rit[k2] * ak.transpose();
          const ComplexMatrix cases[3] = {p * f * qt, p * f * pt, q * f * qt};
          for (int c = 0; c < 3; ++c)
            if (res.cross_ab && !in_diagonal_class(cases[c], ref, opt.tol))
              violate(res.cross_ab, "A/B cross condition, case " + std::to_string(c + 1) + ", rows " +
                                        pair_str(k, k2) + at);
        }
      }

    for (std::size_t k = 0; k < kk && res.row_norm; ++k) {
      const ComplexMatrix m = a_ri[k] * d.relay_a(k).adjoint() + bc_rit[k] * d.relay_b(k).transpose();
      bool real_diag = true;
      for (std::size_t n = 0; n < m.rows(); ++n)
        real_diag = real_diag && std::abs(m(n, n).imag()) <= opt.tol * std::max(ref, m.max_abs());
      if (!real_diag || !in_diagonal_class(m, ref, opt.tol))
        violate(res.row_norm, "row-norm condition, relay " + std::to_string(k + 1) + at);
    }
  }
  return res;
}

bool relay_matrices_row_monomial(const Design& d) {
  for (std::size_t k = 0; k < d.n_relays(); ++k)
    if (!is_row_monomial(d.relay_a(k)) || !is_row_monomial(d.relay_b(k))) return false;
  return true;
}

bool RelayLemmaReport::ok() const {
  return structure_ok && row_norm_ok && orthogonal_pairs_disjoint &&
         std::all_of(non_orthogonal_pairs.begin(), non_orthogonal_pairs.end(),
                     [](const PairLemma& p) { return p.ok(); });
}

RelayLemmaReport check_relay_lemmas(const Design& d, const std::vector<RowPair>& partners) {
  RelayLemmaReport rep;
  const std::size_t kk = d.n_relays(), n = d.n_symbols();
  auto note = [&](const std::string& s) {
    if (rep.detail.empty()) rep.detail = s;
  };

  rep.structure_ok = true;
  for (std::size_t k = 0; k < kk; ++k) {
    auto s = check_relay_structure(d.relay_a(k), d.relay_b(k));
    if (!s.ok()) {
      rep.structure_ok = false;
      note("relay " + std::to_string(k + 1) + ": " + s.detail);
    }
  }

  rep.row_norm_ok = true;
  for (std::size_t k = 0; k < kk; ++k) {
    const auto& a = d.relay_a(k);
    const auto& b = d.relay_b(k);
    const ComplexMatrix e = a * a.adjoint() + b.conj() * b.transpose();
    bool ok = e.is_diagonal();
    for (std::size_t i = 0; i < n && ok; ++i) ok = e(i, i).real() > kTol && std::abs(e(i, i).imag()) <= kTol;
    if (!ok) {
      rep.row_norm_ok = false;
      note("A_k A_k^H + B_k^* B_k^T is not a positive diagonal for relay " + std::to_string(k + 1));
    }
  }

  auto is_partner = [&](std::size_t k, std::size_t k2) {
    return std::find(partners.begin(), partners.end(), RowPair{k, k2}) != partners.end();
  };
  rep.orthogonal_pairs_disjoint = true;
  for (std::size_t k = 0; k < kk; ++k)
    for (std::size_t k2 = k + 1; k2 < kk; ++k2) {
      if (is_partner(k, k2)) continue;
      if (!column_disjoint(d.relay_a(k), d.relay_a(k2)) || !column_disjoint(d.relay_b(k), d.relay_b(k2))) {
        rep.orthogonal_pairs_disjoint = false;
        note("R-orthogonal rows " + pair_str(k, k2) + " share columns");
      }
    }

  for (const auto& [k, k2] : partners) {
    PairLemma pl;
    pl.rows = {k, k2};
    const ComplexMatrix aa = d.relay_a(k) * d.relay_a(k2).adjoint();
    const ComplexMatrix bb = d.relay_b(k).conj() * d.relay_b(k2).transpose();
    const ComplexMatrix sum = aa + bb;
    pl.diagonal_zero = true;
    for (std::size_t i = 0; i < n; ++i)
      pl.diagonal_zero = pl.diagonal_zero && std::abs(aa(i, i)) <= kTol && std::abs(bb(i, i)) <= kTol;
    pl.products_monomial = is_row_monomial(aa) && is_column_monomial(aa) && is_row_monomial(bb) &&
                           is_column_monomial(bb);
    pl.sum_monomial = is_row_monomial(sum) && is_column_monomial(sum);
    pl.nonzeros = count_nonzero(sum);
    pl.even_nonzeros = pl.nonzeros % 2 == 0;
    const ComplexMatrix at = vcat(d.relay_a(k), d.relay_a(k2));
    const ComplexMatrix bt = vcat(d.relay_b(k), d.relay_b(k2));
    pl.rank = rank(at * at.adjoint() + bt.conj() * bt.transpose());
    pl.rank_required = n % 2 == 0 ? n : n + 1;
    if (!pl.ok()) note("R-non-orthogonal rows " + pair_str(k, k2) + " break the pair properties");
    rep.non_orthogonal_pairs.push_back(pl);
  }
  return rep;
}

VerificationReport verify(const Design& d, const VerifyOptions& opt) {
  VerificationReport r;
  r.options = opt;
  r.pdssdc = check_pdssdc(d, opt);
  r.semi_orthogonal = check_semi_orthogonal(d, opt);
  r.unitary = check_unitary(d, opt);
  r.theorem1 = check_theorem1(d, opt);
  r.lemmas = check_relay_lemmas(d, r.semi_orthogonal.non_orthogonal_pairs);
  r.row_monomial_ok = relay_matrices_row_monomial(d);
  r.covariance_diagonal = true;
  for (std::size_t i = 0; i < opt.draws; ++i) {
    const auto g = verification_draw(opt.seed, i, d.n_relays()).second;
    r.covariance_diagonal = r.covariance_diagonal && covariance(d, g, opt.p1, opt.p2).r.is_diagonal();
  }

  if (!r.pdssdc.structural_ok) r.failures.push_back("structure: " + r.pdssdc.detail);
  else if (!r.pdssdc.decomposition_ok) r.failures.push_back("single-symbol decomposition: " + r.pdssdc.detail);
  if (!r.unitary.ok) r.failures.push_back("unitary: " + r.unitary.detail);
  if (!r.semi_orthogonal.ok) r.failures.push_back("semi-orthogonal: some row is R-non-orthogonal to two or more rows");
  if (!r.row_monomial_ok) r.failures.push_back("row monomial: some relay matrix has two entries in a row");
  if (!r.theorem1.ok()) r.failures.push_back("sufficient conditions: " + r.theorem1.first_violation);
  if (!r.lemmas.ok()) r.failures.push_back("relay matrix lemmas: " + r.lemmas.detail);
  return r;
}

nlohmann::json report_to_json(const VerificationReport& r) {
  using nlohmann::json;
  json j;
  j["passed"] = r.passed();
  j["pdssdc"] = r.pdssdc.ok();
  j["structural_ok"] = r.pdssdc.structural_ok;
  j["decomposition_ok"] = r.pdssdc.decomposition_ok;
  j["unitary_ok"] = r.unitary.ok;
  j["semi_orthogonal_ok"] = r.semi_orthogonal.ok;
  j["row_monomial_ok"] = r.row_monomial_ok;
  j["covariance_diagonal"] = r.covariance_diagonal;
  j["orthogonality_matching"] = json::array();
  for (const auto& [a, b] : r.semi_orthogonal.non_orthogonal_pairs)
    j["orthogonality_matching"].push_back({a + 1, b + 1});
  j["theorem1"] = {{"a_products", r.theorem1.orthogonality_a},
                   {"b_products", r.theorem1.orthogonality_b},
                   {"ba_cross", r.theorem1.cross_ba},
                   {"ab_cross", r.theorem1.cross_ab},
                   {"row_norm", r.theorem1.row_norm},
                   {"first_violation", r.theorem1.first_violation}};
  json pairs = json::array();
  for (const auto& p : r.lemmas.non_orthogonal_pairs)
    pairs.push_back({{"rows", {p.rows.first + 1, p.rows.second + 1}},
                     {"ok", p.ok()},
                     {"diagonal_zero", p.diagonal_zero},
                     {"products_monomial", p.products_monomial},
                     {"sum_monomial", p.sum_monomial},
                     {"nonzeros", p.nonzeros},
                     {"rank", p.rank},
                     {"rank_required", p.rank_required}});
  j["relay_lemmas"] = {{"structure_ok", r.lemmas.structure_ok},
                       {"row_norm_ok", r.lemmas.row_norm_ok},
                       {"orthogonal_pairs_disjoint", r.lemmas.orthogonal_pairs_disjoint},
                       {"lemma7", pairs}};
  j["draws"] = r.options.draws;
  j["seed"] = r.options.seed;
  j["channel_draws"] = json::array();
  for (std::size_t i = 0; i < r.options.draws; ++i) j["channel_draws"].push_back({r.options.seed, i});
  j["trials_used"] = r.pdssdc.samples_checked;
  j["max_reconstruction_error"] = r.pdssdc.max_reconstruction_error;
  j["tolerance"] = r.options.tol;
  j["failures"] = r.failures;
  j["note"] = "randomized checks: a failure is exact, a pass holds for generic channels";
  return j;
}

VerifiedDesign certify(const Design& d, const VerifyOptions& opt) {
  const auto res = check_pdssdc(d, opt);
  if (!res.ok()) throw VerificationError("design is not single-symbol decodable: " + res.detail);
  return VerifiedDesign(d);
}

}  // namespace rspd
