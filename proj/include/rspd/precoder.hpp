#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rspd/complex_matrix.hpp"

namespace rspd {

/// Source precoding matrices applied as s~ = s P + conj(s) Q.
struct PrecoderPair {
  ComplexMatrix p;
  ComplexMatrix q;
};

/// The 4x4 coordinate-interleaving blocks (each scaled by 1/2).
ComplexMatrix gamma_block();
ComplexMatrix omega_precoder_block();

/// Precoders for N = 4y + a symbols: P = blockdiag(I_y (x) Gamma, I_a), Q = blockdiag(I_y (x) Omega, 0_a).
/// For N < 4 this is P = I, Q = 0.
PrecoderPair build_precoders(std::size_t n_symbols);

/// Identity precoding (P = I, Q = 0), used by plain distributed orthogonal codes.
PrecoderPair identity_precoders(std::size_t n_symbols);

std::vector<cplx> interleave(std::span<const cplx> s, const PrecoderPair& pp);

/// 2N x 2N real matrix M with row c holding the real coordinates
/// (Re s~_1, Im s~_1, ..., Re s~_N, Im s~_N) of the image of real coordinate c of s,
/// where coordinates run x_1I, x_1Q, ..., x_NI, x_NQ.
std::vector<std::vector<double>> real_coordinate_map(const PrecoderPair& pp);

/// Signed permutation of real coordinates: coordinate c of s lands at target[c] of s~ with sign[c].
struct SignedPermutation {
  std::vector<std::size_t> target;
  std::vector<int> sign;
};

/// The real map as a signed permutation, or nullopt if it is not one.
std::optional<SignedPermutation> as_signed_permutation(const PrecoderPair& pp);

/// Precomputed forward and inverse coordinate interleave. Rejects precoders whose real map is
/// not a signed permutation, since only those are exactly invertible.
class Interleaver {
 public:
  explicit Interleaver(const PrecoderPair& pp);

  std::size_t size() const { return perm_.target.size() / 2; }
  std::vector<cplx> forward(std::span<const cplx> s) const;
  std::vector<cplx> inverse(std::span<const cplx> s_tilde) const;
  const SignedPermutation& permutation() const { return perm_; }

 private:
  SignedPermutation perm_;
};

/// Inverse of `interleave`; throws std::invalid_argument for non-invertible precoders.
std::vector<cplx> deinterleave(std::span<const cplx> s_tilde, const PrecoderPair& pp);

}  // namespace rspd
