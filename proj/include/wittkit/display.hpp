#pragma once

// Displays over the Witt frame, always held as standard data (L, Φ).
//
// Convention: Φ(Σ c_b ℓ_b) = A·f(c), A = phi is the matrix of Φ^♯ on the basis
// of L. Then F(ℓ_b ⊗ s) = σ(s)·A e_b, and a graded morphism with frame matrix
// h is a morphism of displays iff A'·σ(h) = τ(h)·A.

#include <vector>

#include "wittkit/error.hpp"
#include "wittkit/frame.hpp"
#include "wittkit/graded.hpp"
#include "wittkit/matrix.hpp"

namespace wittkit {

struct Display {
  GradedModule L;
  WMatrix phi;

  const RingPtr& ring() const { return L.ring(); }
  int rank() const { return L.rank(); }
  int m() const { return L.m(); }
};

inline Display display_validate(const GradedModule& L, const WMatrix& phi) {
  require(phi.rows() == L.rank() && phi.cols() == L.rank(), ErrorKind::Usage, "phi shape does not match L");
  if (L.rank() > 0 && !wm_det(phi).is_unit()) fail(ErrorKind::NotBijective, "det(phi) is not a unit");
  return Display{L, phi};
}

inline Display unit_display(const RingPtr& r, int m) { return display_validate(GradedModule::unit(r, m), wm_identity(r, 1, m)); }

/// F(x) for x in M_n, returned on the basis of L (an element of M^τ).
inline std::vector<WittVector> display_F_eval(const Display& D, int n, const std::vector<FrameElement>& x) {
  require_homogeneous(D.L, n, x);
  std::vector<WittVector> s;
  for (const auto& c : x) s.push_back(frame_sigma(c));
  std::vector<WittVector> out;
  for (int i = 0; i < D.rank(); ++i) {
    WittVector acc = D.phi(i, 0) * s[0];
    for (int b = 1; b < D.rank(); ++b) acc = acc + D.phi(i, b) * s[b];
    out.push_back(acc);
  }
  return out;
}

/// diag(p^(w_b - shift)) for weights at least shift.
inline WMatrix p_power_diag(const RingPtr& r, int m, const std::vector<int>& w, int shift = 0) {
  std::vector<WittVector> d;
  for (int wb : w) {
    require(wb >= shift, ErrorKind::Usage, "negative p-power on the diagonal");
    d.push_back(mul_p_pow(WittVector::one(r, m), wb - shift));
  }
  return wm_diag(d);
}

/// The semilinear matrix of F ∘ θ_d^{-1} on M^τ, d = d(M): A·diag(p^(w - d)).
inline WMatrix display_F_linearization(const Display& D) {
  return D.phi * p_power_diag(D.ring(), D.m(), D.L.weights(), D.L.depth());
}

inline Display display_tensor(const Display& a, const Display& b) {
  return Display{mod_tensor(a.L, b.L), wm_kron(a.phi, b.phi)};
}

inline Display display_dual(const Display& a) { return Display{mod_dual(a.L), wm_inverse(a.phi).transpose()}; }

inline Display display_base_change(const Display& a, const RingHom& h) {
  return Display{mod_base_change(a.L, h), wm_base_change(a.phi, h)};
}

/// Basis permutation: returns the display on the basis (ℓ_perm[0], ℓ_perm[1], ...).
inline Display display_permute(const Display& a, const std::vector<int>& perm) {
  const int n = a.rank();
  std::vector<int> w;
  for (int i : perm) w.push_back(a.L.weight(i));
  return Display{GradedModule(a.ring(), a.m(), w),
                 WMatrix::from_fn(n, n, [&](int i, int j) { return a.phi(perm[i], perm[j]); })};
}

inline bool display_equal(const Display& a, const Display& b) { return a.L == b.L && wm_eq(a.phi, b.phi); }

/// A'·σ(h) = τ(h)·A to certified precision.
inline bool display_morphism_check(const GradedMorphism& psi, const Display& D, const Display& Dp) {
  morph_validate(psi);
  require(psi.src == D.L && psi.tgt == Dp.L, ErrorKind::Usage, "morphism does not match the displays");
  if (D.rank() == 0 || Dp.rank() == 0) return true;
  return wm_eq(Dp.phi * morph_sigma(psi), morph_tau(psi) * D.phi);
}

/// β: M × M' -> M'' as an n''×(n·n') frame matrix; column i·n' + j is β(ℓ_i, ℓ'_j),
/// with entry degree w_i + w'_j - w''_k. Checks F''(β(x,y)) = β^τ(F(x), F'(y)).
inline bool bilinear_form_check(const FMatrix& B, const Display& D, const Display& Dp, const Display& Dpp) {
  const GradedModule T = mod_tensor(D.L, Dp.L);
  GradedMorphism beta{T, Dpp.L, B};
  if (!morph_check(beta)) return false;
  return wm_eq(Dpp.phi * fm_sigma(B), fm_tau(B) * wm_kron(D.phi, Dp.phi));
}

/// β_0: M × M' -> M ⊗ M'.
inline FMatrix canonical_bilinear_form(const Display& D, const Display& Dp) {
  return morph_identity(mod_tensor(D.L, Dp.L)).h;
}

/// The evaluation pairing M^∨ × M -> S.
inline FMatrix evaluation_pairing(const Display& D) {
  const int n = D.rank();
  const auto& w = D.L.weights();
  return FMatrix::from_fn(1, n * n, [&](int, int c) {
    const int i = c / n, j = c % n;
    return i == j ? FrameElement::one(D.ring(), D.m()) : FrameElement::zero(D.ring(), D.m(), w[j] - w[i]);
  });
}

inline bool display_is_effective(const Display& D) { return D.L.depth() >= 0; }
inline bool display_is_n(const Display& D, int n) { return display_is_effective(D) && D.L.altitude() == n; }

template <class Rng>
Display random_display(const GradedModule& L, Rng& rng) {
  return display_validate(L, wm_random_invertible(L.ring(), L.rank(), L.m(), rng));
}

}  // namespace wittkit
