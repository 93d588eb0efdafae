#pragma once

// Zink displays (P_0, P_1, F_0, F_1) in normal form P_0 = L_0 ⊕ L_1,
// P_1 = I_R L_0 ⊕ L_1, and their equivalence with displays of weights in {0, 1}.
//
// Matrices: F0 holds the columns F_0(e_b). F1 holds F_1(e_b) for b in L_1 and,
// for b in L_0, the column ξ-coefficient of F_1(v(ξ) e_b) = ξ F_0(e_b).

#include <vector>

#include "wittkit/display.hpp"
#include "wittkit/error.hpp"

namespace wittkit {

struct ZinkDisplay {
  GradedModule L;  // weight 0: L_0, weight 1: L_1
  WMatrix F0, F1;

  int rank() const { return L.rank(); }
  const RingPtr& ring() const { return L.ring(); }
  bool in_L1(int b) const { return L.weight(b) == 1; }
};

inline void require_zink_shape(const GradedModule& L) {
  for (int w : L.weights())
    if (w != 0 && w != 1) fail(ErrorKind::InvalidZink, "weights must lie in {0, 1}");
}

/// Φ = F_0 on L_0 ⊕ F_1 on L_1.
inline WMatrix zink_phi(const ZinkDisplay& Z) {
  const int n = Z.rank();
  return WMatrix::from_fn(n, n, [&](int i, int b) { return Z.in_L1(b) ? Z.F1(i, b) : Z.F0(i, b); });
}

/// Structural checks: F_0 = F_1 on L_0 columns, F_0 = p·F_1 on L_1 columns,
/// and F_1 is an epimorphism (Φ has unit determinant).
inline void zink_validate(const ZinkDisplay& Z) {
  require_zink_shape(Z.L);
  const int n = Z.rank();
  require(Z.F0.rows() == n && Z.F0.cols() == n && Z.F1.rows() == n && Z.F1.cols() == n, ErrorKind::InvalidZink,
          "matrix shapes do not match the split");
  const int p = Z.ring()->p();
  for (int b = 0; b < n; ++b)
    for (int i = 0; i < n; ++i) {
      const WittVector expect = Z.in_L1(b) ? Z.F1(i, b).scale(p) : Z.F1(i, b);
      if (!eq_prefix(Z.F0(i, b), expect))
        fail(ErrorKind::InvalidZink, "F_0 and F_1 are incompatible in column " + std::to_string(b));
    }
  if (n > 0 && !wm_det(zink_phi(Z)).is_unit()) fail(ErrorKind::InvalidZink, "F_1 is not an epimorphism");
}

inline ZinkDisplay zink_from_display(const Display& D) {
  require_zink_shape(D.L);
  if (D.rank() == 0) return ZinkDisplay{D.L, D.phi, D.phi};
  // F_0 = F on M_0 through θ_0^{-1}: A·diag(p^w); F_1 = F on M_1 through θ_1^{-1}: A
  return ZinkDisplay{D.L, D.phi * p_power_diag(D.ring(), D.m(), D.L.weights()), D.phi};
}

inline Display zink_to_display(const ZinkDisplay& Z) {
  zink_validate(Z);
  return Display{Z.L, zink_phi(Z)};
}

/// The matrix of V♯: P_0 -> W(R) ⊗_{f, W(R)} P_0 and its reduction mod I_R + pW(R).
struct VSharp {
  WMatrix matrix;
  Matrix<RingElement> reduction;  // over R/pR
};

/// R/pR with the same residue presentation.
inline RingPtr residue_char_p(const RingPtr& r) {
  if (r->N() == 1) return r;
  RingSpec s = r->spec();
  s.N = 1;
  for (auto& c : s.modulus) c = mod_reduce(c, s.p);
  return Ring::make(s);
}

inline RingElement reduce_mod_p(const RingElement& x, const RingPtr& rbar) {
  std::vector<i64> c(x.coeffs().begin(), x.coeffs().end());
  return RingElement(rbar, std::move(c));
}

inline VSharp v_sharp(const ZinkDisplay& Z) {
  zink_validate(Z);
  const int n = Z.rank();
  const RingPtr& r = Z.ring();
  const int m = wm_len(Z.F0);
  std::vector<WittVector> d;
  for (int b = 0; b < n; ++b) d.push_back(Z.in_L1(b) ? WittVector::one(r, m) : WittVector::from_int(r, m, r->p()));
  const WMatrix V = wm_diag(d) * wm_inverse(zink_phi(Z));
  const RingPtr rbar = residue_char_p(r);
  auto red = V.map([&](const WittVector& x) { return reduce_mod_p(x[0], rbar); });
  return VSharp{V, red};
}

/// Sampled check of V♯(ξ·F_0(x)) = pξ ⊗ x and V♯(ξ·F_1(y)) = ξ ⊗ y.
template <class Rng>
bool v_sharp_relations_hold(const ZinkDisplay& Z, const VSharp& V, int samples, Rng& rng) {
  const int n = Z.rank();
  const RingPtr& r = Z.ring();
  const int m = wm_len(Z.F0);
  auto apply = [&](const WMatrix& A, const std::vector<WittVector>& c) {
    std::vector<WittVector> out;
    for (int i = 0; i < n; ++i) {
      WittVector acc = A(i, 0) * c[0];
      for (int b = 1; b < n; ++b) acc = acc + A(i, b) * c[b];
      out.push_back(acc);
    }
    return out;
  };
  auto twist = [](const std::vector<WittVector>& c) {
    std::vector<WittVector> out;
    for (const auto& x : c) out.push_back(frobenius(x));
    return out;
  };
  for (int s = 0; s < samples; ++s) {
    const WittVector xi = witt_random(r, m, rng);
    std::vector<WittVector> x;
    for (int b = 0; b < n; ++b) x.push_back(witt_random(r, m, rng));
    // V♯(ξ F_0(x)) against pξ ⊗ x = pξ·f(x)
    auto F0x = apply(Z.F0, twist(x));
    for (auto& c : F0x) c = xi * c;
    auto lhs = apply(V.matrix, F0x);
    auto fx = twist(x);
    for (int i = 0; i < n; ++i)
      if (!eq_prefix(lhs[i], xi.scale(r->p()) * fx[i])) return false;
    // y in P_1: L_0 coordinates v(η), L_1 coordinates arbitrary
    std::vector<WittVector> y, F1y_src;
    for (int b = 0; b < n; ++b) {
      const WittVector c = witt_random(r, m, rng);
      y.push_back(Z.in_L1(b) ? c : verschiebung(c));
      F1y_src.push_back(Z.in_L1(b) ? frobenius(c) : c);  // F_1(v(η) e_b) = η F_0(e_b)
    }
    auto F1y = apply(Z.F1, F1y_src);
    for (auto& c : F1y) c = xi * c;
    auto lhs1 = apply(V.matrix, F1y);
    auto fy = twist(y);
    for (int i = 0; i < n; ++i)
      if (!eq_prefix(lhs1[i], xi * fy[i])) return false;
  }
  return true;
}

struct NilpotenceResult {
  bool nilpotent;
  int exponent;  // least k with the twisted product zero; the scan bound when not nilpotent
};

inline Matrix<RingElement> rm_mul(const Matrix<RingElement>& a, const Matrix<RingElement>& b) {
  return Matrix<RingElement>::from_fn(a.rows(), b.cols(), [&](int i, int j) {
    RingElement acc = a(i, 0) * b(0, j);
    for (int k = 1; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
    return acc;
  });
}

inline bool rm_is_zero(const Matrix<RingElement>& a) {
  for (const auto& x : a.data())
    if (!x.is_zero()) return false;
  return true;
}

/// Nilpotence of V♯ modulo I_R + pW(R): the least k with
/// σ^{k-1}(N)···σ(N)·N = 0, scanned up to rank·(1 + nil exponent of R/pR).
inline NilpotenceResult zink_is_nilpotent(const ZinkDisplay& Z) {
  const int n = Z.rank();
  if (n == 0) return {true, 0};
  const VSharp V = v_sharp(Z);
  const int p = Z.ring()->p();
  const int bound = n * (1 + Z.ring()->nil_exponent());
  Matrix<RingElement> sigmaN = V.reduction, prod = V.reduction;
  for (int k = 1; k <= bound; ++k) {
    if (rm_is_zero(prod)) return {true, k};
    sigmaN = sigmaN.map([&](const RingElement& x) { return x.pow(static_cast<std::uint64_t>(p)); });
    prod = rm_mul(sigmaN, prod);
  }
  return {false, bound};
}

/// A W(R)-linear map T = ψ^τ between Zink displays is a morphism iff it
/// preserves P_1 and intertwines F_0 and F_1 (checked on generators, with
/// sampled ξ for the I_R L_0 part).
template <class Rng>
bool zink_morphism_check(const WMatrix& T, const ZinkDisplay& Z, const ZinkDisplay& Zp, int samples, Rng& rng) {
  const int n = Z.rank(), np = Zp.rank();
  const RingPtr& r = Z.ring();
  const int m = std::min(wm_len(T), wm_len(Z.F0));
  // P_1 preservation: L_0' rows of L_1 columns lie in I_R
  for (int j = 0; j < np; ++j)
    for (int b = 0; b < n; ++b)
      if (!Zp.in_L1(j) && Z.in_L1(b) && !in_IR(T(j, b))) return false;
  // F_0: T F_0 = F_0' f(T)
  if (!wm_eq(T * Z.F0, Zp.F0 * wm_frobenius(T))) return false;
  // F_1 on generators y of P_1
  auto F1p_of = [&](const std::vector<WittVector>& y) {
    // F_1'(y) for y in P_1', expressed through v-preimages on L_0'
    std::vector<WittVector> src;
    for (int j = 0; j < np; ++j) {
      if (Zp.in_L1(j))
        src.push_back(frobenius(y[j]));
      else
        src.push_back(v_preimage(y[j]).value.truncate(y[j].len() - 1));
    }
    std::vector<WittVector> out;
    for (int i = 0; i < np; ++i) {
      WittVector acc = Zp.F1(i, 0) * src[0];
      for (int j = 1; j < np; ++j) acc = acc + Zp.F1(i, j) * src[j];
      out.push_back(acc);
    }
    return out;
  };
  for (int b = 0; b < n; ++b) {
    const int reps = Z.in_L1(b) ? 1 : samples;
    for (int s = 0; s < reps; ++s) {
      const WittVector xi = Z.in_L1(b) ? WittVector::one(r, m) : witt_random(r, m, rng);
      // y = e_b (L_1) or v(ξ) e_b (L_0); F_1(y) = column b of F1 scaled by ξ
      const WittVector coeff = Z.in_L1(b) ? WittVector::one(r, m) : verschiebung(xi);
      std::vector<WittVector> Ty;
      for (int j = 0; j < np; ++j) Ty.push_back(T(j, b) * coeff);
      const auto rhs = F1p_of(Ty);
      for (int i = 0; i < np; ++i) {
        WittVector lhs = T(i, 0) * (xi * Z.F1(0, b));
        for (int k = 1; k < n; ++k) lhs = lhs + T(i, k) * (xi * Z.F1(k, b));
        if (!eq_prefix(lhs, rhs[i])) return false;
      }
    }
  }
  return true;
}

}  // namespace wittkit
