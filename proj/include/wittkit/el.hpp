#pragma once

// Unramified EL data after Morita reduction: O_B = O_L with [L : Q_p] = a,
// acting on Λ ⊗ W(k) through the Teichmüller lift ζ of a generator of
// F_{p^a}^×. Components M(j) = { m : ζ·m = σ^j(ζ)·m }.

#include <algorithm>
#include <vector>

#include "wittkit/display.hpp"
#include "wittkit/error.hpp"
#include "wittkit/matrix.hpp"

namespace wittkit {

/// A generator of F_{p^a}^× inside k (first in canonical order).
inline RingElement el_generator(const RingPtr& k, int a) {
  require(k->is_field(), ErrorKind::UnsupportedRing, "EL data need a finite field base");
  require(a >= 1 && k->a() % a == 0, ErrorKind::Usage, "F_{p^a} does not embed in the base field");
  const i64 order = checked_pow(k->p(), a) - 1;
  for (const auto& x : ring_enumerate(k)) {
    if (x.is_zero() || !(x.pow(static_cast<std::uint64_t>(order)) == RingElement::one(k))) continue;
    bool primitive = true;
    for (i64 d = 1; d < order && primitive; ++d)
      if (order % d == 0 && x.pow(static_cast<std::uint64_t>(d)) == RingElement::one(k)) primitive = false;
    if (primitive) return x;
  }
  fail(ErrorKind::Usage, "no generator found");
}

/// [ζ^(p^j)] for j = 0..a-1.
inline std::vector<WittVector> el_eigenvalues(const RingPtr& k, int m, int a) {
  const RingElement z = el_generator(k, a);
  std::vector<WittVector> out;
  RingElement zj = z;
  for (int j = 0; j < a; ++j) {
    out.push_back(teichmuller(zj, m));
    zj = zj.pow(static_cast<std::uint64_t>(k->p()));
  }
  return out;
}

/// Columns independent modulo p (greedy, left to right) and the rank.
inline std::vector<int> residue_pivot_columns(const WMatrix& a) {
  const int rows = a.rows(), cols = a.cols();
  std::vector<std::vector<RingElement>> basis;  // reduced rows of chosen columns
  std::vector<int> piv_pos, chosen;
  for (int c = 0; c < cols; ++c) {
    std::vector<RingElement> v;
    for (int r = 0; r < rows; ++r) v.push_back(a(r, c)[0]);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const RingElement f = v[piv_pos[b]] * basis[b][piv_pos[b]].inv();
      for (int r = 0; r < rows; ++r) v[r] = v[r] - f * basis[b][r];
    }
    int p = -1;
    for (int r = 0; r < rows && p < 0; ++r)
      if (!v[r].is_zero()) p = r;
    if (p < 0) continue;
    basis.push_back(v);
    piv_pos.push_back(p);
    chosen.push_back(c);
  }
  return chosen;
}

struct ComponentSplit {
  std::vector<int> ranks;
  std::vector<WMatrix> bases;        // n × ranks[j]
  std::vector<WMatrix> projectors;   // n × n
};

inline WMatrix wm_scalar(const WittVector& s, int n) {
  return WMatrix::from_fn(n, n, [&](int i, int j) { return i == j ? s : WittVector::zero(s.ring(), s.len()); });
}

/// Simultaneous eigenspace split of the action Z of ζ.
inline ComponentSplit component_split(const WMatrix& Z, int a) {
  require(Z.square(), ErrorKind::Usage, "action matrix must be square");
  const int n = Z.rows();
  ComponentSplit S;
  if (n == 0) {
    S.ranks.assign(a, 0);
    return S;
  }
  const RingPtr& k = Z(0, 0).ring();
  const int m = wm_len(Z);
  const auto lam = el_eigenvalues(k, m, a);
  WMatrix prod = wm_identity(k, n, m);
  for (const auto& l : lam) prod = prod * (Z - wm_scalar(l, n));
  for (const auto& x : prod.data())
    if (!x.is_zero()) fail(ErrorKind::SplitFailure, "the action is not semisimple with the expected eigenvalues");
  for (int j = 0; j < a; ++j) {
    WMatrix P = wm_identity(k, n, m);
    for (int i = 0; i < a; ++i) {
      if (i == j) continue;
      P = P * ((lam[j] - lam[i]).inv() * (Z - wm_scalar(lam[i], n)));
    }
    const auto cols = residue_pivot_columns(P);
    S.ranks.push_back(static_cast<int>(cols.size()));
    S.bases.push_back(WMatrix::from_fn(n, static_cast<int>(cols.size()), [&](int r, int c) { return P(r, cols[c]); }));
    S.projectors.push_back(P);
  }
  return S;
}

inline WMatrix wm_submatrix(const WMatrix& a, const std::vector<int>& idx) {
  const int n = static_cast<int>(idx.size());
  return WMatrix::from_fn(n, n, [&](int i, int j) { return a(idx[i], idx[j]); });
}

inline bool wm_block_diagonal(const WMatrix& Z, const std::vector<int>& w) {
  for (int i = 0; i < Z.rows(); ++i)
    for (int j = 0; j < Z.cols(); ++j)
      if (w[i] != w[j] && !Z(i, j).is_zero()) return false;
  return true;
}

struct ELDatum {
  int a = 1;
  WMatrix action;           // ζ on Λ ⊗ W(k), weight-adapted basis
  std::vector<int> weights;  // μ-weights, in {0, 1}

  int rank() const { return action.rows(); }
};

inline void el_validate(const ELDatum& d) {
  require(static_cast<int>(d.weights.size()) == d.rank(), ErrorKind::Usage, "weights do not match Λ");
  for (int w : d.weights)
    if (w != 0 && w != 1) fail(ErrorKind::Usage, "EL weights must be 0 and 1");
  if (!wm_block_diagonal(d.action, d.weights)) fail(ErrorKind::Usage, "the O_B-action does not preserve the grading");
  component_split(d.action, d.a);
}

inline bool el_group_membership(const WMatrix& h, const ELDatum& d) {
  return h.rows() == d.rank() && wm_is_invertible(h) && wm_eq(h * d.action, d.action * h);
}

inline std::vector<int> weight_indices(const std::vector<int>& w, int weight) {
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[i] == weight) idx.push_back(i);
  return idx;
}

/// rk Λ⁰(j).
inline std::vector<int> lambda0_ranks(const ELDatum& d) {
  return component_split(wm_submatrix(d.action, weight_indices(d.weights, 0)), d.a).ranks;
}

/// rk L(j) for Lie = L_0 ⊗ R = M^τ / θ_1(M_1), with O_L acting on L by Z.
inline std::vector<int> lie_ranks(const Display& D, const WMatrix& Z, int a) {
  if (!wm_block_diagonal(Z, D.L.weights())) fail(ErrorKind::Usage, "the O_B-action does not preserve the grading");
  if (!wm_eq(D.phi * wm_frobenius(Z), Z * D.phi)) fail(ErrorKind::Usage, "the O_B-action does not commute with F");
  return component_split(wm_submatrix(Z, weight_indices(D.L.weights(), 0)), a).ranks;
}

inline bool determinant_condition(const Display& D, const WMatrix& Z, const ELDatum& d) {
  for (int w : D.L.weights())
    if (w != 0 && w != 1) return false;
  if (D.rank() != d.rank()) return false;
  return lie_ranks(D, Z, d.a) == lambda0_ranks(d);
}

/// Λ = O_L^r with its Z_p-structure: ζ acts through the companion matrix of
/// ∏_j (X - [ζ^(p^j)]); the datum is written on the eigenbasis, Λ⁰(j) being
/// the first d[j] vectors of M(j). frob = P^(-1) f(P) carries id_Λ ⊗ f.
struct ELRegular {
  ELDatum datum;
  WMatrix frob;
};

inline ELRegular el_regular(const RingPtr& k, int m, int a, int r, const std::vector<int>& d) {
  require(static_cast<int>(d.size()) == a, ErrorKind::Usage, "one Λ⁰ rank per component");
  const auto lam = el_eigenvalues(k, m, a);
  // coefficients of the minimal polynomial
  std::vector<WittVector> c{WittVector::one(k, m)};
  for (const auto& l : lam) {
    std::vector<WittVector> nc(c.size() + 1, WittVector::zero(k, m));
    for (std::size_t i = 0; i < c.size(); ++i) {
      nc[i + 1] = nc[i + 1] + c[i];
      nc[i] = nc[i] - l * c[i];
    }
    c = nc;
  }
  const int n = a * r;
  WMatrix Zl = wm_zero(k, n, n, m);
  for (int s = 0; s < r; ++s)
    for (int i = 0; i < a; ++i) {
      if (i + 1 < a) Zl(s * a + i + 1, s * a + i) = WittVector::one(k, m);
      Zl(s * a + i, s * a + a - 1) = -c[i];
    }
  const auto S = component_split(Zl, a);
  WMatrix P(n, n);
  std::vector<int> weights;
  int col = 0;
  for (int j = 0; j < a; ++j) {
    require(S.ranks[j] == r, ErrorKind::SplitFailure, "regular representation did not split evenly");
    require(d[j] >= 0 && d[j] <= r, ErrorKind::Usage, "Λ⁰ rank out of range");
    for (int t = 0; t < r; ++t, ++col) {
      for (int i = 0; i < n; ++i) P(i, col) = S.bases[j](i, t);
      weights.push_back(t < d[j] ? 0 : 1);
    }
  }
  const WMatrix Pinv = wm_inverse(P);
  ELRegular out{ELDatum{a, Pinv * Zl * P, weights}, Pinv * wm_frobenius(P)};
  return out;
}

/// D_U with U ∈ GL_{O_L}(Λ ⊗ W(k)): Φ = U·(id_Λ ⊗ f).
inline Display el_banal_display(const ELRegular& R, const WMatrix& U) {
  if (!el_group_membership(U, R.datum)) fail(ErrorKind::Usage, "U is not in GL_{O_B}(Λ)");
  const RingPtr& k = U(0, 0).ring();
  return display_validate(GradedModule(k, wm_len(U), R.datum.weights), U * R.frob);
}

/// A random element of GL_{O_L}: block-diagonal on the components of the eigenbasis.
template <class Rng>
WMatrix el_random_group_element(const ELRegular& R, Rng& rng) {
  const int n = R.datum.rank();
  const RingPtr& k = R.datum.action(0, 0).ring();
  const int m = wm_len(R.datum.action);
  const auto S = component_split(R.datum.action, R.datum.a);
  std::vector<int> comp(n, -1);
  for (int j = 0; j < R.datum.a; ++j)
    for (int i = 0; i < n; ++i)
      if (!S.projectors[j](i, i).is_zero()) comp[i] = j;
  for (;;) {
    auto U = WMatrix::from_fn(n, n, [&](int i, int j) {
      return comp[i] == comp[j] ? witt_random(k, m, rng) : WittVector::zero(k, m);
    });
    if (wm_is_invertible(U)) return U;
  }
}

}  // namespace wittkit
