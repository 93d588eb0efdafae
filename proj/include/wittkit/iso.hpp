#pragma once

// Isodisplays over a finite field k = F_q. Matrices over W(k)[1/p] are held as
// p^(-e)·A with A over W_m(k) (e may be negative); such a matrix is known to
// absolute precision m - e.

#include <algorithm>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "wittkit/display.hpp"
#include "wittkit/error.hpp"
#include "wittkit/matrix.hpp"

namespace wittkit {

using Rational = boost::rational<i64>;

struct QMatrix {
  int e = 0;
  WMatrix A;

  int rows() const { return A.rows(); }
  int cols() const { return A.cols(); }
  int precision() const { return wm_len(A) - e; }
};

inline void require_perfect_field(const RingPtr& r) {
  if (!r->is_field()) fail(ErrorKind::UnsupportedRing, "isodisplays need a finite field base");
}

/// p^k·x with the length grown by k: exact on a perfect field.
inline WittVector witt_shift_up(const WittVector& x, int k) {
  std::vector<RingElement> c(x.coeffs());
  c.resize(static_cast<std::size_t>(x.len() + k), RingElement::zero(x.ring()));
  return mul_p_pow(WittVector(x.ring(), std::move(c)), k);
}

inline QMatrix qm_integral(const WMatrix& a) { return QMatrix{0, a}; }

inline QMatrix qm_frobenius(const QMatrix& a) { return QMatrix{a.e, wm_frobenius(a.A)}; }

inline QMatrix qm_kron(const QMatrix& a, const QMatrix& b) { return QMatrix{a.e + b.e, wm_kron(a.A, b.A)}; }

inline QMatrix qm_scale_p(const QMatrix& a, int k) { return QMatrix{a.e - k, a.A}; }

/// Equality to certified precision; InsufficientPrecision when the window is empty.
inline bool qm_eq(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const int prec = std::min(a.precision(), b.precision());
  if (prec <= 0) fail(ErrorKind::InsufficientPrecision, "no certified p-adic digits to compare");
  const QMatrix& hi = a.e >= b.e ? a : b;
  const QMatrix& lo = a.e >= b.e ? b : a;
  const int k = hi.e - lo.e, len = prec + hi.e;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!(hi.A(i, j).truncate(len) == witt_shift_up(lo.A(i, j), k).truncate(len))) return false;
  return true;
}

/// Divides the common certified p-power out of A; no precision is lost.
inline QMatrix qm_normalize(QMatrix a) {
  for (;;) {
    bool ok = wm_len(a.A) > 1;
    for (const auto& x : a.A.data())
      if (!x[0].is_zero()) ok = false;
    if (!ok) break;
    a.A = a.A.map([](const WittVector& x) { return div_p_pow(x, 1); });
    --a.e;
  }
  return a;
}

inline QMatrix qm_mul(const QMatrix& a, const QMatrix& b) {
  const QMatrix x = qm_normalize(a), y = qm_normalize(b);
  return QMatrix{x.e + y.e, x.A * y.A};
}

/// p^(-e)·A as an integral matrix when e <= 0.
inline WMatrix qm_lift_integral(const QMatrix& a) {
  require(a.e <= 0, ErrorKind::Usage, "matrix has a p-power denominator");
  return a.A.map([&](const WittVector& x) { return witt_shift_up(x, -a.e); });
}

/// Certified valuation of det, or InsufficientPrecision.
inline int qm_det_valuation(const QMatrix& a_in) {
  const QMatrix a = qm_normalize(a_in);
  const auto v = witt_val(wm_det(a.A));
  if (!v.exact) fail(ErrorKind::InsufficientPrecision, "determinant vanishes to the available precision");
  return v.value - a.rows() * a.e;
}

/// (p^(-e)A)^(-1) = p^(e - v)·(det/p^v)^(-1)·adj(A).
inline QMatrix qm_inverse(const QMatrix& a_in) {
  const QMatrix a = qm_normalize(a_in);
  require(a.rows() == a.cols() && a.rows() > 0, ErrorKind::NotInvertible, "non-square matrix");
  const WittVector d = wm_det(a.A);
  const auto v = witt_val(d);
  if (!v.exact) fail(ErrorKind::InsufficientPrecision, "determinant vanishes to the available precision");
  const WittVector u = div_p_pow(d, v.value).inv();
  const WMatrix B = u * wm_truncate(wm_adjugate(a.A), u.len());
  return QMatrix{v.value - a.e, B};
}

struct Isodisplay {
  RingPtr ring;
  QMatrix phi;  // φ(x) = phi·f(x)

  int rank() const { return phi.rows(); }
};

/// φ = p^d φ': on the basis of L, phi = Φ·diag(p^(w_b)).
inline Isodisplay isodisplay_of(const Display& D) {
  require_perfect_field(D.ring());
  const auto& w = D.L.weights();
  int e = 0;
  for (int x : w) e = std::max(e, -x);
  if (D.rank() == 0) return Isodisplay{D.ring(), QMatrix{0, D.phi}};
  return Isodisplay{D.ring(), QMatrix{e, D.phi * p_power_diag(D.ring(), D.m(), w, -e)}};
}

inline Isodisplay iso_tensor(const Isodisplay& a, const Isodisplay& b) {
  require_same_ring(a.ring, b.ring);
  return Isodisplay{a.ring, qm_kron(a.phi, b.phi)};
}

inline bool iso_equal(const Isodisplay& a, const Isodisplay& b) {
  return same_ring(a.ring, b.ring) && qm_eq(a.phi, b.phi);
}

// --- characteristic polynomial and Newton polygon ---------------------------

using WPoly = std::vector<WittVector>;  // coefficient i of T^i

inline WPoly wpoly_trim(WPoly a) {
  while (a.size() > 1 && a.back().is_zero()) a.pop_back();
  return a;
}

inline WPoly wpoly_add(const WPoly& a, const WPoly& b) {
  WPoly c(std::max(a.size(), b.size()), WittVector::zero(a[0].ring(), std::min(a[0].len(), b[0].len())));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = c[i] + a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = c[i] + b[i];
  return c;
}

inline WPoly wpoly_mul(const WPoly& a, const WPoly& b) {
  WPoly c(a.size() + b.size() - 1, WittVector::zero(a[0].ring(), std::min(a[0].len(), b[0].len())));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
  return c;
}

inline WPoly wpoly_neg(const WPoly& a) {
  WPoly c;
  for (const auto& x : a) c.push_back(-x);
  return c;
}

/// det(T·I - M) by Laplace expansion with polynomial entries.
inline WPoly charpoly(const WMatrix& M) {
  const int n = M.rows();
  require(M.square() && n > 0, ErrorKind::Usage, "characteristic polynomial of a non-square matrix");
  require(n <= 6, ErrorKind::SizeCap, "characteristic polynomial is limited to rank 6");
  const RingPtr& r = M(0, 0).ring();
  const int m = wm_len(M);
  const auto T = Matrix<WPoly>::from_fn(n, n, [&](int i, int j) {
    WPoly e{-M(i, j).truncate(m)};
    if (i == j) e.push_back(WittVector::one(r, m));
    return e;
  });
  return laplace_det<WPoly>(T, WPoly{WittVector::one(r, m)}, WPoly{WittVector::zero(r, m)}, wpoly_mul, wpoly_add,
                            wpoly_neg);
}

/// Φ_a = A·f(A)···f^(a-1)(A), the matrix of φ^a (linear since f^a = id on W(F_{p^a})).
inline WMatrix linearized_power(const WMatrix& A, int a) {
  WMatrix P = A, s = A;
  for (int i = 1; i < a; ++i) {
    s = wm_frobenius(s);
    P = P * s;
  }
  return P;
}

/// Root valuations of a monic polynomial with coefficients known modulo p^m
/// (lower Newton polygon of the points (k, v(c_{n-k}))).
inline std::vector<Rational> newton_polygon_slopes(const WPoly& c) {
  const int n = static_cast<int>(c.size()) - 1;
  struct Pt {
    int x, y;
    bool exact;
    int index;
  };
  std::vector<Pt> pts;
  for (int k = 0; k <= n; ++k) {
    const auto v = witt_val(c[n - k]);
    pts.push_back({k, v.value, v.exact, n - k});
  }
  if (!pts.back().exact)
    fail(ErrorKind::InsufficientPrecision, "constant coefficient (index 0) vanishes to the available precision");
  // lower hull of the certified points
  std::vector<Pt> hull;
  for (const auto& q : pts) {
    if (!q.exact) continue;
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      if (static_cast<i64>(b.y - a.y) * (q.x - a.x) >= static_cast<i64>(q.y - a.y) * (b.x - a.x))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(q);
  }
  // uncertified points must lie on or above the hull at their lower bound
  for (const auto& q : pts) {
    if (q.exact) continue;
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
      const Pt &a = hull[s], &b = hull[s + 1];
      if (q.x < a.x || q.x > b.x) continue;
      if (static_cast<i64>(q.y - a.y) * (b.x - a.x) < static_cast<i64>(b.y - a.y) * (q.x - a.x))
        fail(ErrorKind::InsufficientPrecision,
             "coefficient index " + std::to_string(q.index) + " is not certified enough to fix the Newton polygon");
    }
  }
  std::vector<Rational> slopes;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const Rational sl(hull[s + 1].y - hull[s].y, hull[s + 1].x - hull[s].x);
    for (int k = hull[s].x; k < hull[s + 1].x; ++k) slopes.push_back(sl);
  }
  return slopes;
}

/// Newton slopes of φ over F_{p^a}, sorted ascending.
inline std::vector<Rational> newton_slopes(const Isodisplay& iso) {
  require_perfect_field(iso.ring);
  if (iso.rank() == 0) return {};
  const int a = iso.ring->a();
  auto sl = newton_polygon_slopes(charpoly(linearized_power(iso.phi.A, a)));
  for (auto& s : sl) s = s / a - iso.phi.e;
  return sl;
}

// --- quasi-isogenies ---------------------------------------------------------

/// g: N -> N' with g·φ = φ'·f(g), and g invertible to certified precision.
inline bool quasi_isogeny_check(const QMatrix& g, const Display& D, const Display& Dp) {
  require_same_ring(D.ring(), Dp.ring());
  require(g.rows() == Dp.rank() && g.cols() == D.rank(), ErrorKind::Usage, "g has the wrong shape");
  if (g.rows() != g.cols()) return false;
  if (g.rows() == 0) return true;
  const Isodisplay N = isodisplay_of(D), Np = isodisplay_of(Dp);
  qm_det_valuation(g);
  return qm_eq(qm_mul(g, N.phi), qm_mul(Np.phi, qm_frobenius(g)));
}

/// The graded morphism h with τ(h) = g, when g is integral with the valuation
/// bounds of the degree pattern; nullopt otherwise.
inline std::optional<GradedMorphism> graded_lift(const QMatrix& g_in, const GradedModule& L, const GradedModule& Lp) {
  QMatrix g = qm_normalize(g_in);
  if (g.e > 0) {
    for (const auto& x : g.A.data()) {
      const auto v = witt_val(x);
      if (v.exact && v.value < g.e) return std::nullopt;
    }
    fail(ErrorKind::InsufficientPrecision, "integrality of g is not certified");
  }
  g = QMatrix{0, qm_lift_integral(g)};
  FMatrix h(Lp.rank(), L.rank());
  for (int j = 0; j < Lp.rank(); ++j)
    for (int i = 0; i < L.rank(); ++i) {
      const int d = L.weight(i) - Lp.weight(j);
      const auto v = witt_val(g.A(j, i));
      if (v.exact && v.value < d) return std::nullopt;
      if (!v.exact && v.value < d) fail(ErrorKind::InsufficientPrecision, "entry valuation bound is not certified");
      if (d >= g.A(j, i).len()) fail(ErrorKind::InsufficientPrecision, "degree exceeds the available precision");
      auto u = frame_tau_preimage(g.A(j, i), d);
      if (!u) return std::nullopt;
      h(j, i) = *u;
    }
  return GradedMorphism{L, Lp, h};
}

inline bool is_isogeny(const QMatrix& g, const Display& D, const Display& Dp) {
  if (!quasi_isogeny_check(g, D, Dp)) return false;
  auto h = graded_lift(g, D.L, Dp.L);
  return h && display_morphism_check(*h, D, Dp);
}

// --- Smith normal form over W_m(k) --------------------------------------------

/// Valuations of the elementary divisors, ascending. Minimal-valuation
/// pivoting; a pivot that would have to be an all-zero entry is uncertified.
inline std::vector<int> smith_valuations(const QMatrix& q) {
  if (q.rows() == 0 || q.cols() == 0) return {};
  require_perfect_field(q.A(0, 0).ring());
  WMatrix a = q.A;
  std::vector<int> out;
  int shift = -q.e;
  while (a.rows() > 0 && a.cols() > 0) {
    int best = -1, bi = 0, bj = 0;
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) {
        const auto v = witt_val(a(i, j));
        if (v.exact && (best < 0 || v.value < best)) best = v.value, bi = i, bj = j;
      }
    if (best < 0) fail(ErrorKind::InsufficientPrecision, "remaining block vanishes to the available precision");
    if (best > 0) {
      a = a.map([&](const WittVector& x) { return div_p_pow(x, best); });
      shift += best;
    }
    const int n = a.rows(), c = a.cols();
    // move the unit pivot to (0,0) and clear its row and column
    auto P = WMatrix::from_fn(n, c, [&](int i, int j) {
      const int ii = i == 0 ? bi : (i == bi ? 0 : i);
      const int jj = j == 0 ? bj : (j == bj ? 0 : j);
      return a(ii, jj);
    });
    const WittVector inv = P(0, 0).inv();
    a = WMatrix::from_fn(n - 1, c - 1, [&](int i, int j) {
      return P(i + 1, j + 1) - P(i + 1, 0) * inv * P(0, j + 1);
    });
    out.push_back(shift);
  }
  return out;
}

/// Cross-check: d_k = min valuation of k×k minors; divisors are d_k - d_(k-1).
inline std::vector<int> determinantal_valuations(const WMatrix& a) {
  const int n = a.rows(), c = a.cols();
  std::vector<int> d{0};
  for (int k = 1; k <= std::min(n, c); ++k) {
    int best = 1 << 20;
    bool certified = false;
    std::vector<int> rows(k), cols(k);
    std::vector<bool> rs(n), cs(c);
    std::fill(rs.begin(), rs.begin() + k, true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + k, true);
      do {
        int ri = 0, ci = 0;
        for (int i = 0; i < n; ++i)
          if (rs[i]) rows[ri++] = i;
        for (int j = 0; j < c; ++j)
          if (cs[j]) cols[ci++] = j;
        auto minor = WMatrix::from_fn(k, k, [&](int i, int j) { return a(rows[i], cols[j]); });
        const auto v = witt_val(wm_det(minor));
        if (v.value < best || (v.value == best && v.exact)) {
          best = v.value;
          certified = v.exact;
        }
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
    if (!certified) fail(ErrorKind::InsufficientPrecision, "minors vanish to the available precision");
    d.push_back(best);
  }
  std::vector<int> out;
  for (std::size_t k = 1; k < d.size(); ++k) out.push_back(d[k] - d[k - 1]);
  return out;
}

}  // namespace wittkit
