#pragma once

// Framing pairs (μ, b) with b = u·μ^σ(p), the maps c_b and m_μ, points (U, g)
// of the fiber product, the action of the display group and a window scan of
// points up to that action. Base: a finite field k, μ diagonal and minuscule.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wittkit/dg.hpp"
#include "wittkit/error.hpp"
#include "wittkit/iso.hpp"

namespace wittkit {

/// μ(p) as p^(-e)·diag(p^(i + e)).
inline QMatrix mu_q(const RingPtr& r, int m, const Cocharacter& I) {
  int e = 0;
  for (int i : I) e = std::max(e, -i);
  return QMatrix{e, p_power_diag(r, m, I, -e)};
}

/// μ(p)^(-1) as p^(-e)·diag(p^(e - i)).
inline QMatrix mu_inv_q(const RingPtr& r, int m, const Cocharacter& I) {
  int e = 0;
  for (int i : I) e = std::max(e, i);
  std::vector<int> w;
  for (int i : I) w.push_back(e - i);
  return QMatrix{e, p_power_diag(r, m, w)};
}

/// A certified-integral matrix from p^(-e)·A, nullopt when some entry is
/// certainly non-integral; InsufficientPrecision when undecidable.
inline std::optional<WMatrix> qm_integral_part(const QMatrix& q) {
  const QMatrix n = qm_normalize(q);
  if (n.e <= 0) return qm_lift_integral(n);
  for (const auto& x : n.A.data()) {
    const auto v = witt_val(x);
    if (v.exact && v.value < n.e) return std::nullopt;
  }
  fail(ErrorKind::InsufficientPrecision, "integrality is not decided at this precision");
}

struct FramingDatum {
  RingPtr ring;
  Cocharacter I;
  QMatrix b;
  WMatrix u;
  std::vector<int> elementary_divisors;

  int n() const { return static_cast<int>(I.size()); }
  Display framing_object() const { return banal_display(u, I); }
};

inline FramingDatum validate_framing(const Cocharacter& I_in, const QMatrix& b) {
  const Cocharacter I = cocharacter(I_in);
  require(!I.empty() && b.rows() == static_cast<int>(I.size()) && b.cols() == b.rows(), ErrorKind::Usage,
          "b does not match the cocharacter");
  const RingPtr r = b.A(0, 0).ring();
  require_perfect_field(r);
  if (I.back() - I.front() > 1) fail(ErrorKind::NotMinuscule, "max(I) - min(I) exceeds 1");
  const auto ed = smith_valuations(b);
  if (ed != I) {
    std::string found;
    for (int v : ed) found += (found.empty() ? "" : ",") + std::to_string(v);
    fail(ErrorKind::NotInDoubleCoset, "elementary divisors of b are (" + found + ")");
  }
  const auto u = qm_integral_part(qm_mul(b, mu_inv_q(r, wm_len(b.A), I)));
  if (!u || !wm_is_invertible(*u)) fail(ErrorKind::NotInDoubleCoset, "b·μ(p)^(-1) is not in GL_n(W(k))");
  return FramingDatum{r, I, b, *u, ed};
}

/// c_b(g) = g^(-1)·b·f(g).
inline QMatrix c_b(const FramingDatum& F, const QMatrix& g) {
  return qm_mul(qm_mul(qm_inverse(g), F.b), qm_frobenius(g));
}

/// m_μ(U) = U·μ^σ(p).
inline QMatrix m_mu(const FramingDatum& F, const WMatrix& U) {
  return qm_mul(qm_integral(U), mu_q(F.ring, wm_len(U), F.I));
}

struct RZPoint {
  WMatrix U;
  QMatrix g;
};

/// U := g^(-1)·b·f(g)·μ^σ(p)^(-1); a point iff U is integral and invertible.
inline std::optional<RZPoint> rz_membership(const FramingDatum& F, const QMatrix& g) {
  require(g.rows() == F.n() && g.cols() == F.n(), ErrorKind::Usage, "g has the wrong shape");
  const QMatrix cb = c_b(F, g);
  const auto U = qm_integral_part(qm_mul(cb, mu_inv_q(F.ring, wm_len(cb.A), F.I)));
  if (!U || !wm_is_invertible(*U)) return std::nullopt;
  return RZPoint{*U, g};
}

inline bool rz_fiber_equation(const FramingDatum& F, const RZPoint& pt) { return qm_eq(c_b(F, pt.g), m_mu(F, pt.U)); }

/// (τ(h)^(-1)·U·σ(h), g·τ(h)).
inline RZPoint rz_action(const FramingDatum& F, const RZPoint& pt, const FMatrix& h) {
  dg_require(h, F.I);
  RZPoint out{dg_action(pt.U, h), qm_mul(pt.g, qm_integral(dg_tau(h)))};
  if (!rz_fiber_equation(F, out)) throw std::logic_error("RZ action left the fiber product");
  return out;
}

/// g' = g·τ(h) for some h: g^(-1)g' integral, invertible, with entry (j,k)
/// divisible by p^max(0, i_k - i_j).
inline bool rz_same_orbit(const FramingDatum& F, const QMatrix& g, const QMatrix& gp) {
  const auto k = qm_integral_part(qm_mul(qm_inverse(g), gp));
  if (!k) return false;
  const int n = F.n();
  for (int j = 0; j < n; ++j)
    for (int c = 0; c < n; ++c) {
      const int need = std::max(0, F.I[c] - F.I[j]);
      const auto v = witt_val((*k)(j, c));
      if (v.value < need) {
        if (v.exact) return false;
        fail(ErrorKind::InsufficientPrecision, "orbit test is not decided at this precision");
      }
    }
  return wm_is_invertible(*k);
}

struct RZEnumeration {
  std::vector<RZPoint> points;
  std::vector<int> orbit;  // per point
  int orbits = 0;
  i64 scanned = 0;
  i64 undecided = 0;  // candidates whose membership needed more precision
};

/// Candidates g = p^(-w)·A whose entries have p-adic digits only in
/// positions -w..w; points among them, partitioned into orbits.
inline RZEnumeration rz_enumerate(const FramingDatum& F, int window, int threads = 1, i64 cap = i64{1} << 16) {
  const int n = F.n();
  require(window >= 0, ErrorKind::Usage, "negative valuation window");
  const RingPtr& r = F.ring;
  const int digits = 2 * window + 1;
  const int M = wm_len(F.b.A) + 4 * window + 2;
  const auto elems = ring_enumerate(r);
  const i64 q = static_cast<i64>(elems.size());
  i128 per_entry = 1;
  for (int i = 0; i < digits; ++i) per_entry *= q;
  i128 total = 1;
  for (int i = 0; i < n * n; ++i) {
    total *= per_entry;
    if (total > cap) fail(ErrorKind::SizeCap, "RZ scan exceeds the candidate cap");
  }
  auto candidate = [&](i64 code) {
    WMatrix A(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::vector<RingElement> c(static_cast<std::size_t>(M), RingElement::zero(r));
        for (int d = 0; d < digits; ++d) {
          c[d] = elems[code % q];
          code /= q;
        }
        A(j, k) = WittVector(r, std::move(c));
      }
    return QMatrix{window, A};
  };
  std::vector<std::optional<RZPoint>> found(static_cast<std::size_t>(total));
  std::vector<char> undecided(static_cast<std::size_t>(total), 0);
  parallel_for(static_cast<int>(total), threads, [&](int code) {
    const QMatrix g = candidate(code);
    try {
      if (!witt_val(wm_det(g.A)).exact) return;
      found[code] = rz_membership(F, g);
    } catch (const Error& e) {
      if (!e.is_precision()) throw;
      undecided[code] = 1;
    }
  });
  RZEnumeration out;
  out.scanned = static_cast<i64>(total);
  for (i64 c = 0; c < static_cast<i64>(total); ++c) {
    out.undecided += undecided[c];
    if (found[c]) out.points.push_back(*found[c]);
  }
  // union-find within buckets of equal det valuation
  const int np = static_cast<int>(out.points.size());
  std::vector<int> dv(np);
  for (int i = 0; i < np; ++i) dv[i] = qm_det_valuation(out.points[i].g);
  std::vector<int> parent(np);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<std::vector<int>> same(np);
  parallel_for(np, threads, [&](int i) {
    for (int j = i + 1; j < np; ++j)
      if (dv[i] == dv[j] && rz_same_orbit(F, out.points[i].g, out.points[j].g)) same[i].push_back(j);
  });
  for (int i = 0; i < np; ++i)
    for (int j : same[i]) {
      const int a = find(i), b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<int, int> id;
  for (int i = 0; i < np; ++i) {
    auto [it, fresh] = id.emplace(find(i), out.orbits);
    if (fresh) ++out.orbits;
    out.orbit.push_back(it->second);
  }
  return out;
}

}  // namespace wittkit
