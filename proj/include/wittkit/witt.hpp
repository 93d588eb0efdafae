#pragma once

// Truncated p-typical Witt vectors W_m(R).
//
// Arithmetic: lift coordinates to the torsion-free lift ring, map to ghost
// components modulo p^(N+m-1), operate componentwise, and solve back for the
// coordinates. Each solve step divides by p^n exactly; it suffices to carry
// the already-solved coordinates modulo p^N because (a + p^N c)^(p^j) is
// a^(p^j) modulo p^(N+j).

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "wittkit/error.hpp"
#include "wittkit/ring.hpp"

namespace wittkit {

namespace detail {

using Lift = std::vector<i64>;

inline Lift lift_mul(const Ring& r, const Lift& x, const Lift& y, i64 M) {
  Lift out(x.size());
  r.mul_raw(x.data(), y.data(), out.data(), M);
  return out;
}

inline Lift lift_pow(const Ring& r, Lift x, std::uint64_t e, i64 M) {
  Lift acc(x.size(), 0);
  acc[0] = 1 % M;
  for (; e > 0; e >>= 1) {
    if (e & 1) acc = lift_mul(r, acc, x, M);
    if (e > 1) x = lift_mul(r, x, x, M);
  }
  return acc;
}

inline i64 witt_modulus(const Ring& r, int len) {
  const i64 M = checked_pow(r.p(), r.N() + std::max(len, 1) - 1);
  require(M <= (i64{1} << 62), ErrorKind::SizeCap, "Witt working modulus exceeds 2^62");
  return M;
}

/// Ghost components w_0..w_{len-1} of the canonical lifts, reduced mod M.
inline std::vector<Lift> ghost_lifts(const Ring& r, const std::vector<RingElement>& x, int len, i64 M) {
  std::vector<Lift> w(len, Lift(r.dim(), 0));
  std::vector<i64> ppow(len + 1, 1);
  for (int i = 1; i <= len; ++i) ppow[i] = ppow[i - 1] * r.p();
  for (int i = 0; i < len; ++i) {
    Lift xi(x[i].coeffs().begin(), x[i].coeffs().end());
    // x_i^(p^(n-i)) for n = i, i+1, ...
    Lift pw = xi;
    for (int n = i; n < len; ++n) {
      for (int k = 0; k < r.dim(); ++k) w[n][k] = mod_reduce(w[n][k] + i128{ppow[i]} * pw[k], M);
      if (n + 1 < len) pw = lift_pow(r, pw, static_cast<std::uint64_t>(r.p()), M);
    }
  }
  return w;
}

/// Inverse of the ghost map: coordinates a_0..a_{len-1} in R from ghost
/// components known modulo M = p^(N+len-1).
inline std::vector<RingElement> unghost(const RingPtr& rp, const std::vector<Lift>& w, int len, i64 M) {
  const Ring& r = *rp;
  std::vector<RingElement> a;
  a.reserve(len);
  std::vector<Lift> a_pows;  // running p^(n-i) powers of lift(a_i)
  i64 pn = 1;
  for (int n = 0; n < len; ++n) {
    Lift acc = w[n];
    i64 pi = 1;
    for (int i = 0; i < n; ++i) {
      // a_pows[i] holds lift(a_i)^(p^(n-1-i)); raise once more
      a_pows[i] = lift_pow(r, a_pows[i], static_cast<std::uint64_t>(r.p()), M);
      for (int k = 0; k < r.dim(); ++k) acc[k] = mod_reduce(acc[k] - i128{pi} * a_pows[i][k], M);
      pi *= r.p();
    }
    std::vector<i64> q(r.dim());
    for (int k = 0; k < r.dim(); ++k) {
      if (acc[k] % pn != 0) fail(ErrorKind::InexactDivision, "ghost solve is not exact");
      q[k] = acc[k] / pn;
    }
    a.emplace_back(rp, std::move(q));
    a_pows.emplace_back(a.back().coeffs().begin(), a.back().coeffs().end());
    pn *= r.p();
  }
  return a;
}

}  // namespace detail

class WittVector {
 public:
  WittVector() = default;
  WittVector(RingPtr ring, std::vector<RingElement> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
    require(!c_.empty(), ErrorKind::PrecisionExhausted, "Witt vector of length zero");
    for (const auto& x : c_) require_same_ring(x.ring(), ring_);
  }
  WittVector(const RingPtr& ring, const std::vector<i64>& coords)
      : WittVector(ring, [&] {
          std::vector<RingElement> v;
          for (i64 c : coords) v.push_back(RingElement::from_int(ring, c));
          return v;
        }()) {}

  static WittVector zero(const RingPtr& r, int m) {
    return WittVector(r, std::vector<RingElement>(m, RingElement::zero(r)));
  }
  static WittVector teichmuller(const RingElement& a, int m) {
    std::vector<RingElement> v(m, RingElement::zero(a.ring()));
    v[0] = a;
    return WittVector(a.ring(), std::move(v));
  }
  static WittVector one(const RingPtr& r, int m) { return teichmuller(RingElement::one(r), m); }
  /// The image of an integer under Z -> W_m(R).
  static WittVector from_int(const RingPtr& r, int m, i64 n) {
    const i64 M = detail::witt_modulus(*r, m);
    std::vector<detail::Lift> w(m, detail::Lift(r->dim(), 0));
    for (auto& g : w) g[0] = mod_reduce(n, M);
    return WittVector(r, detail::unghost(r, w, m, M));
  }

  const RingPtr& ring() const noexcept { return ring_; }
  int len() const noexcept { return static_cast<int>(c_.size()); }
  const RingElement& operator[](int i) const { return c_.at(static_cast<std::size_t>(i)); }
  const std::vector<RingElement>& coeffs() const noexcept { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const RingElement& x) { return x.is_zero(); });
  }

  WittVector truncate(int m) const {
    require(m >= 1 && m <= len(), ErrorKind::PrecisionExhausted, "cannot truncate to requested length");
    return WittVector(ring_, std::vector<RingElement>(c_.begin(), c_.begin() + m));
  }

  /// Ghost components of the canonical lift, modulo p^(N+len-1).
  std::vector<std::vector<i64>> ghost() const {
    const i64 M = detail::witt_modulus(*ring_, len());
    return detail::ghost_lifts(*ring_, c_, len(), M);
  }

  /// Exact equality of coordinates; lengths must agree.
  friend bool operator==(const WittVector& x, const WittVector& y) {
    return same_ring(x.ring_, y.ring_) && x.c_ == y.c_;
  }
  /// Equality on the common prefix.
  friend bool eq_prefix(const WittVector& x, const WittVector& y) {
    const int m = std::min(x.len(), y.len());
    return x.truncate(m) == y.truncate(m);
  }

  friend WittVector operator+(const WittVector& x, const WittVector& y) {
    return combine(x, y, [](i64 a, i64 b, i64 M) { return mod_reduce(i128{a} + b, M); });
  }
  friend WittVector operator-(const WittVector& x, const WittVector& y) {
    return combine(x, y, [](i64 a, i64 b, i64 M) { return mod_reduce(i128{a} - b, M); });
  }
  WittVector operator-() const { return zero(ring_, len()) - *this; }

  friend WittVector operator*(const WittVector& x, const WittVector& y) {
    require_same_ring(x.ring_, y.ring_);
    const int m = std::min(x.len(), y.len());
    const Ring& r = *x.ring_;
    const i64 M = detail::witt_modulus(r, m);
    auto wx = detail::ghost_lifts(r, x.c_, m, M);
    auto wy = detail::ghost_lifts(r, y.c_, m, M);
    for (int n = 0; n < m; ++n) wx[n] = detail::lift_mul(r, wx[n], wy[n], M);
    return WittVector(x.ring_, detail::unghost(x.ring_, wx, m, M));
  }

  /// n·x for an integer n.
  WittVector scale(i64 n) const {
    const i64 M = detail::witt_modulus(*ring_, len());
    auto w = detail::ghost_lifts(*ring_, c_, len(), M);
    for (auto& g : w)
      for (auto& v : g) v = mod_reduce(i128{v} * mod_reduce(n, M), M);
    return WittVector(ring_, detail::unghost(ring_, w, len(), M));
  }

  WittVector pow(std::uint64_t e) const {
    WittVector r = one(ring_, len()), b = *this;
    for (; e > 0; e >>= 1) {
      if (e & 1) r = r * b;
      b = b * b;
    }
    return r;
  }

  /// Units of W_m(R) are exactly the vectors whose 0-th coordinate is a unit.
  bool is_unit() const { return c_[0].is_unit(); }

  WittVector inv() const {
    if (!c_[0].is_unit()) fail(ErrorKind::NonUnit, "Witt vector is not a unit");
    WittVector y = teichmuller(c_[0].inv(), len());
    const WittVector two = from_int(ring_, len(), 2), u = one(ring_, len());
    for (int it = 0; it < 64; ++it) {
      if (*this * y == u) return y;
      y = y * (two - *this * y);
    }
    fail(ErrorKind::NonUnit, "Newton inversion did not converge");
  }

 private:
  template <class Op>
  static WittVector combine(const WittVector& x, const WittVector& y, Op op) {
    require_same_ring(x.ring_, y.ring_);
    const int m = std::min(x.len(), y.len());
    const Ring& r = *x.ring_;
    const i64 M = detail::witt_modulus(r, m);
    auto wx = detail::ghost_lifts(r, x.c_, m, M);
    auto wy = detail::ghost_lifts(r, y.c_, m, M);
    for (int n = 0; n < m; ++n)
      for (int k = 0; k < r.dim(); ++k) wx[n][k] = op(wx[n][k], wy[n][k], M);
    return WittVector(x.ring_, detail::unghost(x.ring_, wx, m, M));
  }

  RingPtr ring_;
  std::vector<RingElement> c_;
};

inline std::ostream& operator<<(std::ostream& os, const RingElement& x) {
  const auto c = x.coeffs();
  if (c.size() == 1) return os << c[0];
  os << "(";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  return os << ")";
}

inline std::ostream& operator<<(std::ostream& os, const WittVector& x) {
  os << "[";
  for (int i = 0; i < x.len(); ++i) os << (i ? "," : "") << x[i];
  return os << "]";
}

inline WittVector teichmuller(const RingElement& a, int m) { return WittVector::teichmuller(a, m); }

inline WittVector frobenius_general(const WittVector& x);

/// Frobenius f. General rings: ghost shift, output length m-1. Perfect rings of
/// characteristic p: coordinatewise p-th power, output length m.
inline WittVector frobenius(const WittVector& x) {
  const RingPtr& r = x.ring();
  if (r->is_perfect_char_p()) {
    std::vector<RingElement> c;
    for (const auto& xi : x.coeffs()) c.push_back(xi.pow(static_cast<std::uint64_t>(r->p())));
    return WittVector(r, std::move(c));
  }
  return frobenius_general(x);
}

/// Ghost-shift Frobenius regardless of ring type (length m-1).
inline WittVector frobenius_general(const WittVector& x) {
  const int m = x.len();
  if (m < 2) fail(ErrorKind::PrecisionExhausted, "Frobenius needs length at least 2 on this ring");
  const Ring& r = *x.ring();
  const i64 M = detail::witt_modulus(r, m);
  auto w = detail::ghost_lifts(r, x.coeffs(), m, M);
  w.erase(w.begin());
  // ghosts of f(x) are w_1..w_{m-1}; coordinates to length m-1 need modulus p^(N+m-2)
  const i64 M2 = detail::witt_modulus(r, m - 1);
  for (auto& g : w)
    for (auto& v : g) v = mod_reduce(v, M2);
  return WittVector(x.ring(), detail::unghost(x.ring(), w, m - 1, M2));
}

/// f^k.
inline WittVector frobenius_pow(WittVector x, int k) {
  for (int i = 0; i < k; ++i) x = frobenius(x);
  return x;
}

/// Verschiebung v: (x_0, ..., x_{m-1}) -> (0, x_0, ..., x_{m-2}).
inline WittVector verschiebung(const WittVector& x) {
  std::vector<RingElement> c;
  c.push_back(RingElement::zero(x.ring()));
  for (int i = 0; i + 1 < x.len(); ++i) c.push_back(x[i]);
  return WittVector(x.ring(), std::move(c));
}

/// x lies in I_R = ker w_0.
inline bool in_IR(const WittVector& x) { return x[0].is_zero(); }

struct VPreimage {
  WittVector value;   // length m, top coordinate set to 0
  int exact_coeffs;   // m - 1
};

inline VPreimage v_preimage(const WittVector& x) {
  if (!in_IR(x)) fail(ErrorKind::NotInIR, "0-th coordinate is non-zero");
  std::vector<RingElement> c(x.coeffs().begin() + 1, x.coeffs().end());
  c.push_back(RingElement::zero(x.ring()));
  return {WittVector(x.ring(), std::move(c)), x.len() - 1};
}

/// p-adic valuation on W_m(k), k a perfect field: the index of the first
/// non-zero coordinate, or a lower bound m when all coordinates vanish.
struct WittValuation {
  int value;
  bool exact;  // false: the valuation is only known to be >= value
  bool operator==(const WittValuation&) const = default;
};

inline WittValuation witt_val(const WittVector& x) {
  if (!x.ring()->is_perfect_char_p()) fail(ErrorKind::UnsupportedRing, "valuation needs a perfect field");
  for (int i = 0; i < x.len(); ++i)
    if (!x[i].is_zero()) return {i, true};
  return {x.len(), false};
}

/// p^(-k)-th power on a finite field F_q: the Frobenius inverse iterated k times.
inline RingElement frobenius_root(const RingElement& a, int k) {
  const RingPtr& r = a.ring();
  if (!r->is_perfect_char_p()) fail(ErrorKind::UnsupportedRing, "p-th roots need a perfect field");
  // x^(p^(-1)) = x^(p^(a-1)) on F_{p^a}
  const int a_deg = r->a();
  const int e = ((a_deg - (k % a_deg)) % a_deg);
  RingElement y = a;
  for (int i = 0; i < e; ++i) y = y.pow(static_cast<std::uint64_t>(r->p()));
  return y;
}

/// p^k·x on W_m(k), k perfect: coordinates shift by k with Frobenius twist.
inline WittVector mul_p_pow(const WittVector& x, int k) {
  if (k == 0) return x;
  if (!x.ring()->is_perfect_char_p()) {
    WittVector y = x;
    for (int i = 0; i < k; ++i) y = y.scale(x.ring()->p());
    return y;
  }
  const RingPtr& r = x.ring();
  std::vector<RingElement> c(x.len(), RingElement::zero(r));
  for (int i = 0; i + k < x.len(); ++i) {
    RingElement v = x[i];
    for (int j = 0; j < k; ++j) v = v.pow(static_cast<std::uint64_t>(r->p()));
    c[i + k] = v;
  }
  return WittVector(r, std::move(c));
}

/// x / p^k on W_m(k), k perfect, requiring valuation >= k; output length m-k.
inline WittVector div_p_pow(const WittVector& x, int k) {
  if (k == 0) return x;
  if (!x.ring()->is_perfect_char_p()) fail(ErrorKind::UnsupportedRing, "division by p needs a perfect field");
  if (k >= x.len()) fail(ErrorKind::PrecisionExhausted, "division by p^k leaves no coordinates");
  for (int i = 0; i < k; ++i)
    if (!x[i].is_zero()) fail(ErrorKind::NonUnit, "not divisible by p^k");
  std::vector<RingElement> c;
  for (int i = k; i < x.len(); ++i) c.push_back(frobenius_root(x[i], k));
  return WittVector(x.ring(), std::move(c));
}

/// Inverse Frobenius on W_m(k), k perfect.
inline WittVector frobenius_inverse(const WittVector& x) {
  std::vector<RingElement> c;
  for (const auto& xi : x.coeffs()) c.push_back(frobenius_root(xi, 1));
  return WittVector(x.ring(), std::move(c));
}

template <class Rng>
WittVector witt_random(const RingPtr& r, int m, Rng& rng) {
  std::vector<RingElement> c;
  for (int i = 0; i < m; ++i) c.push_back(ring_random(r, rng));
  return WittVector(r, std::move(c));
}

template <class Rng>
WittVector witt_random_unit(const RingPtr& r, int m, Rng& rng) {
  std::vector<RingElement> c;
  c.push_back(ring_random_unit(r, rng));
  for (int i = 1; i < m; ++i) c.push_back(ring_random(r, rng));
  return WittVector(r, std::move(c));
}

/// All of W_m(R) in canonical order (coordinate 0 least significant).
inline std::vector<WittVector> witt_enumerate(const RingPtr& r, int m, i64 cap = kDefaultEnumerationCap) {
  const auto elems = ring_enumerate(r, cap);
  i128 total = 1;
  for (int i = 0; i < m; ++i) {
    total *= static_cast<i128>(elems.size());
    if (total > cap) fail(ErrorKind::SizeCap, "W_m(R) is too large to enumerate");
  }
  std::vector<WittVector> out;
  std::vector<std::size_t> idx(m, 0);
  for (i64 k = 0; k < static_cast<i64>(total); ++k) {
    std::vector<RingElement> c;
    for (int i = 0; i < m; ++i) c.push_back(elems[idx[i]]);
    out.emplace_back(r, std::move(c));
    for (int i = 0; i < m; ++i) {
      if (++idx[i] < elems.size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

}  // namespace wittkit
