#pragma once

// Finite p-nilpotent coefficient rings
//
//   R = (Z/p^N)[x, e] / (g(x), e^k)
//
// with g monic of degree a. This covers Z/p^N (a = 1, k = 1), F_q (N = 1),
// the dual numbers F_q[e]/(e^2) and Z/p^N[e]/(e^2), and Galois rings.
// The torsion-free cover Z[x, e]/(g~(x), e^k) (g~ the canonical integer lift
// of g) is the "lift ring"; its reduction mod p^N is R. Witt arithmetic is
// carried out in the lift ring modulo a higher power of p.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "wittkit/error.hpp"

namespace wittkit {

using i64 = std::int64_t;
using i128 = __int128;

inline constexpr i64 kDefaultEnumerationCap = i64{1} << 20;

inline i64 mod_reduce(i128 x, i64 m) {
  i128 r = x % m;
  return static_cast<i64>(r < 0 ? r + m : r);
}

/// p^e, throwing SizeCap on overflow past 2^62.
inline i64 checked_pow(i64 base, int e) {
  i128 r = 1;
  for (int i = 0; i < e; ++i) {
    r *= base;
    if (r > (i128{1} << 62)) fail(ErrorKind::SizeCap, "integer power overflows 2^62");
  }
  return static_cast<i64>(r);
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace detail {

// Polynomials over F_p, low-to-high, trimmed.
using FpPoly = std::vector<i64>;

inline void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline i64 inv_mod_prime(i64 a, i64 p) {
  i64 r = 1, b = mod_reduce(a, p);
  for (i64 e = p - 2; e > 0; e >>= 1) {
    if (e & 1) r = mod_reduce(i128{r} * b, p);
    b = mod_reduce(i128{b} * b, p);
  }
  return r;
}

inline FpPoly fp_rem(FpPoly f, const FpPoly& g, i64 p) {
  trim(f);
  const i64 lead_inv = inv_mod_prime(g.back(), p);
  while (f.size() >= g.size()) {
    const i64 c = mod_reduce(i128{f.back()} * lead_inv, p);
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] = mod_reduce(f[shift + i] - i128{c} * g[i], p);
    trim(f);
  }
  return f;
}

inline bool fp_irreducible(const FpPoly& g_in, i64 p) {
  FpPoly g = g_in;
  for (auto& c : g) c = mod_reduce(c, p);
  trim(g);
  const int deg = static_cast<int>(g.size()) - 1;
  if (deg <= 0) return false;
  if (deg == 1) return true;
  // trial division by every monic polynomial of degree 1..deg/2
  for (int d = 1; d <= deg / 2; ++d) {
    const i64 count = checked_pow(p, d);
    for (i64 code = 0; code < count; ++code) {
      FpPoly h(d + 1, 0);
      i64 c = code;
      for (int i = 0; i < d; ++i) {
        h[i] = c % p;
        c /= p;
      }
      h[d] = 1;
      if (fp_rem(g, h, p).empty()) return false;
    }
  }
  return true;
}

/// First monic irreducible polynomial of degree a over F_p, in the order of
/// the integer code sum c_i p^i of the lower coefficients.
inline FpPoly first_irreducible(i64 p, int a) {
  if (a == 1) return {0, 1};
  const i64 count = checked_pow(p, a);
  for (i64 code = 0; code < count; ++code) {
    FpPoly h(a + 1, 0);
    i64 c = code;
    for (int i = 0; i < a; ++i) {
      h[i] = c % p;
      c /= p;
    }
    h[a] = 1;
    if (fp_irreducible(h, p)) return h;
  }
  fail(ErrorKind::Usage, "no irreducible polynomial found");
}

}  // namespace detail

struct RingSpec {
  int p = 2;
  int N = 1;                 // p^N = 0 in R
  int a = 1;                 // degree of the residue extension
  std::vector<i64> modulus;  // monic g of degree a, low-to-high; empty for a == 1
  int eps = 1;               // e^eps = 0; eps == 1 means no nilpotent generator
  bool operator==(const RingSpec&) const = default;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
 public:
  static RingPtr make(RingSpec spec) {
    require(spec.p >= 2 && is_prime(spec.p), ErrorKind::Usage, "p must be prime");
    require(spec.N >= 1 && spec.a >= 1 && spec.eps >= 1, ErrorKind::Usage, "N, a, eps must be positive");
    if (spec.a == 1) {
      spec.modulus = {0, 1};
    } else if (spec.modulus.empty()) {
      spec.modulus = detail::first_irreducible(spec.p, spec.a);
    }
    require(static_cast<int>(spec.modulus.size()) == spec.a + 1, ErrorKind::Usage,
            "modulus must have degree a");
    const i64 ch = checked_pow(spec.p, spec.N);
    for (auto& c : spec.modulus) c = mod_reduce(c, ch);
    require(spec.modulus.back() == 1, ErrorKind::Usage, "modulus must be monic");
    return RingPtr(new Ring(std::move(spec)));
  }

  static RingPtr zmod(int p, int N) { return make(RingSpec{p, N, 1, {}, 1}); }
  static RingPtr galois_field(int p, int a, std::vector<i64> modulus = {}) {
    auto r = make(RingSpec{p, 1, a, std::move(modulus), 1});
    require(r->is_local(), ErrorKind::Usage, "Galois field modulus must be irreducible mod p");
    return r;
  }
  static RingPtr dual(int p, int N, int a = 1, std::vector<i64> modulus = {}) {
    return make(RingSpec{p, N, a, std::move(modulus), 2});
  }

  const RingSpec& spec() const noexcept { return spec_; }
  int p() const noexcept { return spec_.p; }
  int N() const noexcept { return spec_.N; }
  int a() const noexcept { return spec_.a; }
  int eps() const noexcept { return spec_.eps; }
  int dim() const noexcept { return spec_.a * spec_.eps; }
  i64 characteristic() const noexcept { return char_; }
  i64 residue_size() const noexcept { return residue_size_; }
  const std::vector<i64>& modulus() const noexcept { return spec_.modulus; }

  bool is_local() const noexcept { return local_; }
  bool is_perfect_char_p() const noexcept { return spec_.N == 1 && spec_.eps == 1 && local_; }
  bool is_field() const noexcept { return is_perfect_char_p(); }
  /// Nilpotency index of the nilradical of R/pR.
  int nil_exponent() const noexcept { return spec_.eps; }

  /// |R|, or -1 when it exceeds 2^62.
  i64 size() const noexcept {
    i128 s = 1;
    for (int i = 0; i < dim(); ++i) {
      s *= char_;
      if (s > (i128{1} << 62)) return -1;
    }
    return static_cast<i64>(s);
  }

  std::string name() const {
    std::ostringstream os;
    if (spec_.a == 1) {
      if (spec_.N == 1)
        os << "F" << spec_.p;
      else
        os << "Z/" << char_;
    } else if (spec_.N == 1) {
      os << "F" << residue_size_;
    } else {
      os << "GR(" << char_ << "," << spec_.a << ")";
    }
    if (spec_.eps == 2)
      os << "[e]";
    else if (spec_.eps > 2)
      os << "[e]/e^" << spec_.eps;
    return os.str();
  }

  /// Product of coefficient arrays (length dim()) in Z/M[x, e]/(g~, e^eps).
  /// M is any positive modulus; all inputs are assumed reduced mod M.
  void mul_raw(const i64* x, const i64* y, i64* out, i64 M) const {
    const int a = spec_.a, k = spec_.eps, w = 2 * a - 1;
    std::vector<i64> tmp(static_cast<std::size_t>(w) * k, 0);
    for (int j1 = 0; j1 < k; ++j1)
      for (int i1 = 0; i1 < a; ++i1) {
        const i64 xv = x[i1 + a * j1];
        if (xv == 0) continue;
        for (int j2 = 0; j1 + j2 < k; ++j2)
          for (int i2 = 0; i2 < a; ++i2) {
            const i64 yv = y[i2 + a * j2];
            if (yv == 0) continue;
            i64& slot = tmp[(i1 + i2) + w * (j1 + j2)];
            slot = mod_reduce(i128{slot} + i128{xv} * yv, M);
          }
      }
    for (int j = 0; j < k; ++j) {
      i64* row = tmp.data() + w * j;
      for (int d = w - 1; d >= a; --d) {
        const i64 c = row[d];
        if (c == 0) continue;
        row[d] = 0;
        for (int t = 0; t < a; ++t) row[d - a + t] = mod_reduce(i128{row[d - a + t]} - i128{c} * spec_.modulus[t], M);
      }
      for (int i = 0; i < a; ++i) out[i + a * j] = row[i];
    }
  }

 private:
  explicit Ring(RingSpec spec) : spec_(std::move(spec)) {
    char_ = checked_pow(spec_.p, spec_.N);
    residue_size_ = checked_pow(spec_.p, spec_.a);
    local_ = detail::fp_irreducible(spec_.modulus, spec_.p);
  }

  RingSpec spec_;
  i64 char_ = 0;
  i64 residue_size_ = 0;
  bool local_ = false;
};

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && a->spec() == b->spec());
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b)) fail(ErrorKind::RingMismatch, "operands live in different rings");
}

/// An element of R in canonical form: dim() coefficients in [0, char).
class RingElement {
 public:
  RingElement() = default;
  RingElement(RingPtr ring, std::vector<i64> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
    require(static_cast<int>(c_.size()) == ring_->dim(), ErrorKind::Usage, "coefficient count mismatch");
    for (auto& v : c_) v = mod_reduce(v, ring_->characteristic());
  }

  static RingElement zero(const RingPtr& r) { return RingElement(r, std::vector<i64>(r->dim(), 0)); }
  static RingElement from_int(const RingPtr& r, i64 n) {
    std::vector<i64> c(r->dim(), 0);
    c[0] = n;
    return RingElement(r, std::move(c));
  }
  static RingElement one(const RingPtr& r) { return from_int(r, 1); }
  /// The class of x (the residue generator); equals 0 when a == 1.
  static RingElement gen_x(const RingPtr& r) {
    std::vector<i64> c(r->dim(), 0);
    if (r->a() > 1) c[1] = 1;
    return RingElement(r, std::move(c));
  }
  static RingElement gen_eps(const RingPtr& r) {
    std::vector<i64> c(r->dim(), 0);
    if (r->eps() > 1) c[r->a()] = 1;
    return RingElement(r, std::move(c));
  }

  const RingPtr& ring() const noexcept { return ring_; }
  std::span<const i64> coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](i64 v) { return v == 0; });
  }

  friend bool operator==(const RingElement& x, const RingElement& y) {
    return same_ring(x.ring_, y.ring_) && x.c_ == y.c_;
  }

  friend RingElement operator+(const RingElement& x, const RingElement& y) {
    require_same_ring(x.ring_, y.ring_);
    std::vector<i64> c(x.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.c_[i] + y.c_[i];
    return RingElement(x.ring_, std::move(c));
  }
  friend RingElement operator-(const RingElement& x, const RingElement& y) {
    require_same_ring(x.ring_, y.ring_);
    std::vector<i64> c(x.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.c_[i] - y.c_[i];
    return RingElement(x.ring_, std::move(c));
  }
  RingElement operator-() const {
    std::vector<i64> c(c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -c_[i];
    return RingElement(ring_, std::move(c));
  }
  friend RingElement operator*(const RingElement& x, const RingElement& y) {
    require_same_ring(x.ring_, y.ring_);
    std::vector<i64> c(x.c_.size());
    x.ring_->mul_raw(x.c_.data(), y.c_.data(), c.data(), x.ring_->characteristic());
    return RingElement(x.ring_, std::move(c));
  }

  RingElement pow(std::uint64_t e) const {
    RingElement r = one(ring_), b = *this;
    for (; e > 0; e >>= 1) {
      if (e & 1) r = r * b;
      b = b * b;
    }
    return r;
  }

  /// Image in the residue field F_q = F_p[x]/(g mod p) is non-zero.
  bool residue_nonzero() const {
    for (int i = 0; i < ring_->a(); ++i)
      if (c_[i] % ring_->p() != 0) return true;
    return false;
  }

  bool is_unit() const {
    if (ring_->is_local()) return residue_nonzero();
    return try_inverse_brute().has_value();
  }

  RingElement inv() const {
    if (ring_->is_local()) {
      if (!residue_nonzero()) fail(ErrorKind::NonUnit, "element is not a unit");
      // inverse modulo the maximal ideal, then Newton lifting through the nilpotent part
      RingElement y = pow(static_cast<std::uint64_t>(ring_->residue_size() - 2));
      const RingElement two = from_int(ring_, 2), unit = one(ring_);
      for (int it = 0; it < 128; ++it) {
        if (*this * y == unit) return y;
        y = y * (two - *this * y);
      }
      fail(ErrorKind::NonUnit, "Newton inversion did not converge");
    }
    auto r = try_inverse_brute();
    if (!r) fail(ErrorKind::NonUnit, "element is not a unit");
    return *r;
  }

 private:
  std::optional<RingElement> try_inverse_brute() const;

  RingPtr ring_;
  std::vector<i64> c_;
};

/// Element number `index` in canonical order: mixed radix, constant term least significant.
inline RingElement ring_element_at(const RingPtr& r, i64 index) {
  std::vector<i64> c(r->dim(), 0);
  for (int i = 0; i < r->dim(); ++i) {
    c[i] = index % r->characteristic();
    index /= r->characteristic();
  }
  return RingElement(r, std::move(c));
}

inline std::vector<RingElement> ring_enumerate(const RingPtr& r, i64 cap = kDefaultEnumerationCap) {
  const i64 n = r->size();
  if (n < 0 || n > cap) fail(ErrorKind::SizeCap, "ring " + r->name() + " is too large to enumerate");
  std::vector<RingElement> out;
  out.reserve(static_cast<std::size_t>(n));
  for (i64 k = 0; k < n; ++k) out.push_back(ring_element_at(r, k));
  return out;
}

inline std::optional<RingElement> RingElement::try_inverse_brute() const {
  const RingElement unit = one(ring_);
  for (const auto& y : ring_enumerate(ring_))
    if (*this * y == unit) return y;
  return std::nullopt;
}

template <class Rng>
RingElement ring_random(const RingPtr& r, Rng& rng) {
  std::uniform_int_distribution<i64> d(0, r->characteristic() - 1);
  std::vector<i64> c(r->dim());
  for (auto& v : c) v = d(rng);
  return RingElement(r, std::move(c));
}

template <class Rng>
RingElement ring_random_unit(const RingPtr& r, Rng& rng) {
  for (;;) {
    auto x = ring_random(r, rng);
    if (x.is_unit()) return x;
  }
}

/// Canonical lift: the integer coefficient vector in [0, char).
inline std::vector<i64> ring_lift(const RingElement& x) { return {x.coeffs().begin(), x.coeffs().end()}; }

/// Reduction Z[x, e]/(g~, e^k) -> R; arbitrary integer coefficients are allowed.
inline RingElement ring_reduce(const RingPtr& r, std::span<const i64> z) {
  return RingElement(r, std::vector<i64>(z.begin(), z.end()));
}

/// Exact product in the lift ring Z[x, e]/(g~, e^k) (no modulus). Inputs must be
/// small enough that no intermediate exceeds 2^62; checked.
inline std::vector<i64> lift_ring_mul(const RingPtr& r, std::span<const i64> x, std::span<const i64> y) {
  const int a = r->a(), k = r->eps(), w = 2 * a - 1;
  std::vector<i128> tmp(static_cast<std::size_t>(w) * k, 0);
  for (int j1 = 0; j1 < k; ++j1)
    for (int i1 = 0; i1 < a; ++i1)
      for (int j2 = 0; j1 + j2 < k; ++j2)
        for (int i2 = 0; i2 < a; ++i2) tmp[(i1 + i2) + w * (j1 + j2)] += i128{x[i1 + a * j1]} * y[i2 + a * j2];
  const auto& g = r->modulus();
  std::vector<i64> out(r->dim());
  for (int j = 0; j < k; ++j) {
    i128* row = tmp.data() + w * j;
    for (int d = w - 1; d >= a; --d) {
      const i128 c = row[d];
      row[d] = 0;
      for (int t = 0; t < a; ++t) row[d - a + t] -= c * g[t];
    }
    for (int i = 0; i < a; ++i) {
      require(row[i] < (i128{1} << 62) && row[i] > -(i128{1} << 62), ErrorKind::SizeCap,
              "lift-ring product overflow");
      out[i + a * j] = static_cast<i64>(row[i]);
    }
  }
  return out;
}

/// A ring homomorphism between two supported presentations, determined by the
/// images of x and e. Integer coefficients map through Z/p^N -> Z/p^N'.
class RingHom {
 public:
  RingHom(RingPtr src, RingPtr tgt, RingElement x_image, RingElement eps_image)
      : src_(std::move(src)), tgt_(std::move(tgt)), x_(std::move(x_image)), e_(std::move(eps_image)) {
    require(src_->p() == tgt_->p() && tgt_->N() <= src_->N(), ErrorKind::Usage,
            "target characteristic must divide source characteristic");
    require_same_ring(x_.ring(), tgt_);
    require_same_ring(e_.ring(), tgt_);
    // g(x_image) == 0 and e_image^k == 0
    RingElement acc = RingElement::zero(tgt_), xp = RingElement::one(tgt_);
    for (i64 c : src_->modulus()) {
      acc = acc + RingElement::from_int(tgt_, c) * xp;
      xp = xp * x_;
    }
    require(src_->a() == 1 || acc.is_zero(), ErrorKind::Usage, "image of x is not a root of the modulus");
    require(e_.pow(static_cast<std::uint64_t>(src_->eps())).is_zero(), ErrorKind::Usage,
            "image of e is not nilpotent of the right order");
  }

  /// The natural map: x goes to the first root of g in the target (or the
  /// target's own generator when the presentations agree), e to e or 0.
  static RingHom natural(const RingPtr& src, const RingPtr& tgt) {
    RingElement e = (src->eps() > 1 && tgt->eps() > 1) ? RingElement::gen_eps(tgt) : RingElement::zero(tgt);
    if (src->a() == 1) return RingHom(src, tgt, RingElement::zero(tgt), e);
    if (src->a() == tgt->a() && src->modulus() == tgt->modulus()) return RingHom(src, tgt, RingElement::gen_x(tgt), e);
    for (const auto& cand : ring_enumerate(tgt)) {
      RingElement acc = RingElement::zero(tgt), xp = RingElement::one(tgt);
      for (i64 c : src->modulus()) {
        acc = acc + RingElement::from_int(tgt, c) * xp;
        xp = xp * cand;
      }
      if (acc.is_zero()) return RingHom(src, tgt, cand, e);
    }
    fail(ErrorKind::Usage, "no ring map " + src->name() + " -> " + tgt->name());
  }

  const RingPtr& source() const noexcept { return src_; }
  const RingPtr& target() const noexcept { return tgt_; }

  RingElement operator()(const RingElement& z) const {
    require_same_ring(z.ring(), src_);
    RingElement out = RingElement::zero(tgt_);
    RingElement ep = RingElement::one(tgt_);
    const int a = src_->a();
    for (int j = 0; j < src_->eps(); ++j) {
      RingElement xp = ep;
      for (int i = 0; i < a; ++i) {
        out = out + RingElement::from_int(tgt_, z.coeffs()[i + a * j]) * xp;
        xp = xp * x_;
      }
      ep = ep * e_;
    }
    return out;
  }

 private:
  RingPtr src_, tgt_;
  RingElement x_, e_;
};

}  // namespace wittkit
