#pragma once

// Universal Witt addition and multiplication polynomials S_n, P_n over Z in
// the variables X_0..X_{m-1}, Y_0..Y_{m-1}, obtained from
//   sum_{i<=n} p^i S_i^(p^(n-i)) = w_n(X) + w_n(Y)
// (and likewise P with w_n(X)·w_n(Y)) by exact division by p^n.
// Used as an independent oracle for the ghost-based arithmetic in witt.hpp.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "wittkit/error.hpp"
#include "wittkit/ring.hpp"
#include "wittkit/witt.hpp"

namespace wittkit {

using BigInt = boost::multiprecision::cpp_int;

/// Sparse multivariate polynomial with big-integer coefficients.
class IntPoly {
 public:
  using Monomial = std::vector<std::uint16_t>;

  IntPoly() = default;
  explicit IntPoly(int nvars) : nvars_(nvars) {}

  static IntPoly constant(int nvars, const BigInt& c) {
    IntPoly f(nvars);
    if (c != 0) f.terms_[Monomial(nvars, 0)] = c;
    return f;
  }
  static IntPoly variable(int nvars, int i) {
    IntPoly f(nvars);
    Monomial e(nvars, 0);
    e[i] = 1;
    f.terms_[e] = 1;
    return f;
  }

  int nvars() const noexcept { return nvars_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::map<Monomial, BigInt>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  friend IntPoly operator+(IntPoly a, const IntPoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    IntPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Monomial e(a.nvars_);
        for (int i = 0; i < a.nvars_; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
        r.add_term(e, ca * cb);
      }
    r.check_cap();
    return r;
  }
  IntPoly scaled(const BigInt& k) const {
    IntPoly r(nvars_);
    if (k == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_[e] = c * k;
    return r;
  }
  /// Exact division of every coefficient; InexactDivision otherwise.
  IntPoly divided(const BigInt& k) const {
    IntPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (c % k != 0) fail(ErrorKind::InexactDivision, "universal polynomial is not integral");
      r.terms_[e] = c / k;
    }
    return r;
  }
  IntPoly pow(std::uint64_t e) const {
    IntPoly r = constant(nvars_, 1), b = *this;
    for (; e > 0; e >>= 1) {
      if (e & 1) r = r * b;
      if (e > 1) b = b * b;
    }
    return r;
  }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.terms_ == b.terms_; }

  /// Evaluate at ring elements (one per variable).
  RingElement evaluate(const std::vector<RingElement>& vals) const {
    const RingPtr& r = vals.at(0).ring();
    RingElement acc = RingElement::zero(r);
    const BigInt ch = r->characteristic();
    std::vector<std::map<int, RingElement>> cache(nvars_);
    auto power = [&](int v, int e) -> RingElement {
      auto it = cache[v].find(e);
      if (it != cache[v].end()) return it->second;
      RingElement x = vals[v].pow(static_cast<std::uint64_t>(e));
      cache[v].emplace(e, x);
      return x;
    };
    for (const auto& [e, c] : terms_) {
      BigInt cm = c % ch;
      if (cm < 0) cm += ch;
      RingElement term = RingElement::from_int(r, static_cast<i64>(cm));
      for (int v = 0; v < nvars_; ++v)
        if (e[v]) term = term * power(v, e[v]);
      acc = acc + term;
    }
    return acc;
  }

  static constexpr std::size_t kSizeCap = 400000;

 private:
  void add_term(const Monomial& e, const BigInt& c) {
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    } else if (c == 0) {
      terms_.erase(it);
    }
  }
  void check_cap() const {
    if (terms_.size() > kSizeCap) fail(ErrorKind::SizeCap, "universal polynomial exceeds monomial cap");
  }

  int nvars_ = 0;
  std::map<Monomial, BigInt> terms_;
};

class WittPolyTable {
 public:
  /// Memoized table; thread-safe.
  static std::shared_ptr<const WittPolyTable> get(int p, int m) {
    require(p == 2 || p == 3 || p == 5, ErrorKind::SizeCap, "WittPolyTable supports p in {2,3,5}");
    require(m >= 1 && m <= 4, ErrorKind::SizeCap, "WittPolyTable supports m <= 4");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const WittPolyTable>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = memo[{p, m}];
    if (!slot) slot = std::shared_ptr<const WittPolyTable>(new WittPolyTable(p, m));
    return slot;
  }

  int p() const noexcept { return p_; }
  int m() const noexcept { return m_; }
  const IntPoly& sum(int n) const { return S_.at(n); }
  const IntPoly& prod(int n) const { return P_.at(n); }
  int x_var(int i) const { return i; }
  int y_var(int i) const { return m_ + i; }

  /// w_n on the X (side = 0) or Y (side = 1) variables.
  IntPoly ghost_poly(int n, int side) const {
    IntPoly w(2 * m_);
    BigInt pi = 1;
    for (int i = 0; i <= n; ++i) {
      w = w + IntPoly::variable(2 * m_, side * m_ + i).pow(ipow(p_, n - i)).scaled(pi);
      pi *= p_;
    }
    return w;
  }
  /// w_n of a list of polynomials.
  IntPoly ghost_of(const std::vector<IntPoly>& a, int n) const {
    IntPoly w(2 * m_);
    BigInt pi = 1;
    for (int i = 0; i <= n; ++i) {
      w = w + a[i].pow(ipow(p_, n - i)).scaled(pi);
      pi *= p_;
    }
    return w;
  }

  WittVector evaluate_sum(const WittVector& x, const WittVector& y) const { return evaluate(S_, x, y); }
  WittVector evaluate_prod(const WittVector& x, const WittVector& y) const { return evaluate(P_, x, y); }

 private:
  static std::uint64_t ipow(int b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(b);
    return r;
  }

  WittPolyTable(int p, int m) : p_(p), m_(m) {
    for (int n = 0; n < m; ++n) {
      const IntPoly wx = ghost_poly(n, 0), wy = ghost_poly(n, 1);
      S_.push_back(solve(S_, wx + wy, n));
      P_.push_back(solve(P_, wx * wy, n));
    }
  }

  IntPoly solve(const std::vector<IntPoly>& prev, const IntPoly& target, int n) const {
    IntPoly acc = target;
    BigInt pi = 1;
    for (int i = 0; i < n; ++i) {
      acc = acc - prev[i].pow(ipow(p_, n - i)).scaled(pi);
      pi *= p_;
    }
    return acc.divided(pi);
  }

  WittVector evaluate(const std::vector<IntPoly>& polys, const WittVector& x, const WittVector& y) const {
    require_same_ring(x.ring(), y.ring());
    const int len = std::min({x.len(), y.len(), m_});
    require(x.ring()->p() == p_, ErrorKind::RingMismatch, "table prime differs from ring prime");
    std::vector<RingElement> vals;
    for (int i = 0; i < m_; ++i) vals.push_back(i < x.len() ? x[i] : RingElement::zero(x.ring()));
    for (int i = 0; i < m_; ++i) vals.push_back(i < y.len() ? y[i] : RingElement::zero(x.ring()));
    std::vector<RingElement> out;
    for (int n = 0; n < len; ++n) out.push_back(polys[n].evaluate(vals));
    return WittVector(x.ring(), std::move(out));
  }

  int p_, m_;
  std::vector<IntPoly> S_, P_;
};

}  // namespace wittkit
