#pragma once

// The Witt frame W(R)^⊕ and a generic checker for frames in triple form.
//
// Homogeneous element of degree d with payload u:
//   d <= 0 :  u·t^(-d),   u in W(R) = S_0
//   d >= 1 :  v(u) in I_R = S_d   (the v-preimage u is stored)
// t_n: S_{n+1} -> S_n is multiplication by p for n >= 1 and the inclusion
// I_R -> W(R) for n = 0.

#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wittkit/error.hpp"
#include "wittkit/matrix.hpp"
#include "wittkit/witt.hpp"

namespace wittkit {

inline constexpr int kDefaultDegreeWindow = 8;

struct FrameElement {
  int deg = 0;
  WittVector u;

  FrameElement() = default;
  FrameElement(int d, WittVector payload, int window = kDefaultDegreeWindow) : deg(d), u(std::move(payload)) {
    if (d < -window || d > window)
      fail(ErrorKind::DegreeViolation, "degree " + std::to_string(d) + " outside the frame window");
  }

  static FrameElement zero(const RingPtr& r, int m, int d) { return FrameElement(d, WittVector::zero(r, m)); }
  static FrameElement one(const RingPtr& r, int m) { return FrameElement(0, WittVector::one(r, m)); }
  /// t in S_{-1}.
  static FrameElement t(const RingPtr& r, int m) { return FrameElement(-1, WittVector::one(r, m)); }
  /// v(u) in S_d, d >= 1.
  static FrameElement v(int d, WittVector u) {
    require(d >= 1, ErrorKind::DegreeViolation, "v-element needs degree >= 1");
    return FrameElement(d, std::move(u));
  }

  const RingPtr& ring() const { return u.ring(); }
  int len() const { return u.len(); }
  bool is_zero() const { return u.is_zero(); }
};

/// Stored-preimage equality (on the common certified prefix).
inline bool eq(const FrameElement& a, const FrameElement& b) { return a.deg == b.deg && eq_prefix(a.u, b.u); }

/// Equality of the truncated images: for d >= 1 compares v(u) in W_m(R), which
/// forgets the top coordinate of the preimage.
inline bool eq_as_image(const FrameElement& a, const FrameElement& b) {
  if (a.deg != b.deg) return false;
  if (a.deg <= 0) return eq_prefix(a.u, b.u);
  return eq_prefix(verschiebung(a.u), verschiebung(b.u));
}

inline std::ostream& operator<<(std::ostream& os, const FrameElement& a) {
  return os << "{deg " << a.deg << ": " << a.u << "}";
}

inline FrameElement frame_add(const FrameElement& a, const FrameElement& b) {
  if (a.deg != b.deg) fail(ErrorKind::DegreeViolation, "addition of different degrees");
  return FrameElement(a.deg, a.u + b.u);
}

inline FrameElement frame_neg(const FrameElement& a) { return FrameElement(a.deg, -a.u); }

inline FrameElement frame_sub(const FrameElement& a, const FrameElement& b) { return frame_add(a, frame_neg(b)); }

/// p^k·x in W_m(R).
inline WittVector witt_p_pow(const WittVector& x, int k) { return mul_p_pow(x, k); }

inline FrameElement frame_mul(const FrameElement& a, const FrameElement& b, int window = kDefaultDegreeWindow) {
  const int d = a.deg + b.deg;
  if (a.deg >= 1 && b.deg >= 1) return FrameElement(d, a.u * b.u, window);
  if (a.deg <= 0 && b.deg <= 0) return FrameElement(d, a.u * b.u, window);
  const FrameElement& neg = a.deg <= 0 ? a : b;  // u·t^k
  const FrameElement& pos = a.deg <= 0 ? b : a;  // v(w), degree >= 1
  const int k = -neg.deg;
  if (d >= 1) {
    // t^k lowers the degree by k through multiplications by p; the scalar acts by f
    return FrameElement(d, frobenius(neg.u) * witt_p_pow(pos.u, k), window);
  }
  // pass through degree 0: v(p^(deg-1) w) lands in W(R), then remaining t's are formal
  const WittVector image = verschiebung(witt_p_pow(pos.u, pos.deg - 1));
  return FrameElement(d, neg.u * image, window);
}

inline FrameElement frame_pow(const FrameElement& a, int e) {
  require(e >= 0, ErrorKind::Usage, "negative exponent");
  FrameElement r = FrameElement::one(a.ring(), a.len());
  for (int i = 0; i < e; ++i) r = frame_mul(r, a);
  return r;
}

/// σ: S_d -> S_0.
inline WittVector frame_sigma(const FrameElement& a) {
  if (a.deg >= 1) return a.u;
  return witt_p_pow(frobenius(a.u), -a.deg);
}

/// τ: S_d -> S_0.
inline WittVector frame_tau(const FrameElement& a) {
  if (a.deg <= 0) return a.u;
  return verschiebung(witt_p_pow(a.u, a.deg - 1));
}

/// The frame element of degree d whose τ-image is x, when one exists:
/// degree <= 0 always; degree n >= 1 needs x = v(p^(n-1) w), solved over perfect fields.
inline std::optional<FrameElement> frame_tau_preimage(const WittVector& x, int d) {
  if (d <= 0) return FrameElement(d, x);
  if (!in_IR(x)) return std::nullopt;
  WittVector w = v_preimage(x).value.truncate(x.len() - 1);
  if (d == 1) return FrameElement(1, w);
  if (!x.ring()->is_perfect_char_p()) return std::nullopt;
  for (int i = 0; i < d - 1 && i < w.len(); ++i)
    if (!w[i].is_zero()) return std::nullopt;
  if (d - 1 >= w.len()) fail(ErrorKind::PrecisionExhausted, "preimage has no certified coordinates");
  return FrameElement(d, div_p_pow(w, d - 1));
}

using FMatrix = Matrix<FrameElement>;

inline WMatrix fm_sigma(const FMatrix& h) { return h.map([](const FrameElement& x) { return frame_sigma(x); }); }
inline WMatrix fm_tau(const FMatrix& h) { return h.map([](const FrameElement& x) { return frame_tau(x); }); }

/// Product of frame matrices; the (i,j) entry must come out homogeneous.
inline FMatrix fm_mul(const FMatrix& a, const FMatrix& b) {
  require(a.cols() == b.rows() && a.cols() > 0, ErrorKind::Usage, "matrix shape mismatch");
  return FMatrix::from_fn(a.rows(), b.cols(), [&](int i, int j) {
    FrameElement acc = frame_mul(a(i, 0), b(0, j));
    for (int k = 1; k < a.cols(); ++k) acc = frame_add(acc, frame_mul(a(i, k), b(k, j)));
    return acc;
  });
}

inline bool fm_eq(const FMatrix& a, const FMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!eq(a(i, j), b(i, j))) return false;
  return true;
}

inline FMatrix fm_kron(const FMatrix& a, const FMatrix& b) {
  return FMatrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), [&](int i, int j) {
    return frame_mul(a(i / b.rows(), j / b.cols()), b(i % b.rows(), j % b.cols()));
  });
}

/// Frame matrix with entry degrees w_src[j] - w_tgt[i] built from payloads.
inline FMatrix fm_from_payloads(const WMatrix& payload, const std::vector<int>& w_src, const std::vector<int>& w_tgt) {
  return FMatrix::from_fn(payload.rows(), payload.cols(),
                          [&](int i, int j) { return FrameElement(w_src[j] - w_tgt[i], payload(i, j)); });
}

inline FMatrix fm_identity(const RingPtr& r, int m, const std::vector<int>& w) {
  const int n = static_cast<int>(w.size());
  return FMatrix::from_fn(n, n, [&](int i, int j) {
    return i == j ? FrameElement::one(r, m) : FrameElement::zero(r, m, w[j] - w[i]);
  });
}

// ---------------------------------------------------------------------------
// Frames in triple form
// ---------------------------------------------------------------------------

/// A frame presented as (⊕_{n>=0} S_n, σ, {t_n}); negative degrees are
/// S_{-n} = S_0·t^n and are passed as their S_0-coefficient.
template <class E>
struct FrameSpec {
  std::string name;
  int p = 2;
  std::function<E(int n, std::mt19937_64&)> sample;        // random element of S_n, n >= 0
  std::function<E(int n, const E&, int k, const E&)> mul;  // S_n × S_k -> S_{n+k}, n, k >= 0
  std::function<E(int n, const E&, const E&)> add;         // in S_n
  std::function<bool(int n, const E&, const E&)> eq;       // in S_n
  std::function<E(int n, const E&)> sigma;                 // σ_n: S_n -> S_0
  std::function<E(int n, const E&)> t;                     // t_n: S_{n+1} -> S_n
  std::function<E(i64)> from_int;                          // Z -> S_0
  std::function<bool(const E&)> is_unit;                   // in S_0
  /// claimed δ with σ_0(s) = s^p + p·δ; the checker verifies the claim
  std::function<std::optional<E>(const E&)> frobenius_defect;
  /// σ_{-n}(u·t^n) and τ_{-n}(u·t^n); when unset the triple-form formulas
  /// p^n·σ_0(u) and u are used
  std::function<E(int n, const E&)> sigma_neg;
  std::function<E(int n, const E&)> tau_neg;
};

struct AxiomResult {
  std::string axiom;
  bool passed = true;
  int samples = 0;
  std::string witness;
};

struct FrameCheckReport {
  std::string frame;
  std::vector<AxiomResult> axioms;
  bool all_pass() const {
    for (const auto& a : axioms)
      if (!a.passed) return false;
    return true;
  }
  const AxiomResult* find(const std::string& name) const {
    for (const auto& a : axioms)
      if (a.axiom == name) return &a;
    return nullptr;
  }
};

namespace axioms {
inline const std::string kTau0 = "tau_0 = id";
inline const std::string kTauNeg = "tau_-n bijective";
inline const std::string kFrobCongruence = "sigma_0(s) = s^p mod p";
inline const std::string kSigmaT = "sigma_-1(t) = p";
inline const std::string kSigmaTn = "sigma_n(t_n(a)) = p sigma_n+1(a)";
inline const std::string kTnLinear = "t_n is S_>=0-linear";
inline const std::string kSigmaMult = "sigma multiplicative";
inline const std::string kRadical = "p in Rad(S_0)";
}  // namespace axioms

template <class E>
FrameCheckReport frame_check(const FrameSpec<E>& spec, int samples, std::uint64_t seed = 1, int max_degree = 3) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> deg(0, max_degree);
  FrameCheckReport rep;
  rep.frame = spec.name;

  const E p = spec.from_int(spec.p);
  auto sigma_neg = spec.sigma_neg ? spec.sigma_neg : [&](int n, const E& u) {
    E r = spec.sigma(0, u);
    for (int i = 0; i < n; ++i) r = spec.mul(0, p, 0, r);
    return r;
  };
  auto tau_neg = spec.tau_neg ? spec.tau_neg : [](int, const E& u) { return u; };
  auto p_power = [&](const E& s) {
    E r = s;
    for (int i = 1; i < spec.p; ++i) r = spec.mul(0, r, 0, s);
    return r;
  };

  auto run = [&](const std::string& name, auto&& body) {
    AxiomResult res{name, true, 0, {}};
    for (int s = 0; s < samples && res.passed; ++s) {
      std::string w;
      try {
        if (!body(w)) {
          res.passed = false;
          res.witness = w.empty() ? "sample " + std::to_string(s) : w;
        }
      } catch (const Error& e) {
        // exhausted precision certifies nothing either way
        if (!e.is_precision()) {
          res.passed = false;
          res.witness = e.what();
        }
      }
      ++res.samples;
    }
    rep.axioms.push_back(std::move(res));
  };

  run(axioms::kTau0, [&](std::string&) {
    E s = spec.sample(0, rng);
    return spec.eq(0, tau_neg(0, s), s);
  });
  run(axioms::kTauNeg, [&](std::string& w) {
    const int n = 1 + deg(rng) % 3;
    E x = spec.sample(0, rng), y = spec.sample(0, rng);
    const bool injective = !spec.eq(0, tau_neg(n, x), tau_neg(n, y)) || spec.eq(0, x, y);
    const bool hits = spec.eq(0, tau_neg(n, x), x);
    if (!(injective && hits)) w = "tau_-" + std::to_string(n) + " fails on a sample";
    return injective && hits;
  });
  run(axioms::kFrobCongruence, [&](std::string& w) {
    E s = spec.sample(0, rng);
    auto delta = spec.frobenius_defect(s);
    if (!delta) {
      w = "no witness that sigma_0(s) - s^p is divisible by p";
      return false;
    }
    if (spec.eq(0, spec.sigma(0, s), spec.add(0, p_power(s), spec.mul(0, p, 0, *delta)))) return true;
    w = "claimed witness does not satisfy sigma_0(s) = s^p + p delta";
    return false;
  });
  run(axioms::kSigmaT, [&](std::string& w) {
    if (spec.eq(0, sigma_neg(1, spec.from_int(1)), p)) return true;
    w = "sigma_-1(t) differs from p";
    return false;
  });
  run(axioms::kSigmaTn, [&](std::string& w) {
    const int n = deg(rng);
    E a = spec.sample(n + 1, rng);
    E lhs = spec.sigma(n, spec.t(n, a));
    E rhs = spec.mul(0, p, 0, spec.sigma(n + 1, a));
    if (spec.eq(0, lhs, rhs)) return true;
    w = "n = " + std::to_string(n);
    return false;
  });
  run(axioms::kTnLinear, [&](std::string& w) {
    const int n = deg(rng), k = deg(rng);
    E s = spec.sample(k, rng), a = spec.sample(n + 1, rng);
    E lhs = spec.t(n + k, spec.mul(k, s, n + 1, a));
    E rhs = spec.mul(k, s, n, spec.t(n, a));
    if (spec.eq(n + k, lhs, rhs)) return true;
    w = "n = " + std::to_string(n) + ", k = " + std::to_string(k);
    return false;
  });
  run(axioms::kSigmaMult, [&](std::string& w) {
    const int n = deg(rng), k = deg(rng);
    E a = spec.sample(n, rng), b = spec.sample(k, rng);
    if (spec.eq(0, spec.sigma(n + k, spec.mul(n, a, k, b)), spec.mul(0, spec.sigma(n, a), 0, spec.sigma(k, b))))
      return true;
    w = "n = " + std::to_string(n) + ", k = " + std::to_string(k);
    return false;
  });
  run(axioms::kRadical, [&](std::string& w) {
    E x = spec.sample(0, rng);
    if (spec.is_unit(spec.add(0, spec.from_int(1), spec.mul(0, p, 0, x)))) return true;
    w = "1 + p x is not a unit";
    return false;
  });
  return rep;
}

/// (f(s) - s^p)/p computed on the lift ring through ghost components, then reduced.
inline WittVector witt_frobenius_defect(const WittVector& s) {
  const RingPtr& rp = s.ring();
  const Ring& r = *rp;
  const int m = s.len();
  if (m < 2) fail(ErrorKind::PrecisionExhausted, "defect needs length at least 2");
  const int len = m - 1;
  const i64 M = detail::witt_modulus(r, m);
  const auto w = detail::ghost_lifts(r, s.coeffs(), m, M);
  const i64 M2 = detail::witt_modulus(r, len);
  std::vector<detail::Lift> g(len, detail::Lift(r.dim(), 0));
  for (int n = 0; n < len; ++n) {
    // w_n(s^p) = w_n(s)^p, w_n(f(s)) = w_{n+1}(s)
    const auto wp = detail::lift_pow(r, w[n], static_cast<std::uint64_t>(r.p()), M);
    for (int k = 0; k < r.dim(); ++k) {
      const i64 diff = mod_reduce(i128{w[n + 1][k]} - wp[k], M);
      if (diff % r.p() != 0) fail(ErrorKind::InexactDivision, "f(s) - s^p not divisible by p");
      g[n][k] = mod_reduce(diff / r.p(), M2);
    }
  }
  return WittVector(rp, detail::unghost(rp, g, len, M2));
}

/// The Witt frame in triple form (degrees >= 0 carry FrameElements).
inline FrameSpec<FrameElement> witt_frame_spec(const RingPtr& r, int m) {
  FrameSpec<FrameElement> s;
  s.name = "Witt frame over " + r->name() + ", m = " + std::to_string(m);
  s.p = r->p();
  s.sample = [r, m](int n, std::mt19937_64& rng) { return FrameElement(n, witt_random(r, m, rng)); };
  s.mul = [](int, const FrameElement& a, int, const FrameElement& b) { return frame_mul(a, b); };
  s.add = [](int, const FrameElement& a, const FrameElement& b) { return frame_add(a, b); };
  s.eq = [](int, const FrameElement& a, const FrameElement& b) { return eq(a, b); };
  s.sigma = [](int, const FrameElement& a) { return FrameElement(0, frame_sigma(a)); };
  s.t = [r, m](int, const FrameElement& a) { return frame_mul(FrameElement::t(r, m), a); };
  s.from_int = [r, m](i64 k) { return FrameElement(0, WittVector::from_int(r, m, k)); };
  s.is_unit = [](const FrameElement& a) { return a.u.is_unit(); };
  s.frobenius_defect = [](const FrameElement& a) -> std::optional<FrameElement> {
    return FrameElement(0, witt_frobenius_defect(a.u));
  };
  s.sigma_neg = [](int n, const FrameElement& u) { return FrameElement(0, frame_sigma(FrameElement(-n, u.u))); };
  s.tau_neg = [](int n, const FrameElement& u) { return FrameElement(0, frame_tau(FrameElement(-n, u.u))); };
  return s;
}

/// The Witt frame with every t_n replaced by the identity map S_{n+1} -> S_n;
/// violates σ_n∘t_n = p·σ_{n+1}.
inline FrameSpec<FrameElement> broken_witt_frame_spec(const RingPtr& r, int m) {
  auto s = witt_frame_spec(r, m);
  s.name = "Witt frame with t_n = id over " + r->name();
  s.t = [](int n, const FrameElement& a) { return FrameElement(n, a.u); };
  return s;
}

}  // namespace wittkit
