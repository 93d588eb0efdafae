#pragma once

// The display group L⁺_μGL_n for diagonal μ_I: frame matrices h whose entry
// (j,k) has degree i_k - i_j and whose τ(h) is invertible. Acts on GL_n(W(R))
// by U·h = τ(h)^(-1)·U·σ(h).

#include <algorithm>
#include <exception>
#include <map>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wittkit/display.hpp"
#include "wittkit/error.hpp"
#include "wittkit/frame.hpp"
#include "wittkit/graded.hpp"

namespace wittkit {

using Cocharacter = std::vector<int>;

inline Cocharacter cocharacter(std::vector<int> I) {
  require(std::is_sorted(I.begin(), I.end()), ErrorKind::Usage, "cocharacter weights must be sorted");
  return I;
}

/// μ(p) = diag(p^(i_1), ..., p^(i_n)) for I >= 0.
inline WMatrix mu_of_p(const RingPtr& r, int m, const Cocharacter& I) { return p_power_diag(r, m, I); }

struct MembershipResult {
  bool ok = true;
  int row = -1, col = -1;
  std::string reason;
  explicit operator bool() const { return ok; }
};

inline MembershipResult dg_membership(const FMatrix& h, const Cocharacter& I) {
  const int n = static_cast<int>(I.size());
  if (h.rows() != n || h.cols() != n) return {false, -1, -1, "shape does not match the cocharacter"};
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (h(j, k).deg != I[k] - I[j])
        return {false, j, k,
                "entry (" + std::to_string(j) + "," + std::to_string(k) + ") has degree " +
                    std::to_string(h(j, k).deg) + ", expected " + std::to_string(I[k] - I[j])};
  if (n > 0 && !wm_is_invertible(fm_tau(h))) return {false, -1, -1, "tau(h) is not invertible"};
  return {};
}

inline void dg_require(const FMatrix& h, const Cocharacter& I) {
  auto res = dg_membership(h, I);
  if (!res) fail(ErrorKind::DegreeViolation, res.reason);
}

inline WMatrix dg_sigma(const FMatrix& h) { return fm_sigma(h); }
inline WMatrix dg_tau(const FMatrix& h) { return fm_tau(h); }
inline FMatrix dg_mul(const FMatrix& a, const FMatrix& b) { return fm_mul(a, b); }

inline FMatrix dg_identity(const RingPtr& r, int m, const Cocharacter& I) { return fm_identity(r, m, I); }

/// Determinant of a square frame matrix with homogeneous entries, by permutation expansion.
inline FrameElement fm_det(const FMatrix& h) {
  const int n = h.rows();
  require(h.square() && n > 0 && n <= 7, ErrorKind::SizeCap, "frame determinant limited to rank 7");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<FrameElement> acc;
  do {
    FrameElement term = h(0, perm[0]);
    for (int j = 1; j < n; ++j) term = frame_mul(term, h(j, perm[j]));
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    if (inversions % 2) term = frame_neg(term);
    acc = acc ? frame_add(*acc, term) : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *acc;
}

/// h^(-1) = det(h)^(-1)·adj(h) inside the graded ring.
inline FMatrix dg_inverse(const FMatrix& h) {
  const int n = h.rows();
  const FrameElement d = fm_det(h);
  require(d.deg == 0, ErrorKind::DegreeViolation, "determinant is not homogeneous of degree 0");
  if (!d.u.is_unit()) fail(ErrorKind::NotInvertible, "h is not invertible");
  const FrameElement dinv(0, d.u.inv());
  if (n == 1) return FMatrix::from_fn(1, 1, [&](int, int) { return dinv; });
  return FMatrix::from_fn(n, n, [&](int k, int j) {
    auto minor = FMatrix::from_fn(n - 1, n - 1, [&](int a, int b) { return h(a < j ? a : a + 1, b < k ? b : b + 1); });
    FrameElement c = frame_mul(dinv, fm_det(minor));
    return ((j + k) % 2) ? frame_neg(c) : c;
  });
}

inline WMatrix dg_action(const WMatrix& U, const FMatrix& h) { return wm_inverse(dg_tau(h)) * U * dg_sigma(h); }

inline Display banal_display(const WMatrix& U, const Cocharacter& I) {
  require(U.rows() == static_cast<int>(I.size()), ErrorKind::Usage, "U does not match the cocharacter");
  if (!wm_is_invertible(U)) fail(ErrorKind::NotInvertible, "U is not invertible");
  const RingPtr& r = U(0, 0).ring();
  return Display{GradedModule(r, wm_len(U), I), U};
}

/// Ψ(h): D_{U·h} -> D_U.
inline GradedMorphism dg_morphism(const FMatrix& h, const Display& src, const Display& tgt) { return {src.L, tgt.L, h}; }

/// σ(h)·μ(p) = μ(p)·f(τ(h)), the integral form of σ(h) = μ^σ(p) f(τ(h)) μ^σ(p)^(-1).
inline bool dg_conjugation_identity(const FMatrix& h, const Cocharacter& I) {
  const RingPtr& r = h(0, 0).u.ring();
  const int m = std::min(wm_len(fm_sigma(h)), wm_len(fm_tau(h)));
  const int shift = I.empty() ? 0 : I.front();
  std::vector<int> rel;
  for (int i : I) rel.push_back(i - shift);
  const WMatrix mu = mu_of_p(r, m, rel);
  return wm_eq(dg_sigma(h) * mu, mu * wm_frobenius(dg_tau(h)));
}

// --- grading preservation on induced representations ------------------------

enum class Construction { Standard, TensorSquare, Dual };

inline MembershipResult grading_preservation_check(const FMatrix& h, const Cocharacter& I, Construction c) {
  switch (c) {
    case Construction::Standard:
      return dg_membership(h, I);
    case Construction::TensorSquare: {
      const int n = h.rows();
      if (h.cols() != n || static_cast<int>(I.size()) != n) return {false, -1, -1, "shape mismatch"};
      std::vector<int> w;
      for (int a : I)
        for (int b : I) w.push_back(a + b);
      const FMatrix hh = fm_kron(h, h);
      GradedModule T(h(0, 0).u.ring(), h(0, 0).u.len(), w, 2 * kDefaultDegreeWindow);
      auto res = morph_check({T, T, hh});
      if (!res.ok) return {false, res.row, res.col, "tensor-square entry has the wrong degree"};
      return {};
    }
    case Construction::Dual: {
      if (!dg_membership(h, I)) return dg_membership(h, I);
      const FMatrix inv = dg_inverse(h);
      const FMatrix dual = inv.transpose();
      std::vector<int> w;
      for (int a : I) w.push_back(-a);
      GradedModule Dm(h(0, 0).u.ring(), h(0, 0).u.len(), w);
      auto res = morph_check({Dm, Dm, dual});
      if (!res.ok) return {false, res.row, res.col, "dual entry has the wrong degree"};
      return {};
    }
  }
  return {};
}

// --- enumeration over tiny rings ---------------------------------------------

/// All members of L⁺_μGL_n(W_m(R)), in canonical order.
inline std::vector<FMatrix> dg_enumerate(const RingPtr& r, int m, const Cocharacter& I, i64 cap = kDefaultEnumerationCap) {
  const int n = static_cast<int>(I.size());
  const auto W = witt_enumerate(r, m, cap);
  const i64 q = static_cast<i64>(W.size());
  i128 total = 1;
  for (int i = 0; i < n * n; ++i) {
    total *= q;
    if (total > cap) fail(ErrorKind::SizeCap, "display group is too large to enumerate");
  }
  std::vector<FMatrix> out;
  for (i64 code = 0; code < static_cast<i64>(total); ++code) {
    i64 c = code;
    FMatrix h(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        h(j, k) = FrameElement(I[k] - I[j], W[c % q]);
        c /= q;
      }
    if (dg_membership(h, I)) out.push_back(std::move(h));
  }
  return out;
}

/// GL_n(W_m(R)) in canonical order.
inline std::vector<WMatrix> gl_enumerate(const RingPtr& r, int m, int n, i64 cap = kDefaultEnumerationCap) {
  const auto W = witt_enumerate(r, m, cap);
  const i64 q = static_cast<i64>(W.size());
  i128 total = 1;
  for (int i = 0; i < n * n; ++i) {
    total *= q;
    if (total > cap) fail(ErrorKind::SizeCap, "GL_n is too large to enumerate");
  }
  std::vector<WMatrix> out;
  for (i64 code = 0; code < static_cast<i64>(total); ++code) {
    i64 c = code;
    WMatrix U(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        U(j, k) = W[c % q];
        c /= q;
      }
    if (wm_is_invertible(U)) out.push_back(std::move(U));
  }
  return out;
}

/// Exact key of a matrix over W_m(R), for hashing and ordering.
inline std::vector<i64> wm_key(const WMatrix& a) {
  std::vector<i64> k;
  for (const auto& x : a.data())
    for (const auto& c : x.coeffs())
      for (i64 v : c.coeffs()) k.push_back(v);
  return k;
}

/// Hom(U, U') = { h : τ(h)^(-1)·U'·σ(h) = U }, scanning the given members.
inline std::vector<FMatrix> hom_set(const WMatrix& U, const WMatrix& Up, const std::vector<FMatrix>& members) {
  std::vector<FMatrix> out;
  for (const auto& h : members)
    if (wm_eq(dg_action(Up, h), U)) out.push_back(h);
  return out;
}

template <class F>
void parallel_for(int count, int threads, F body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < count; i += threads) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct OrbitPartition {
  std::vector<int> orbit_of;  // index into the input list -> orbit id (canonical: by first member)
  int count = 0;
};

/// Orbits of the action on a finite invariant set of U's, by union-find.
inline OrbitPartition dg_orbits(const std::vector<WMatrix>& Us, const std::vector<FMatrix>& members, int threads = 1) {
  std::map<std::vector<i64>, int> index;
  for (int i = 0; i < static_cast<int>(Us.size()); ++i) index[wm_key(Us[i])] = i;
  std::vector<std::vector<int>> images(Us.size());
  parallel_for(static_cast<int>(Us.size()), threads, [&](int i) {
    for (const auto& h : members) {
      auto it = index.find(wm_key(dg_action(Us[i], h)));
      images[i].push_back(it == index.end() ? -1 : it->second);
    }
  });
  for (const auto& im : images)
    if (std::find(im.begin(), im.end(), -1) != im.end())
      fail(ErrorKind::Usage, "the set of U is not stable under the action");
  std::vector<int> parent(Us.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int i = 0; i < static_cast<int>(Us.size()); ++i)
    for (int j : images[i]) {
      const int a = find(i), b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  OrbitPartition P;
  std::map<int, int> id;
  for (int i = 0; i < static_cast<int>(Us.size()); ++i) {
    const int root = find(i);
    auto [it, fresh] = id.emplace(root, P.count);
    if (fresh) ++P.count;
    P.orbit_of.push_back(it->second);
  }
  return P;
}

/// Isomorphism classes of banal displays by hom-set reachability.
inline OrbitPartition dg_iso_classes(const std::vector<WMatrix>& Us, const std::vector<FMatrix>& members) {
  OrbitPartition P;
  P.orbit_of.assign(Us.size(), -1);
  for (std::size_t i = 0; i < Us.size(); ++i) {
    if (P.orbit_of[i] >= 0) continue;
    P.orbit_of[i] = P.count;
    for (std::size_t j = i + 1; j < Us.size(); ++j)
      if (P.orbit_of[j] < 0) {
        for (const auto& h : members)
          if (wm_eq(dg_action(Us[j], h), Us[i])) {
            P.orbit_of[j] = P.count;
            break;
          }
      }
    ++P.count;
  }
  return P;
}

template <class Rng>
FMatrix dg_random(const RingPtr& r, int m, const Cocharacter& I, Rng& rng) {
  const int n = static_cast<int>(I.size());
  for (;;) {
    auto h = FMatrix::from_fn(n, n, [&](int j, int k) { return FrameElement(I[k] - I[j], witt_random(r, m, rng)); });
    if (dg_membership(h, I)) return h;
  }
}

}  // namespace wittkit
