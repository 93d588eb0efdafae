#pragma once

// Finite free graded W(R)^⊕-modules M = L ⊗_{S_0} S given by a normal
// decomposition L = ⊕ L_i. Each basis vector of L carries its weight; the
// basis need not be sorted (tensor products use Kronecker order).

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "wittkit/error.hpp"
#include "wittkit/frame.hpp"
#include "wittkit/matrix.hpp"

namespace wittkit {

class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(RingPtr ring, int m, std::vector<int> weights, int window = kDefaultDegreeWindow)
      : ring_(std::move(ring)), m_(m), w_(std::move(weights)) {
    require(m_ >= 1, ErrorKind::Usage, "truncation length must be positive");
    for (int w : w_)
      if (w < -window || w > window) fail(ErrorKind::DegreeViolation, "weight outside the frame window");
  }

  /// Decomposition weight -> rank, basis sorted by weight.
  static GradedModule from_ranks(const RingPtr& r, int m, const std::map<int, int>& ranks) {
    std::vector<int> w;
    for (const auto& [i, n] : ranks) {
      require(n >= 0, ErrorKind::Usage, "negative rank");
      w.insert(w.end(), n, i);
    }
    return GradedModule(r, m, std::move(w));
  }
  /// The unit object S.
  static GradedModule unit(const RingPtr& r, int m) { return GradedModule(r, m, {0}); }

  const RingPtr& ring() const noexcept { return ring_; }
  int m() const noexcept { return m_; }
  int rank() const noexcept { return static_cast<int>(w_.size()); }
  const std::vector<int>& weights() const noexcept { return w_; }
  int weight(int b) const { return w_.at(static_cast<std::size_t>(b)); }

  std::map<int, int> ranks() const {
    std::map<int, int> r;
    for (int w : w_) ++r[w];
    return r;
  }

  /// Type I: the sorted weight multiset (Spec R connected).
  std::vector<int> type() const {
    require_local();
    std::vector<int> t = w_;
    std::sort(t.begin(), t.end());
    return t;
  }
  int depth() const {
    require_local();
    require(!w_.empty(), ErrorKind::Usage, "depth of the zero module");
    return *std::min_element(w_.begin(), w_.end());
  }
  int altitude() const {
    require_local();
    require(!w_.empty(), ErrorKind::Usage, "altitude of the zero module");
    return *std::max_element(w_.begin(), w_.end());
  }

  /// Ranks of the graded R-module L̄ = ν(M): rank r_i in degree i.
  std::map<int, int> nu_reduce() const { return ranks(); }

  /// Permutation sorting the basis by weight (stable), and the sorted module.
  GradedModule canonical(std::vector<int>* perm = nullptr) const {
    std::vector<int> idx(w_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return w_[a] < w_[b]; });
    if (perm) *perm = idx;
    std::vector<int> w;
    for (int i : idx) w.push_back(w_[i]);
    return GradedModule(ring_, m_, std::move(w));
  }

  friend bool operator==(const GradedModule& a, const GradedModule& b) {
    return same_ring(a.ring_, b.ring_) && a.m_ == b.m_ && a.w_ == b.w_;
  }

  std::string describe() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [i, n] : ranks()) {
      os << (first ? "" : ", ") << i << ": " << n;
      first = false;
    }
    os << "}";
    return os.str();
  }

 private:
  void require_local() const {
    if (!ring_->is_local()) fail(ErrorKind::NonLocalRing, "type needs Spec R connected");
  }

  RingPtr ring_;
  int m_ = 1;
  std::vector<int> w_;
};

inline GradedModule mod_tensor(const GradedModule& a, const GradedModule& b) {
  require_same_ring(a.ring(), b.ring());
  std::vector<int> w;
  for (int i : a.weights())
    for (int j : b.weights()) w.push_back(i + j);
  return GradedModule(a.ring(), std::min(a.m(), b.m()), std::move(w));
}

inline GradedModule mod_dual(const GradedModule& a) {
  std::vector<int> w;
  for (int i : a.weights()) w.push_back(-i);
  return GradedModule(a.ring(), a.m(), std::move(w));
}

inline GradedModule mod_base_change(const GradedModule& a, const RingHom& h) {
  require_same_ring(a.ring(), h.source());
  return GradedModule(h.target(), a.m(), a.weights());
}

/// W_m(R) -> W_m(R') coordinatewise.
inline WittVector witt_base_change(const WittVector& x, const RingHom& h) {
  std::vector<RingElement> c;
  for (const auto& xi : x.coeffs()) c.push_back(h(xi));
  return WittVector(h.target(), std::move(c));
}

inline WMatrix wm_base_change(const WMatrix& a, const RingHom& h) {
  return a.map([&](const WittVector& x) { return witt_base_change(x, h); });
}

/// θ_n: M_n -> M^τ on the basis of L. image_level[b] = 0 means the b-th
/// coordinate of the image is all of W(R); k >= 1 means it is τ(S_k) = v(p^(k-1) W(R)).
struct ThetaInfo {
  bool is_isomorphism;
  std::vector<int> image_level;
};

inline ThetaInfo theta(const GradedModule& M, int n) {
  ThetaInfo info{true, {}};
  for (int w : M.weights()) {
    const int lvl = std::max(0, n - w);
    info.image_level.push_back(lvl);
    if (lvl > 0) info.is_isomorphism = false;
  }
  return info;
}

/// An element of M_n: coordinate b lies in S_{n - w_b}.
inline void require_homogeneous(const GradedModule& M, int n, const std::vector<FrameElement>& x) {
  require(static_cast<int>(x.size()) == M.rank(), ErrorKind::Usage, "element has wrong number of coordinates");
  for (int b = 0; b < M.rank(); ++b)
    if (x[b].deg != n - M.weight(b))
      fail(ErrorKind::DegreeViolation, "coordinate " + std::to_string(b) + " has degree " + std::to_string(x[b].deg) +
                                           ", expected " + std::to_string(n - M.weight(b)));
}

inline std::vector<WittVector> theta_apply(const GradedModule& M, int n, const std::vector<FrameElement>& x) {
  require_homogeneous(M, n, x);
  std::vector<WittVector> out;
  for (const auto& s : x) out.push_back(frame_tau(s));
  return out;
}

/// θ_n^{-1} for n <= d(M): c_b ↦ c_b·t^(w_b - n).
inline std::vector<FrameElement> theta_inverse(const GradedModule& M, int n, const std::vector<WittVector>& c) {
  require(theta(M, n).is_isomorphism, ErrorKind::Usage, "theta_n is not an isomorphism for n > d(M)");
  std::vector<FrameElement> x;
  for (int b = 0; b < M.rank(); ++b) x.emplace_back(n - M.weight(b), c[b]);
  return x;
}

/// A morphism of graded modules: entry (j, i) has degree w_src[i] - w_tgt[j].
struct GradedMorphism {
  GradedModule src, tgt;
  FMatrix h;
};

struct DegreeCheck {
  bool ok = true;
  int row = -1, col = -1;
  explicit operator bool() const { return ok; }
};

inline DegreeCheck morph_check(const GradedMorphism& f) {
  if (f.h.rows() != f.tgt.rank() || f.h.cols() != f.src.rank()) return {false, -1, -1};
  for (int j = 0; j < f.h.rows(); ++j)
    for (int i = 0; i < f.h.cols(); ++i)
      if (f.h(j, i).deg != f.src.weight(i) - f.tgt.weight(j)) return {false, j, i};
  return {};
}

inline void morph_validate(const GradedMorphism& f) {
  auto c = morph_check(f);
  if (!c.ok)
    fail(ErrorKind::DegreeViolation,
         "entry (" + std::to_string(c.row) + "," + std::to_string(c.col) + ") has the wrong degree or shape mismatch");
}

inline GradedMorphism morph_identity(const GradedModule& M) {
  return {M, M, fm_identity(M.ring(), M.m(), M.weights())};
}

/// h ∘ g.
inline GradedMorphism morph_compose(const GradedMorphism& h, const GradedMorphism& g) {
  require(h.src == g.tgt, ErrorKind::Usage, "morphisms are not composable");
  return {g.src, h.tgt, fm_mul(h.h, g.h)};
}

inline WMatrix morph_sigma(const GradedMorphism& f) { return fm_sigma(f.h); }
inline WMatrix morph_tau(const GradedMorphism& f) { return fm_tau(f.h); }

/// ψ(x) for x in M_n: coordinates in M'_n.
inline std::vector<FrameElement> morph_apply(const GradedMorphism& f, int n, const std::vector<FrameElement>& x) {
  require_homogeneous(f.src, n, x);
  std::vector<FrameElement> y;
  for (int j = 0; j < f.tgt.rank(); ++j) {
    FrameElement acc = FrameElement::zero(f.src.ring(), f.src.m(), n - f.tgt.weight(j));
    for (int i = 0; i < f.src.rank(); ++i) acc = frame_add(acc, frame_mul(f.h(j, i), x[i]));
    y.push_back(acc);
  }
  return y;
}

template <class Rng>
std::vector<FrameElement> random_homogeneous_element(const GradedModule& M, int n, Rng& rng) {
  std::vector<FrameElement> x;
  for (int b = 0; b < M.rank(); ++b) x.emplace_back(n - M.weight(b), witt_random(M.ring(), M.m(), rng));
  return x;
}

template <class Rng>
GradedMorphism random_morphism(const GradedModule& src, const GradedModule& tgt, Rng& rng) {
  return {src, tgt,
          FMatrix::from_fn(tgt.rank(), src.rank(), [&](int j, int i) {
            return FrameElement(src.weight(i) - tgt.weight(j), witt_random(src.ring(), src.m(), rng));
          })};
}

}  // namespace wittkit
