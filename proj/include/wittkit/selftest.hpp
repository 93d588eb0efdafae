#pragma once

// The acceptance suite: twelve criteria, each a seeded randomized or
// exhaustive check returning pass/fail plus a one-line detail.

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wittkit/dg.hpp"
#include "wittkit/el.hpp"
#include "wittkit/frame.hpp"
#include "wittkit/iso.hpp"
#include "wittkit/rz.hpp"
#include "wittkit/witt_poly.hpp"
#include "wittkit/zink.hpp"

namespace wittkit::selftest {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

struct Options {
  std::uint64_t seed = 20240601;
  int threads = 2;
};

namespace detail {

using Rng = std::mt19937_64;

inline std::vector<RingPtr> supported_rings(int p) {
  return {Ring::zmod(p, 3), Ring::zmod(p, 1), Ring::galois_field(p, 2), Ring::dual(p, 1)};
}

inline std::vector<RingPtr> all_supported() {
  auto a = supported_rings(2), b = supported_rings(3);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline std::string fmt(const std::string& s, i64 n) { return s + "=" + std::to_string(n); }

template <class F>
Outcome guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

// ---------------------------------------------------------------------------

inline Outcome witt_oracle(Rng& rng) {
  i64 pairs = 0;
  for (int p : {2, 3})
    for (int m = 1; m <= 3; ++m) {
      auto t = WittPolyTable::get(p, m);
      for (const auto& r : supported_rings(p))
        for (int k = 0; k < 500; ++k) {
          auto x = witt_random(r, m, rng), y = witt_random(r, m, rng);
          if (!(x + y == t->evaluate_sum(x, y)) || !(x * y == t->evaluate_prod(x, y))) {
            std::ostringstream os;
            os << "mismatch over " << r->name() << " m=" << m << " x=" << x << " y=" << y;
            return {false, os.str()};
          }
          ++pairs;
        }
    }
  return {true, fmt("pairs", pairs)};
}

inline Outcome frame_axioms(Rng& rng) {
  int rings = 0;
  for (const auto& r : all_supported()) {
    auto rep = frame_check(witt_frame_spec(r, 3), 200, rng());
    for (const auto& a : rep.axioms)
      if (!a.passed) return {false, rep.frame + ": " + a.axiom + " fails: " + a.witness};
    for (const auto* name : {&axioms::kSigmaT, &axioms::kSigmaTn})
      if (!rep.find(*name)) return {false, "axiom not checked: " + *name};
    ++rings;
  }
  return {true, fmt("rings", rings) + " samples=200"};
}

inline Outcome witt_identities(Rng& rng) {
  i64 failures = 0, checks = 0;
  std::string first;
  for (const auto& r : all_supported()) {
    const int p = r->p();
    for (int k = 0; k < 200; ++k) {
      auto x = witt_random(r, 3, rng), y = witt_random(r, 3, rng);
      auto a = ring_random(r, rng), b = ring_random(r, rng);
      const bool ok[] = {
          eq_prefix(frobenius(verschiebung(x)), x.scale(p)),
          eq_prefix(x * verschiebung(y), verschiebung(frobenius(x) * y)),
          eq_prefix(frobenius(x), x.pow(static_cast<std::uint64_t>(p)) + witt_frobenius_defect(x).scale(p)),
          teichmuller(a, 3) * teichmuller(b, 3) == teichmuller(a * b, 3),
      };
      const char* names[] = {"f(v(x)) = px", "x v(y) = v(f(x) y)", "f(x) = x^p mod p", "[a][b] = [ab]"};
      for (int i = 0; i < 4; ++i) {
        ++checks;
        if (!ok[i]) {
          ++failures;
          if (first.empty()) first = std::string(names[i]) + " over " + r->name();
        }
      }
    }
  }
  if (failures) return {false, fmt("failures", failures) + " first: " + first};
  return {true, fmt("checks", checks)};
}

inline Outcome zink_round_trip(Rng& rng) {
  int n_ok = 0;
  for (const auto& r : all_supported())
    for (int k = 0; k < 100; ++k) {
      const int n = 1 + static_cast<int>(rng() % 3);
      std::vector<int> w;
      for (int i = 0; i < n; ++i) w.push_back(static_cast<int>(rng() % 2));
      w[rng() % n] = 1;  // altitude 1
      auto D = random_display(GradedModule(r, 3, w), rng);
      if (!display_is_n(D, 1)) return {false, "generator produced a non-1-display"};
      auto Z = zink_from_display(D);
      if (!display_equal(zink_to_display(Z), D)) return {false, "round trip differs over " + r->name()};
      ++n_ok;
    }
  return {true, fmt("displays", n_ok)};
}

inline Outcome vsharp(Rng& rng) {
  int sampled = 0;
  for (const auto& r : all_supported())
    for (int k = 0; k < 10; ++k) {
      const int n = 1 + static_cast<int>(rng() % 3);
      std::vector<int> w;
      for (int i = 0; i < n; ++i) w.push_back(static_cast<int>(rng() % 2));
      auto Z = zink_from_display(random_display(GradedModule(r, 3, w), rng));
      if (!v_sharp_relations_hold(Z, v_sharp(Z), 5, rng)) return {false, "relation fails over " + r->name()};
      sampled += 5;
    }
  int cases = 0;
  for (const auto& r : all_supported())
    for (int n = 1; n <= 3; ++n) {
      auto Z0 = zink_from_display(random_display(GradedModule(r, 3, std::vector<int>(n, 0)), rng));
      if (!zink_is_nilpotent(Z0).nilpotent) return {false, "L1 = 0 not nilpotent over " + r->name()};
      auto Z1 = zink_from_display(display_validate(GradedModule(r, 3, std::vector<int>(n, 1)), wm_identity(r, n, 3)));
      if (zink_is_nilpotent(Z1).nilpotent) return {false, "L0 = 0, Phi = id nilpotent over " + r->name()};
      cases += 2;
    }
  return {true, fmt("samples", sampled) + " " + fmt("nilpotence_cases", cases)};
}

inline Outcome dg_exhaustive(int threads) {
  auto r = Ring::zmod(2, 1);
  const Cocharacter I{1, 2};
  auto members = dg_enumerate(r, 2, I);
  std::set<std::vector<i64>> keys;
  auto key = [](const FMatrix& h) {
    std::vector<i64> k;
    for (const auto& x : h.data()) {
      k.push_back(x.deg);
      for (const auto& c : x.u.coeffs()) k.push_back(c.coeffs()[0]);
    }
    return k;
  };
  for (const auto& h : members) keys.insert(key(h));
  for (const auto& a : members) {
    if (!keys.count(key(dg_inverse(a)))) return {false, "not closed under inverse"};
    for (const auto& b : members)
      if (!keys.count(key(dg_mul(a, b)))) return {false, "not closed under multiplication"};
    for (auto c : {Construction::Standard, Construction::TensorSquare, Construction::Dual})
      if (!grading_preservation_check(a, I, c)) return {false, "grading preservation fails"};
  }
  auto Us = gl_enumerate(r, 2, 2);
  auto orbits = dg_orbits(Us, members, threads);
  auto classes = dg_iso_classes(Us, members);
  if (orbits.count != classes.count || orbits.orbit_of != classes.orbit_of)
    return {false, fmt("orbits", orbits.count) + " " + fmt("hom_classes", classes.count)};
  return {true, fmt("members", static_cast<i64>(members.size())) + " " + fmt("GL2", static_cast<i64>(Us.size())) + " " +
                    fmt("orbits", orbits.count)};
}

inline Outcome action_morphism(Rng& rng) {
  const std::vector<RingPtr> rings{Ring::zmod(2, 1), Ring::zmod(3, 1), Ring::zmod(2, 2), Ring::galois_field(2, 2),
                                   Ring::dual(2, 1)};
  const std::vector<Cocharacter> mus{{0, 1}, {0, 0, 1}, {0, 1, 1}, {1, 2}};
  for (int k = 0; k < 200; ++k) {
    const auto& r = rings[rng() % rings.size()];
    const auto& I = mus[rng() % mus.size()];
    const int n = static_cast<int>(I.size());
    auto U = wm_random_invertible(r, n, 3, rng);
    auto h = dg_random(r, 3, I, rng);
    auto D = banal_display(dg_action(U, h), I), Dp = banal_display(U, I);
    if (!display_morphism_check(dg_morphism(h, D, Dp), D, Dp)) return {false, "Psi(h) fails over " + r->name()};
  }
  return {true, fmt("pairs", 200)};
}

inline QMatrix qint(const RingPtr& r, int m, const std::vector<std::vector<i64>>& a, int e = 0) {
  return QMatrix{e, wm_from_ints(r, m, a)};
}

inline Outcome rz_action_pairs(Rng& rng) {
  const std::vector<RingPtr> rings{Ring::zmod(2, 1), Ring::galois_field(2, 2), Ring::zmod(3, 1)};
  int tested = 0, attempts = 0, precision_skips = 0;
  while (tested < 200) {
    if (++attempts > 20000) return {false, "could not sample enough points"};
    const auto& r = rings[rng() % rings.size()];
    const int p = r->p();
    const bool swap = rng() % 2;
    auto F = validate_framing({0, 1}, swap ? qint(r, 6, {{0, p}, {1, 0}}) : qint(r, 6, {{1, 0}, {0, p}}));
    QMatrix g0{static_cast<int>(rng() % 2), wm_random_invertible(r, 2, 6, rng)};
    std::optional<RZPoint> pt;
    try {
      pt = rz_membership(F, g0);
    } catch (const Error& e) {
      if (!e.is_precision()) throw;
      ++precision_skips;
      continue;
    }
    if (!pt) continue;
    auto h = dg_random(r, 6, F.I, rng);
    auto moved = rz_action(F, *pt, h);  // throws if the fiber equation fails
    if (!rz_fiber_equation(F, moved)) return {false, "fiber equation fails after the action"};
    if (!dg_conjugation_identity(h, F.I)) return {false, "sigma(h) mu(p) = mu(p) f(tau(h)) fails"};
    ++tested;
  }
  return {true, fmt("pairs", tested) + " " + fmt("precision_skips", precision_skips)};
}

inline Outcome iso_slopes(Rng& rng) {
  const std::vector<RingPtr> rings{Ring::zmod(2, 1), Ring::zmod(3, 1), Ring::galois_field(2, 2)};
  auto rand_w = [&](int n) {
    std::vector<int> w;
    for (int i = 0; i < n; ++i) w.push_back(static_cast<int>(rng() % 4) - 1);
    return w;
  };
  for (int k = 0; k < 50; ++k) {
    const auto& r = rings[k % rings.size()];
    auto D = random_display(GradedModule(r, 5, rand_w(1 + rng() % 2)), rng);
    auto Dp = random_display(GradedModule(r, 5, rand_w(1 + rng() % 2)), rng);
    if (!iso_equal(isodisplay_of(display_tensor(D, Dp)), iso_tensor(isodisplay_of(D), isodisplay_of(Dp))))
      return {false, "tensor multiplicativity fails"};
  }
  const std::vector<Rational> s0{0}, s01{0, 1}, shalf{Rational(1, 2), Rational(1, 2)};
  for (int p : {2, 3}) {
    auto fp = Ring::zmod(p, 1);
    if (newton_slopes(Isodisplay{fp, qint(fp, 4, {{1}})}) != s0) return {false, "slopes of id"};
    if (newton_slopes(Isodisplay{fp, qint(fp, 4, {{1, 0}, {0, p}})}) != s01) return {false, "slopes of diag(1,p)"};
    if (newton_slopes(Isodisplay{fp, qint(fp, 4, {{0, p}, {1, 0}})}) != shalf) return {false, "slopes of companion"};
  }
  int checked = 0, skipped = 0;
  for (int k = 0; k < 60; ++k) {
    const auto& r = rings[rng() % rings.size()];
    auto I = isodisplay_of(random_display(GradedModule(r, 6, rand_w(1 + rng() % 3)), rng));
    std::vector<Rational> s;
    try {
      s = newton_slopes(I);
    } catch (const Error& e) {
      if (!e.is_precision()) throw;
      ++skipped;
      continue;
    }
    Rational sum = 0;
    for (const auto& x : s) sum += x;
    if (sum != Rational(qm_det_valuation(I.phi))) return {false, "slope sum differs from v(det)"};
    ++checked;
  }
  if (checked == 0) return {false, "no slope-sum sample was decidable"};
  return {true, fmt("tensor_pairs", 50) + " " + fmt("slope_sum_checked", checked) + " " + fmt("precision_skips", skipped)};
}

inline Outcome gl1_structure(int threads) {
  auto f2 = Ring::zmod(2, 1);
  auto F = validate_framing({1}, qint(f2, 2, {{2}}));
  auto res = rz_enumerate(F, 1, threads);
  if (res.undecided) return {false, fmt("undecided", res.undecided)};
  std::map<int, std::set<int>> by_val, by_orbit;
  for (std::size_t i = 0; i < res.points.size(); ++i) {
    if (!rz_membership(F, res.points[i].g)) return {false, "enumerated point fails membership"};
    const int v = qm_det_valuation(res.points[i].g);
    by_val[v].insert(res.orbit[i]);
    by_orbit[res.orbit[i]].insert(v);
  }
  bool bijective = by_val.size() == 3 && by_orbit.size() == 3;
  for (const auto& [v, o] : by_val) bijective = bijective && o.size() == 1 && v >= -1 && v <= 1;
  for (const auto& [o, v] : by_orbit) bijective = bijective && v.size() == 1;
  if (res.orbits != 3 || !bijective) return {false, fmt("orbits", res.orbits)};
  return {true, fmt("orbits", res.orbits) + " " + fmt("points", static_cast<i64>(res.points.size())) + " " +
                    fmt("scanned", res.scanned)};
}

/// A random display-group element commuting with the O_L-action on the eigenbasis.
inline FMatrix el_compatible_h(const ELRegular& R, Rng& rng) {
  const int n = R.datum.rank();
  const RingPtr& k = R.datum.action(0, 0).ring();
  const int m = wm_len(R.datum.action);
  const auto S = component_split(R.datum.action, R.datum.a);
  std::vector<int> comp(n, -1);
  for (int j = 0; j < R.datum.a; ++j)
    for (int i = 0; i < n; ++i)
      if (!S.projectors[j](i, i).is_zero()) comp[i] = j;
  const auto& w = R.datum.weights;
  for (;;) {
    FMatrix h = FMatrix::from_fn(n, n, [&](int i, int j) {
      return comp[i] == comp[j] ? FrameElement(w[j] - w[i], witt_random(k, m, rng)) : FrameElement::zero(k, m, w[j] - w[i]);
    });
    if (dg_membership(h, w)) return h;
  }
}

inline Outcome el_condition(Rng& rng) {
  auto f4 = Ring::galois_field(2, 2);
  const std::vector<std::pair<int, std::vector<int>>> shapes{{1, {1, 0}}, {1, {0, 1}}, {2, {1, 1}}, {2, {2, 0}}, {2, {0, 2}}};
  int banal = 0, invariant = 0;
  for (int k = 0; k < 50; ++k) {
    const auto& [r, d] = shapes[k % shapes.size()];
    auto R = el_regular(f4, 3, 2, r, d);
    auto D = el_banal_display(R, el_random_group_element(R, rng));
    if (!determinant_condition(D, R.datum.action, R.datum)) return {false, "banal display fails the condition"};
    ++banal;
    auto h = el_compatible_h(R, rng);
    Display Dh{D.L, dg_action(D.phi, h)};
    if (!determinant_condition(Dh, R.datum.action, R.datum)) return {false, "condition not invariant under the action"};
    ++invariant;
  }
  int mismatched = 0;
  const std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs{{{2, 0}, {1, 1}}, {{0, 2}, {1, 1}}, {{1, 1}, {2, 0}}};
  for (int k = 0; k < 20; ++k) {
    const auto& [dd, dx] = pairs[k % pairs.size()];
    auto R = el_regular(f4, 3, 2, 2, dd), Rx = el_regular(f4, 3, 2, 2, dx);
    auto D = el_banal_display(Rx, el_random_group_element(Rx, rng));
    if (determinant_condition(D, Rx.datum.action, R.datum)) return {false, "rank-mismatched instance passes"};
    ++mismatched;
  }
  return {true, fmt("banal_true", banal) + " " + fmt("mismatched_false", mismatched) + " " + fmt("invariant", invariant)};
}

// --- precision honesty ------------------------------------------------------

inline WittVector pad(const WittVector& x, int len) {
  std::vector<RingElement> c(x.coeffs());
  c.resize(static_cast<std::size_t>(len), RingElement::zero(x.ring()));
  return WittVector(x.ring(), std::move(c));
}

inline WMatrix pad(const WMatrix& a, int len) {
  return a.map([&](const WittVector& x) { return pad(x, len); });
}

inline bool wm_prefix_eq(const WMatrix& a, const WMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!eq_prefix(a(i, j), b(i, j))) return false;
  return true;
}

/// Sparse p-adic digits: small matrices whose entries have few non-zero
/// coordinates, so that low truncations often lose everything.
inline WMatrix sparse_matrix(const RingPtr& r, int n, int len, Rng& rng) {
  return WMatrix::from_fn(n, n, [&](int, int) {
    std::vector<RingElement> c(static_cast<std::size_t>(len), RingElement::zero(r));
    for (int i = 0; i < len; ++i)
      if (rng() % 3 == 0) c[i] = ring_random(r, rng);
    return WittVector(r, std::move(c));
  });
}

struct HonestyTally {
  i64 agreed = 0, refused = 0, wrong = 0;
  std::string first_wrong;

  void mismatch(const std::string& what) {
    ++wrong;
    if (first_wrong.empty()) first_wrong = what;
  }
};

/// Runs `op` on exact inputs at working lengths lo and hi. The low run must
/// agree with the high one or refuse with a precision error.
template <class T, class Op, class Agree>
void compare_runs(HonestyTally& t, const std::string& what, Op op, int lo, int hi, Agree agree) {
  std::optional<T> high;
  try {
    high = op(hi);
  } catch (const Error& e) {
    if (!e.is_precision()) throw;
    return;  // undecidable even at the reference precision
  }
  try {
    T low = op(lo);
    if (agree(low, *high))
      ++t.agreed;
    else
      t.mismatch(what + " at m=" + std::to_string(lo));
  } catch (const Error& e) {
    if (!e.is_precision()) throw;
    ++t.refused;
  }
}

inline Outcome precision_honesty(Rng& rng) {
  HonestyTally t;
  const int H = 12;
  const std::vector<RingPtr> fields{Ring::zmod(2, 1), Ring::zmod(3, 1), Ring::galois_field(2, 2)};
  for (int trial = 0; trial < 300; ++trial) {
    const auto& r = fields[trial % fields.size()];
    const int n = 1 + static_cast<int>(rng() % 3);
    const int digits = 1 + static_cast<int>(rng() % 4);
    const WMatrix A = sparse_matrix(r, n, digits, rng);
    const int e = static_cast<int>(rng() % 3);
    const int lo = digits + static_cast<int>(rng() % 2);  // the input is exact at both lengths
    auto at = [&](int m) { return pad(A, m); };
    compare_runs<int>(t, "det valuation", [&](int m) { return qm_det_valuation(QMatrix{e, at(m)}); }, lo, H,
                      [](int a, int b) { return a == b; });
    compare_runs<std::vector<int>>(t, "Smith valuations", [&](int m) { return smith_valuations(QMatrix{e, at(m)}); }, lo,
                                   H, [](const auto& a, const auto& b) { return a == b; });
    compare_runs<std::vector<Rational>>(
        t, "Newton slopes", [&](int m) { return newton_slopes(Isodisplay{r, QMatrix{e, at(m)}}); }, lo, H,
        [](const auto& a, const auto& b) { return a == b; });
    compare_runs<QMatrix>(
        t, "inverse", [&](int m) { return qm_inverse(QMatrix{e, at(m)}); }, lo, H,
        [](const QMatrix& a, const QMatrix& b) { return a.precision() <= 0 || qm_eq(a, b); });
    compare_runs<WittValuation>(
        t, "valuation", [&](int m) { return witt_val(at(m)(0, 0)); }, lo, H,
        [](const WittValuation& a, const WittValuation& b) { return a.exact ? a == b : b.value >= a.value; });
    // RZ membership for GL_n framings with μ = (0,...,0,1)
    Cocharacter I(static_cast<std::size_t>(n), 0);
    I.back() = 1;
    compare_runs<std::optional<WMatrix>>(
        t, "RZ membership",
        [&](int m) -> std::optional<WMatrix> {
          std::vector<WittVector> d;
          for (int i = 0; i < n; ++i) d.push_back(WittVector::from_int(r, m + 2, i + 1 == n ? r->p() : 1));
          auto F = validate_framing(I, QMatrix{0, wm_diag(d)});
          auto pt = rz_membership(F, QMatrix{e, at(m)});
          if (!pt) return std::nullopt;
          return pt->U;
        },
        lo, H, [](const auto& a, const auto& b) { return a.has_value() == b.has_value() && (!a || wm_prefix_eq(*a, *b)); });
  }
  // non-perfect rings: f shortens, v_preimage keeps m-1 exact coordinates
  for (const auto& r : {Ring::zmod(2, 2), Ring::zmod(3, 2), Ring::dual(2, 1)})
    for (int trial = 0; trial < 100; ++trial) {
      const int digits = 1 + static_cast<int>(rng() % 3);
      const WittVector x = witt_random(r, digits, rng);
      for (int lo = digits; lo <= digits + 1; ++lo) {
        compare_runs<WittVector>(t, "Frobenius", [&](int m) { return frobenius(pad(x, m)); }, lo, H,
                                 [](const WittVector& a, const WittVector& b) { return eq_prefix(a, b); });
        compare_runs<WittVector>(
            t, "v-preimage",
            [&](int m) {
              auto pre = v_preimage(verschiebung(pad(x, m)));
              return pre.value.truncate(pre.exact_coeffs);
            },
            lo, H, [](const WittVector& a, const WittVector& b) { return eq_prefix(a, b); });
      }
    }
  std::ostringstream os;
  os << "agreed=" << t.agreed << " refused=" << t.refused << " wrong=" << t.wrong;
  if (t.wrong) return {false, os.str() + " first: " + t.first_wrong};
  if (t.refused == 0) return {false, os.str() + " (no run exhausted precision)"};
  return {true, os.str()};
}

}  // namespace detail

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0: none
  std::function<Outcome(detail::Rng&, const Options&)> run;
};

inline std::vector<Criterion> criteria() {
  using namespace detail;
  return {
      {1, "Witt oracle equivalence", 10, [](Rng& g, const Options&) { return witt_oracle(g); }},
      {2, "frame axioms", 5, [](Rng& g, const Options&) { return frame_axioms(g); }},
      {3, "Witt identities", 0, [](Rng& g, const Options&) { return witt_identities(g); }},
      {4, "Zink round trip", 0, [](Rng& g, const Options&) { return zink_round_trip(g); }},
      {5, "V-sharp relations and nilpotence", 0, [](Rng& g, const Options&) { return vsharp(g); }},
      {6, "display group over W2(F2)", 60, [](Rng&, const Options& o) { return dg_exhaustive(o.threads); }},
      {7, "action/morphism dictionary", 0, [](Rng& g, const Options&) { return action_morphism(g); }},
      {8, "RZ action well-defined", 0, [](Rng& g, const Options&) { return rz_action_pairs(g); }},
      {9, "isodisplays and slopes", 0, [](Rng& g, const Options&) { return iso_slopes(g); }},
      {10, "GL1 RZ structure", 0, [](Rng&, const Options& o) { return gl1_structure(o.threads); }},
      {11, "EL determinant condition", 0, [](Rng& g, const Options&) { return el_condition(g); }},
      {12, "precision honesty", 0, [](Rng& g, const Options&) { return precision_honesty(g); }},
  };
}

/// Runs the selected criteria (all when `only` is empty), calling `report`
/// after each one.
inline std::vector<CriterionResult> run(const Options& opt, const std::set<int>& only = {},
                                        const std::function<void(const CriterionResult&)>& report = {}) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    if (!only.empty() && !only.count(c.id)) continue;
    detail::Rng rng(opt.seed + static_cast<std::uint64_t>(c.id));
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = detail::guarded([&] { return c.run(rng, opt); });
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && c.limit_seconds > 0 && s > c.limit_seconds) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s budget)";
    }
    out.push_back({c.id, c.name, o.pass, o.detail, s});
    if (report) report(out.back());
  }
  return out;
}

}  // namespace wittkit::selftest
