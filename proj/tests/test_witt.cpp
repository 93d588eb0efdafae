#include <gtest/gtest.h>

#include <random>

#include "wittkit/witt.hpp"
#include "wittkit/witt_poly.hpp"

using namespace wittkit;

namespace {

std::vector<RingPtr> rings_for(int p) {
  return {Ring::zmod(p, 3), Ring::zmod(p, 1), Ring::galois_field(p, 2), Ring::dual(p, 1)};
}

WittVector wv(const RingPtr& r, std::vector<i64> c) { return WittVector(r, c); }

}  // namespace

TEST(Witt, GhostExamples) {
  auto z = Ring::zmod(2, 4);
  auto g = wv(z, {3, 1}).ghost();
  EXPECT_EQ(g[0][0], 3);
  EXPECT_EQ(g[1][0], 11);
  auto g1 = wv(z, {1, 0}).ghost();
  EXPECT_EQ(g1[0][0], 1);
  EXPECT_EQ(g1[1][0], 1);
  auto t = wv(Ring::zmod(3, 2), {2, 0, 0}).ghost();
  EXPECT_EQ(t[1][0], 8);
  EXPECT_EQ(t[2][0], 512 % 81);
}

TEST(Witt, AddMulExamples) {
  auto z4 = Ring::zmod(2, 2);
  EXPECT_EQ(wv(z4, {1, 0}) + wv(z4, {1, 0}), wv(z4, {2, 3}));
  auto z8 = Ring::zmod(2, 3);
  EXPECT_EQ(wv(z8, {2, 0}) * wv(z8, {3, 0}), wv(z8, {6, 0}));
  auto x = wv(z8, {5, 7, 2});
  EXPECT_EQ(x + WittVector::zero(z8, 3), x);
}

TEST(Witt, MixedLengthsTruncate) {
  auto f2 = Ring::zmod(2, 1);
  auto s = wv(f2, {1, 1, 1}) + wv(f2, {1, 0});
  EXPECT_EQ(s.len(), 2);
  EXPECT_EQ(s, wv(f2, {1, 1}) + wv(f2, {1, 0}));
}

TEST(WittPoly, TableP2) {
  auto t = WittPolyTable::get(2, 3);
  const int nv = 6;
  auto X0 = IntPoly::variable(nv, 0), X1 = IntPoly::variable(nv, 1);
  auto Y0 = IntPoly::variable(nv, 3), Y1 = IntPoly::variable(nv, 4);
  EXPECT_EQ(t->sum(0), X0 + Y0);
  EXPECT_EQ(t->sum(1), X1 + Y1 - X0 * Y0);
  EXPECT_EQ(t->prod(0), X0 * Y0);
  auto z4 = Ring::zmod(2, 2);
  EXPECT_EQ(t->evaluate_sum(wv(z4, {1, 0}), wv(z4, {1, 0})), wv(z4, {2, 3}));
}

TEST(WittPoly, GhostIdentitiesHold) {
  for (int p : {2, 3}) {
    auto t = WittPolyTable::get(p, 3);
    std::vector<IntPoly> S, P;
    for (int n = 0; n < 3; ++n) {
      S.push_back(t->sum(n));
      P.push_back(t->prod(n));
    }
    for (int n = 0; n < 3; ++n) {
      EXPECT_EQ(t->ghost_of(S, n), t->ghost_poly(n, 0) + t->ghost_poly(n, 1));
      EXPECT_EQ(t->ghost_of(P, n), t->ghost_poly(n, 0) * t->ghost_poly(n, 1));
    }
  }
}

TEST(WittPoly, MemoizedAndGuarded) {
  EXPECT_EQ(WittPolyTable::get(2, 2).get(), WittPolyTable::get(2, 2).get());
  EXPECT_THROW(WittPolyTable::get(7, 2), Error);
  EXPECT_THROW(WittPolyTable::get(2, 5), Error);
}

TEST(Witt, OracleEquivalence) {
  std::mt19937_64 rng(1);
  for (int p : {2, 3})
    for (int m = 1; m <= 3; ++m) {
      auto t = WittPolyTable::get(p, m);
      for (const auto& r : rings_for(p))
        for (int k = 0; k < 100; ++k) {
          auto x = witt_random(r, m, rng), y = witt_random(r, m, rng);
          ASSERT_EQ(x + y, t->evaluate_sum(x, y)) << r->name() << " m=" << m;
          ASSERT_EQ(x * y, t->evaluate_prod(x, y)) << r->name() << " m=" << m;
        }
    }
}

TEST(Witt, RingAxioms) {
  std::mt19937_64 rng(2);
  for (int p : {2, 3})
    for (const auto& r : rings_for(p))
      for (int k = 0; k < 50; ++k) {
        auto x = witt_random(r, 3, rng), y = witt_random(r, 3, rng), z = witt_random(r, 3, rng);
        EXPECT_EQ((x + y) + z, x + (y + z));
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ(x - x, WittVector::zero(r, 3));
        EXPECT_EQ(x * WittVector::one(r, 3), x);
      }
}

TEST(Witt, FrobeniusVerschiebungIdentities) {
  std::mt19937_64 rng(3);
  for (int p : {2, 3})
    for (const auto& r : rings_for(p))
      for (int k = 0; k < 60; ++k) {
        auto x = witt_random(r, 3, rng), y = witt_random(r, 3, rng);
        // f(v(x)) = p x
        EXPECT_TRUE(eq_prefix(frobenius(verschiebung(x)), x.scale(p))) << r->name();
        // x v(y) = v(f(x) y)
        EXPECT_TRUE(eq_prefix(x * verschiebung(y), verschiebung(frobenius(x) * y)));
        // f ring homomorphism
        EXPECT_TRUE(eq_prefix(frobenius(x + y), frobenius(x) + frobenius(y)));
        EXPECT_TRUE(eq_prefix(frobenius(x * y), frobenius(x) * frobenius(y)));
        // v additive
        EXPECT_EQ(verschiebung(x + y), verschiebung(x) + verschiebung(y));
        // f(x) = x^p mod p W(R): the difference has image in pW(R); checked via the 0-th ghost
        auto d = frobenius(x) - x.pow(p).truncate(2);
        EXPECT_EQ(d[0].coeffs()[0] % p, 0);
        for (auto c : d[0].coeffs()) EXPECT_EQ(c % p, 0);
        // Teichmuller multiplicativity
        auto a = ring_random(r, rng), b = ring_random(r, rng);
        EXPECT_EQ(teichmuller(a, 3) * teichmuller(b, 3), teichmuller(a * b, 3));
        // w_0 multiplicative
        EXPECT_EQ((x * y)[0], x[0] * y[0]);
      }
}

TEST(Witt, FrobeniusPerfectMatchesGeneral) {
  std::mt19937_64 rng(4);
  for (const auto& r : {Ring::zmod(2, 1), Ring::galois_field(2, 2), Ring::galois_field(3, 2)})
    for (int k = 0; k < 50; ++k) {
      auto x = witt_random(r, 3, rng);
      EXPECT_EQ(frobenius(x).len(), 3);
      EXPECT_TRUE(eq_prefix(frobenius(x), frobenius_general(x)));
    }
  auto f2 = Ring::zmod(2, 1);
  EXPECT_EQ(frobenius(wv(f2, {1, 1})), wv(f2, {1, 1}));
  EXPECT_THROW(frobenius(wv(Ring::zmod(2, 2), {1})), Error);
}

TEST(Witt, VerschiebungAndIR) {
  auto f2 = Ring::zmod(2, 1);
  EXPECT_EQ(verschiebung(wv(f2, {1, 1})), wv(f2, {0, 1}));
  EXPECT_EQ(teichmuller(RingElement::one(f2), 3), WittVector::one(f2, 3));
  auto z4 = Ring::zmod(2, 2);
  auto x = wv(z4, {3, 1, 2});
  auto pre = v_preimage(verschiebung(x));
  EXPECT_EQ(pre.exact_coeffs, 2);
  EXPECT_TRUE(eq_prefix(pre.value.truncate(2), x));
  EXPECT_TRUE(in_IR(verschiebung(x)));
  try {
    v_preimage(x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInIR);
  }
}

TEST(Witt, Valuation) {
  auto f2 = Ring::zmod(2, 1);
  // p·1 in W_3(F_2) is (0,1,0)
  auto p1 = WittVector::one(f2, 3).scale(2);
  EXPECT_EQ(p1, wv(f2, {0, 1, 0}));
  EXPECT_EQ(witt_val(p1), (WittValuation{1, true}));
  EXPECT_EQ(witt_val(WittVector::one(f2, 3)), (WittValuation{0, true}));
  EXPECT_EQ(witt_val(WittVector::zero(f2, 3)), (WittValuation{3, false}));
  EXPECT_THROW(witt_val(WittVector::one(Ring::zmod(2, 2), 3)), Error);
}

TEST(Witt, PPowerShiftsAndInverse) {
  std::mt19937_64 rng(5);
  for (const auto& r : {Ring::zmod(2, 1), Ring::galois_field(2, 2), Ring::galois_field(3, 2)})
    for (int k = 0; k < 30; ++k) {
      auto x = witt_random(r, 4, rng);
      EXPECT_EQ(mul_p_pow(x, 2), x.scale(r->p() * r->p()));
      EXPECT_TRUE(eq_prefix(div_p_pow(mul_p_pow(x, 1), 1), x));
      EXPECT_EQ(frobenius(frobenius_inverse(x)), x);
      auto u = witt_random_unit(r, 4, rng);
      EXPECT_EQ(u * u.inv(), WittVector::one(r, 4));
    }
  auto z8 = Ring::zmod(2, 3);
  auto u = wv(z8, {3, 5, 1});
  EXPECT_EQ(u * u.inv(), WittVector::one(z8, 3));
  EXPECT_THROW(wv(z8, {2, 1, 1}).inv(), Error);
}

TEST(Witt, FromIntMatchesRepeatedAddition) {
  for (const auto& r : {Ring::zmod(2, 2), Ring::zmod(3, 1), Ring::dual(2, 1)}) {
    WittVector acc = WittVector::zero(r, 3);
    for (int n = 0; n < 12; ++n) {
      EXPECT_EQ(WittVector::from_int(r, 3, n), acc);
      acc = acc + WittVector::one(r, 3);
    }
    EXPECT_EQ(WittVector::from_int(r, 3, -1), -WittVector::one(r, 3));
  }
}
