#include <gtest/gtest.h>

#include <random>

#include "wittkit/zink.hpp"

using namespace wittkit;

namespace {

// rank of a matrix over a finite field by elimination
int field_rank(Matrix<RingElement> a) {
  int rank = 0;
  const int rows = a.rows(), cols = a.cols();
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (!a(r, c).is_zero()) piv = r;
    if (piv < 0) continue;
    for (int k = 0; k < cols; ++k) std::swap(a(rank, k), a(piv, k));
    const RingElement inv = a(rank, c).inv();
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a(r, c).is_zero()) continue;
      const RingElement f = a(r, c) * inv;
      for (int k = 0; k < cols; ++k) a(r, k) = a(r, k) - f * a(rank, k);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST(Zink, FromDisplayExamples) {
  auto r = Ring::zmod(2, 2);
  auto D0 = display_validate(GradedModule(r, 3, {0}), wm_identity(r, 1, 3));
  auto Z0 = zink_from_display(D0);
  EXPECT_TRUE(wm_eq(Z0.F0, D0.phi));
  EXPECT_TRUE(wm_eq(Z0.F1, D0.phi));  // F_1(v(ξ)) = ξ
  auto D1 = display_validate(GradedModule(r, 3, {1}), wm_identity(r, 1, 3));
  auto Z1 = zink_from_display(D1);
  EXPECT_TRUE(wm_eq(Z1.F1, D1.phi));
  EXPECT_TRUE(wm_eq(Z1.F0, wm_from_ints(r, 3, {{2}})));
}

TEST(Zink, RoundTrip) {
  std::mt19937_64 rng(1);
  for (const auto& r : {Ring::zmod(2, 1), Ring::zmod(3, 1), Ring::zmod(2, 2), Ring::galois_field(2, 2), Ring::dual(2, 1)})
    for (int k = 0; k < 40; ++k) {
      const int n = 1 + static_cast<int>(rng() % 3);
      std::vector<int> w;
      for (int i = 0; i < n; ++i) w.push_back(static_cast<int>(rng() % 2));
      auto D = random_display(GradedModule(r, 3, w), rng);
      auto Z = zink_from_display(D);
      EXPECT_NO_THROW(zink_validate(Z));
      EXPECT_TRUE(display_equal(zink_to_display(Z), D));
      auto Z2 = zink_from_display(zink_to_display(Z));
      EXPECT_TRUE(wm_eq(Z2.F0, Z.F0));
      EXPECT_TRUE(wm_eq(Z2.F1, Z.F1));
    }
}

TEST(Zink, InvalidInstances) {
  auto f2 = Ring::zmod(2, 1);
  auto L = GradedModule(f2, 3, {0, 1});
  // F_1 with non-unit determinant: not an epimorphism
  ZinkDisplay bad{L, wm_from_ints(f2, 3, {{2, 0}, {0, 2}}), wm_from_ints(f2, 3, {{2, 0}, {0, 1}})};
  try {
    zink_to_display(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidZink);
  }
  // incompatible F_0 / F_1
  ZinkDisplay bad2{L, wm_from_ints(f2, 3, {{1, 0}, {0, 1}}), wm_from_ints(f2, 3, {{1, 0}, {0, 1}})};
  EXPECT_THROW(zink_to_display(bad2), Error);
  // rank zero
  ZinkDisplay trivial{GradedModule(f2, 3, {}), WMatrix(0, 0), WMatrix(0, 0)};
  EXPECT_EQ(zink_to_display(trivial).rank(), 0);
  EXPECT_TRUE(zink_is_nilpotent(trivial).nilpotent);
  EXPECT_THROW(zink_from_display(display_validate(GradedModule(f2, 3, {2}), wm_identity(f2, 1, 3))), Error);
}

TEST(Zink, VSharpExamples) {
  for (int p : {2, 3}) {
    auto fp = Ring::zmod(p, 1);
    auto Z0 = zink_from_display(display_validate(GradedModule(fp, 3, {0, 0}), wm_identity(fp, 2, 3)));
    EXPECT_TRUE(wm_eq(v_sharp(Z0).matrix, WittVector::from_int(fp, 3, p) * wm_identity(fp, 2, 3)));
    auto Z1 = zink_from_display(display_validate(GradedModule(fp, 3, {1, 1}), wm_identity(fp, 2, 3)));
    EXPECT_TRUE(wm_eq(v_sharp(Z1).matrix, wm_identity(fp, 2, 3)));
    auto Zs = zink_from_display(display_validate(GradedModule(fp, 3, {0, 1}), wm_from_ints(fp, 3, {{0, 1}, {1, 0}})));
    EXPECT_TRUE(wm_eq(v_sharp(Zs).matrix, wm_from_ints(fp, 3, {{0, p}, {1, 0}})));
  }
}

TEST(Zink, VSharpRelationsSampled) {
  std::mt19937_64 rng(2);
  for (const auto& r : {Ring::zmod(2, 1), Ring::zmod(2, 2), Ring::galois_field(3, 2), Ring::dual(2, 1)})
    for (int k = 0; k < 10; ++k) {
      auto D = random_display(GradedModule(r, 4, {0, 1, 0}), rng);
      auto Z = zink_from_display(D);
      EXPECT_TRUE(v_sharp_relations_hold(Z, v_sharp(Z), 5, rng)) << r->name();
    }
}

TEST(Zink, NilpotenceExamples) {
  for (int p : {2, 3}) {
    auto fp = Ring::zmod(p, 1);
    auto n1 = zink_is_nilpotent(zink_from_display(display_validate(GradedModule(fp, 3, {0, 0}), wm_identity(fp, 2, 3))));
    EXPECT_TRUE(n1.nilpotent);
    EXPECT_EQ(n1.exponent, 1);
    auto n2 = zink_is_nilpotent(zink_from_display(display_validate(GradedModule(fp, 3, {1, 1}), wm_identity(fp, 2, 3))));
    EXPECT_FALSE(n2.nilpotent);
    auto n3 = zink_is_nilpotent(
        zink_from_display(display_validate(GradedModule(fp, 3, {0, 1}), wm_from_ints(fp, 3, {{0, 1}, {1, 0}}))));
    EXPECT_TRUE(n3.nilpotent);
    EXPECT_EQ(n3.exponent, 2);
  }
}

TEST(Zink, TwistedChainStabilizesWithinRank) {
  for (const auto& r : {Ring::zmod(2, 1), Ring::zmod(3, 1), Ring::galois_field(2, 2)})
    for (int n : {2, 3}) {
      const auto elems = ring_enumerate(r);
      const i64 q = static_cast<i64>(elems.size());
      i64 total = 1;
      for (int i = 0; i < n * n; ++i) total *= q;
      const i64 step = total > 20000 ? total / 20000 + 1 : 1;
      for (i64 code = 0; code < total; code += step) {
        i64 c = code;
        Matrix<RingElement> N(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            N(i, j) = elems[c % q];
            c /= q;
          }
        std::vector<int> ranks;
        Matrix<RingElement> s = N, prod = N;
        for (int k = 1; k <= 2 * n + 2; ++k) {
          ranks.push_back(field_rank(prod));
          s = s.map([&](const RingElement& x) { return x.pow(r->p()); });
          prod = rm_mul(s, prod);
        }
        for (std::size_t k = n - 1; k < ranks.size(); ++k) ASSERT_EQ(ranks[k], ranks[n - 1]) << r->name();
      }
    }
}
