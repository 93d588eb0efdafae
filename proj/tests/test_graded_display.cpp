#include <gtest/gtest.h>

#include <random>

#include "wittkit/display.hpp"

using namespace wittkit;

namespace {

WittVector wv(const RingPtr& r, std::vector<i64> c) { return WittVector(r, c); }

// h = [[1, v(1)], [t, 1]] for weights (0, 1)
FMatrix sample_h(const RingPtr& r, int m) {
  FMatrix h(2, 2);
  h(0, 0) = FrameElement::one(r, m);
  h(0, 1) = FrameElement::v(1, WittVector::one(r, m));
  h(1, 0) = FrameElement::t(r, m);
  h(1, 1) = FrameElement::one(r, m);
  return h;
}

}  // namespace

TEST(Graded, TypeDepthAltitude) {
  auto f2 = Ring::zmod(2, 1);
  auto M = GradedModule::from_ranks(f2, 3, {{0, 1}, {1, 1}});
  EXPECT_EQ(M.type(), (std::vector<int>{0, 1}));
  EXPECT_EQ(M.depth(), 0);
  EXPECT_EQ(M.altitude(), 1);
  auto N = GradedModule(f2, 3, {2, -1, 0, 2});
  EXPECT_EQ(N.type(), (std::vector<int>{-1, 0, 2, 2}));
  auto f4 = Ring::galois_field(2, 2);
  auto Nb = mod_base_change(N, RingHom::natural(f2, f4));
  EXPECT_EQ(Nb.type(), N.type());
  EXPECT_EQ(Nb.depth(), N.depth());
  EXPECT_EQ(Nb.altitude(), N.altitude());
  auto nonlocal = Ring::make(RingSpec{2, 1, 2, {0, 1, 1}, 1});
  try {
    (void)GradedModule(nonlocal, 2, {0}).type();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonLocalRing);
  }
}

TEST(Graded, NuReduce) {
  auto f2 = Ring::zmod(2, 1);
  EXPECT_EQ(GradedModule::from_ranks(f2, 2, {{0, 2}}).nu_reduce(), (std::map<int, int>{{0, 2}}));
  EXPECT_EQ(GradedModule::unit(f2, 2).nu_reduce(), (std::map<int, int>{{0, 1}}));
  EXPECT_EQ(GradedModule::from_ranks(f2, 2, {{1, 1}}).nu_reduce(), (std::map<int, int>{{1, 1}}));
}

TEST(Graded, TensorDual) {
  auto f2 = Ring::zmod(2, 1);
  auto M = GradedModule(f2, 3, {0, 1});
  EXPECT_EQ(mod_tensor(M, M).type(), (std::vector<int>{0, 1, 1, 2}));
  EXPECT_EQ(mod_dual(mod_dual(M)), M);
  EXPECT_EQ(mod_tensor(GradedModule::unit(f2, 3), M), M);
  auto A = GradedModule(f2, 3, {-1, 0, 2}), B = GradedModule(f2, 3, {1, 1});
  EXPECT_EQ(mod_tensor(mod_tensor(A, B), M).type(), mod_tensor(A, mod_tensor(B, M)).type());
  EXPECT_EQ(mod_dual(A).depth(), -A.altitude());
  EXPECT_EQ(mod_dual(A).altitude(), -A.depth());
  EXPECT_EQ(mod_tensor(A, B).ranks(), (std::map<int, int>{{0, 2}, {1, 2}, {3, 2}}));
}

TEST(Graded, Theta) {
  auto f2 = Ring::zmod(2, 1);
  auto M = GradedModule(f2, 3, {0, 1});
  auto t1 = theta(M, 1);
  EXPECT_FALSE(t1.is_isomorphism);
  EXPECT_EQ(t1.image_level, (std::vector<int>{1, 0}));  // I_R e_0 ⊕ W(R) e_1
  EXPECT_TRUE(theta(M, 0).is_isomorphism);
  EXPECT_TRUE(theta(M, -3).is_isomorphism);
  // M_1 = (L_0 ⊗ I_R) ⊕ (L_1 ⊗ W(R)): the image of θ_1 lies in I_R on the first coordinate
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    auto x = random_homogeneous_element(M, 1, rng);
    auto y = theta_apply(M, 1, x);
    EXPECT_TRUE(in_IR(y[0]));
  }
  // θ_d is inverted by theta_inverse
  auto c = std::vector<WittVector>{wv(f2, {1, 0, 1}), wv(f2, {0, 1, 1})};
  auto back = theta_apply(M, 0, theta_inverse(M, 0, c));
  EXPECT_EQ(back, c);
}

TEST(Graded, MorphCheck) {
  auto f2 = Ring::zmod(2, 1);
  auto M = GradedModule(f2, 3, {0, 1});
  EXPECT_TRUE(morph_check(morph_identity(M)));
  auto bad = morph_identity(M);
  bad.h(0, 1) = FrameElement::one(f2, 3);  // degree 0 where I_R is required
  auto c = morph_check(bad);
  EXPECT_FALSE(c);
  EXPECT_EQ(c.row, 0);
  EXPECT_EQ(c.col, 1);
  try {
    morph_validate(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeViolation);
  }
}

TEST(Graded, SigmaTauOfSampleMorphism) {
  for (int p : {2, 3, 5}) {
    auto fp = Ring::zmod(p, 1);
    auto M = GradedModule(fp, 3, {0, 1});
    GradedMorphism h{M, M, sample_h(fp, 3)};
    ASSERT_TRUE(morph_check(h));
    EXPECT_TRUE(wm_eq(morph_tau(h), wm_from_ints(fp, 3, {{1, p}, {1, 1}})));
    EXPECT_TRUE(wm_eq(morph_sigma(h), wm_from_ints(fp, 3, {{1, 1}, {p, 1}})));
  }
}

TEST(Graded, ThetaCompatibilityAndFunctoriality) {
  std::mt19937_64 rng(2);
  for (const auto& r : {Ring::zmod(2, 1), Ring::zmod(2, 2), Ring::galois_field(2, 2)}) {
    auto M = GradedModule(r, 4, {0, 1, 1}), N = GradedModule(r, 4, {0, 0, 1}), P = GradedModule(r, 4, {-1, 1});
    for (int k = 0; k < 20; ++k) {
      auto g = random_morphism(M, N, rng);
      auto h = random_morphism(N, P, rng);
      ASSERT_TRUE(morph_check(g));
      for (int n = -1; n <= 2; ++n) {
        auto x = random_homogeneous_element(M, n, rng);
        auto lhs = theta_apply(N, n, morph_apply(g, n, x));
        auto tx = theta_apply(M, n, x);
        auto T = morph_tau(g);
        for (int j = 0; j < N.rank(); ++j) {
          WittVector acc = T(j, 0) * tx[0];
          for (int i = 1; i < M.rank(); ++i) acc = acc + T(j, i) * tx[i];
          EXPECT_TRUE(eq_prefix(lhs[j], acc));
        }
      }
      auto hg = morph_compose(h, g);
      EXPECT_TRUE(morph_check(hg));
      EXPECT_TRUE(wm_eq(morph_sigma(hg), morph_sigma(h) * morph_sigma(g)));
      EXPECT_TRUE(wm_eq(morph_tau(hg), morph_tau(h) * morph_tau(g)));
    }
  }
}

TEST(Display, ValidateExamples) {
  auto f2 = Ring::zmod(2, 1);
  EXPECT_NO_THROW(unit_display(f2, 3));
  try {
    display_validate(GradedModule(f2, 3, {0, 0}), wm_from_ints(f2, 3, {{2, 0}, {0, 2}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotBijective);
  }
  EXPECT_NO_THROW(display_validate(GradedModule(f2, 3, {0, 1}), wm_from_ints(f2, 3, {{0, 1}, {1, 0}})));
}

TEST(Display, FEvalExamples) {
  auto r = Ring::galois_field(2, 2);
  std::mt19937_64 rng(3);
  auto D = random_display(GradedModule(r, 4, {0}), rng);
  auto col = D.phi(0, 0);
  auto one = display_F_eval(D, 0, {FrameElement::one(r, 4)});
  EXPECT_TRUE(eq_prefix(one[0], col));
  auto viat = display_F_eval(D, -1, {FrameElement::t(r, 4)});
  EXPECT_TRUE(eq_prefix(viat[0], col.scale(2)));
  auto xi = witt_random(r, 4, rng);
  auto vx = display_F_eval(D, 1, {FrameElement::v(1, xi)});
  EXPECT_TRUE(eq_prefix(vx[0], xi * col));
}

TEST(Display, EvaluationConsistency) {
  std::mt19937_64 rng(4);
  for (const auto& r : {Ring::zmod(2, 1), Ring::galois_field(3, 2), Ring::zmod(2, 2)})
    for (const auto& w : std::vector<std::vector<int>>{{0, 1}, {1, 0, 2}, {-1, 0}, {2, 2}}) {
      auto D = random_display(GradedModule(r, 4, w), rng);
      const int d = D.L.depth();
      auto lin = display_F_linearization(D);
      for (int b = 0; b < D.rank(); ++b) {
        std::vector<WittVector> e;
        for (int i = 0; i < D.rank(); ++i) e.push_back(i == b ? WittVector::one(r, 4) : WittVector::zero(r, 4));
        auto col = display_F_eval(D, d, theta_inverse(D.L, d, e));
        for (int i = 0; i < D.rank(); ++i) EXPECT_TRUE(eq_prefix(col[i], lin(i, b)));
      }
    }
}

TEST(Display, TensorDualBaseChange) {
  std::mt19937_64 rng(5);
  auto f2 = Ring::zmod(2, 1), f4 = Ring::galois_field(2, 2);
  auto U = unit_display(f2, 3);
  EXPECT_TRUE(display_equal(display_dual(U), U));
  for (int k = 0; k < 10; ++k) {
    auto D = random_display(GradedModule(f2, 3, {0, 1}), rng);
    auto E = random_display(GradedModule(f2, 3, {1, 1, 2}), rng);
    EXPECT_TRUE(display_equal(display_tensor(U, D), D));
    auto T = display_tensor(D, E);
    EXPECT_TRUE(wm_det(T.phi).is_unit());
    EXPECT_TRUE(display_equal(display_dual(T), display_tensor(display_dual(D), display_dual(E))));
    EXPECT_TRUE(display_equal(display_dual(display_dual(D)), D));
    auto B = display_base_change(D, RingHom::natural(f2, f4));
    EXPECT_EQ(B.L.type(), D.L.type());
    EXPECT_TRUE(wm_det(B.phi).is_unit());
  }
}

TEST(Display, MorphismIdentity) {
  std::mt19937_64 rng(6);
  for (const auto& r : {Ring::zmod(2, 1), Ring::dual(2, 1)}) {
    auto D = random_display(GradedModule(r, 3, {0, 1, 1}), rng);
    EXPECT_TRUE(display_morphism_check(morph_identity(D.L), D, D));
  }
}

TEST(Display, BilinearForms) {
  std::mt19937_64 rng(7);
  auto f4 = Ring::galois_field(2, 2);
  for (int k = 0; k < 10; ++k) {
    auto D = random_display(GradedModule(f4, 3, {0, 1}), rng);
    auto E = random_display(GradedModule(f4, 3, {0, 0, 1}), rng);
    auto T = display_tensor(D, E);
    EXPECT_TRUE(bilinear_form_check(canonical_bilinear_form(D, E), D, E, T));
    auto zero = canonical_bilinear_form(D, E);
    for (int i = 0; i < zero.rows(); ++i)
      for (int j = 0; j < zero.cols(); ++j) zero(i, j) = FrameElement::zero(f4, 3, zero(i, j).deg);
    EXPECT_TRUE(bilinear_form_check(zero, D, E, T));
    EXPECT_TRUE(bilinear_form_check(evaluation_pairing(D), display_dual(D), D, unit_display(f4, 3)));
  }
  // Teichmüller [x] is not fixed by f, so scaling β_0 by it breaks compatibility
  auto one = display_validate(GradedModule::unit(f4, 3), WMatrix(1, 1, teichmuller(RingElement::gen_x(f4) + RingElement::one(f4), 3)));
  auto T = display_tensor(one, one);
  FMatrix beta(1, 1, FrameElement(0, teichmuller(RingElement::gen_x(f4), 3)));
  EXPECT_FALSE(bilinear_form_check(beta, one, one, T));
}

TEST(Display, EffectiveAndN) {
  auto f2 = Ring::zmod(2, 1);
  auto D1 = display_validate(GradedModule(f2, 2, {0, 1}), wm_identity(f2, 2, 2));
  EXPECT_TRUE(display_is_effective(D1));
  EXPECT_TRUE(display_is_n(D1, 1));
  auto Dm = display_validate(GradedModule(f2, 2, {-1}), wm_identity(f2, 1, 2));
  EXPECT_FALSE(display_is_effective(Dm));
  auto D0 = display_validate(GradedModule(f2, 2, {0, 0}), wm_identity(f2, 2, 2));
  EXPECT_TRUE(display_is_effective(D0));
  EXPECT_TRUE(display_is_n(D0, 0));
}
