#include <gtest/gtest.h>

#include <random>

#include "wittkit/dg.hpp"
#include "wittkit/el.hpp"

using namespace wittkit;

TEST(EL, GeneratorAndEigenvalues) {
  auto f4 = Ring::galois_field(2, 2);
  auto z = el_generator(f4, 2);
  EXPECT_FALSE(z == RingElement::one(f4));
  EXPECT_TRUE(z.pow(3) == RingElement::one(f4));
  auto lam = el_eigenvalues(f4, 3, 2);
  EXPECT_TRUE(frobenius(lam[0]) == lam[1]);
  EXPECT_TRUE(frobenius(lam[1]) == lam[0]);
  EXPECT_THROW(el_generator(Ring::galois_field(2, 3), 2), Error);
}

TEST(EL, ComponentSplitExamples) {
  auto f4 = Ring::galois_field(2, 2);
  auto R = el_regular(f4, 3, 2, 1, {1, 0});
  EXPECT_EQ(component_split(R.datum.action, 2).ranks, (std::vector<int>{1, 1}));
  // the Z_p-companion form of the same action
  auto Zc = wm_from_ints(f4, 3, {{0, -1}, {1, -1}});
  EXPECT_EQ(component_split(Zc, 2).ranks, (std::vector<int>{1, 1}));
  auto lam = el_eigenvalues(f4, 3, 2);
  EXPECT_EQ(component_split(wm_scalar(lam[0], 2), 2).ranks, (std::vector<int>{2, 0}));
  WMatrix bad = wm_scalar(lam[0], 2);
  bad(0, 1) = WittVector::one(f4, 3);
  try {
    component_split(bad, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SplitFailure);
  }
  auto S = component_split(Zc, 2);
  for (int j = 0; j < 2; ++j) {
    EXPECT_TRUE(wm_eq(S.projectors[j] * S.projectors[j], S.projectors[j]));
    EXPECT_TRUE(wm_eq(Zc * S.bases[j], lam[j] * S.bases[j]));
  }
}

TEST(EL, SplitInvariantUnderConjugation) {
  std::mt19937_64 rng(31);
  auto f4 = Ring::galois_field(2, 2);
  auto R = el_regular(f4, 3, 2, 2, {1, 2});
  for (int k = 0; k < 20; ++k) {
    auto g = wm_random_invertible(f4, 4, 3, rng);
    EXPECT_EQ(component_split(wm_inverse(g) * R.datum.action * g, 2).ranks, (std::vector<int>{2, 2}));
  }
}

TEST(EL, GroupMembership) {
  auto f4 = Ring::galois_field(2, 2);
  auto R = el_regular(f4, 3, 2, 1, {1, 0});
  EXPECT_TRUE(el_group_membership(wm_identity(f4, 2, 3), R.datum));
  EXPECT_TRUE(el_group_membership(wm_scalar(WittVector::from_int(f4, 3, 3), 2), R.datum));
  EXPECT_FALSE(el_group_membership(wm_from_ints(f4, 3, {{0, 1}, {1, 0}}), R.datum));
}

TEST(EL, FrobeniusShiftsComponents) {
  std::mt19937_64 rng(32);
  for (const auto& k : {Ring::galois_field(2, 2), Ring::galois_field(3, 2)}) {
    auto R = el_regular(k, 3, 2, 2, {1, 1});
    auto D = el_banal_display(R, el_random_group_element(R, rng));
    auto S = component_split(R.datum.action, 2);
    for (int j = 0; j < 2; ++j)
      EXPECT_TRUE(wm_eq(D.phi * wm_frobenius(S.projectors[j]), S.projectors[(j + 1) % 2] * D.phi));
  }
}

TEST(EL, DeterminantConditionBanal) {
  std::mt19937_64 rng(33);
  auto f4 = Ring::galois_field(2, 2);
  for (const auto& d : {std::vector<int>{1, 0}, std::vector<int>{0, 1}, std::vector<int>{0, 0}}) {
    auto R = el_regular(f4, 3, 2, 1, d);
    for (int k = 0; k < 10; ++k) {
      auto D = el_banal_display(R, el_random_group_element(R, rng));
      EXPECT_TRUE(determinant_condition(D, R.datum.action, R.datum));
      // the same display in a random weight-preserving basis
      const auto& w = D.L.weights();
      WMatrix B = WMatrix::from_fn(2, 2, [&](int i, int j) {
        return w[i] == w[j] ? witt_random(f4, 3, rng) : WittVector::zero(f4, 3);
      });
      if (!wm_is_invertible(B)) continue;
      Display D2{D.L, wm_inverse(B) * D.phi * wm_frobenius(B)};
      EXPECT_TRUE(determinant_condition(D2, wm_inverse(B) * R.datum.action * B, R.datum));
    }
  }
}

TEST(EL, DeterminantConditionMismatch) {
  std::mt19937_64 rng(34);
  auto f4 = Ring::galois_field(2, 2);
  auto R = el_regular(f4, 3, 2, 2, {2, 0});
  auto Rx = el_regular(f4, 3, 2, 2, {1, 1});  // same type (0,0,1,1), different Λ⁰(j)
  for (int k = 0; k < 10; ++k) {
    auto D = el_banal_display(Rx, el_random_group_element(Rx, rng));
    EXPECT_FALSE(determinant_condition(D, Rx.datum.action, R.datum));
    EXPECT_EQ(D.L.type(), (std::vector<int>{0, 0, 1, 1}));
  }
}

TEST(EL, TrivialDatumIsTypeCheck) {
  std::mt19937_64 rng(35);
  auto f2 = Ring::zmod(2, 1);
  ELDatum d{1, wm_identity(f2, 3, 3), {0, 1, 1}};
  el_validate(d);
  for (const auto& w : {std::vector<int>{0, 1, 1}, std::vector<int>{1, 0, 1}, std::vector<int>{0, 0, 1}}) {
    auto D = random_display(GradedModule(f2, 3, w), rng);
    std::vector<int> t = D.L.type();
    EXPECT_EQ(determinant_condition(D, wm_identity(f2, 3, 3), d), t == std::vector<int>({0, 1, 1}));
  }
}

TEST(EL, InvariantUnderCompatibleDisplayGroupAction) {
  std::mt19937_64 rng(36);
  auto f4 = Ring::galois_field(2, 2);
  auto R = el_regular(f4, 3, 2, 1, {1, 0});
  const auto& w = R.datum.weights;  // eigenbasis: component of basis vector i is i
  for (int k = 0; k < 10; ++k) {
    auto D = el_banal_display(R, el_random_group_element(R, rng));
    // h diagonal in the eigenbasis: compatible with the O_L-action
    FMatrix h = FMatrix::from_fn(2, 2, [&](int i, int j) {
      return i == j ? FrameElement(0, witt_random_unit(f4, 3, rng)) : FrameElement::zero(f4, 3, w[j] - w[i]);
    });
    Display Dh{D.L, dg_action(D.phi, h)};
    EXPECT_TRUE(determinant_condition(Dh, R.datum.action, R.datum));
  }
}
