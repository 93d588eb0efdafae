#include <gtest/gtest.h>

#include <random>
#include <set>

#include "wittkit/dg.hpp"
#include "wittkit/zink.hpp"

using namespace wittkit;

namespace {

FMatrix sample_h(const RingPtr& r, int m) {
  // [[1, v(1)], [t, 1]] for μ = (0, 1)
  FMatrix h(2, 2);
  h(0, 0) = FrameElement::one(r, m);
  h(0, 1) = FrameElement(1, WittVector::one(r, m));
  h(1, 0) = FrameElement(-1, WittVector::one(r, m));
  h(1, 1) = FrameElement::one(r, m);
  return h;
}

}  // namespace

TEST(DisplayGroup, MembershipExamples) {
  auto r = Ring::zmod(2, 1);
  const Cocharacter I{0, 1};
  EXPECT_TRUE(dg_membership(sample_h(r, 3), I));
  EXPECT_TRUE(dg_membership(dg_identity(r, 3, I), I));
  auto f4 = Ring::galois_field(2, 2);
  FMatrix d(2, 2);
  d(0, 0) = FrameElement(0, teichmuller(RingElement::gen_x(f4), 3));
  d(1, 1) = FrameElement(0, teichmuller(RingElement::gen_x(f4).pow(2), 3));
  d(0, 1) = FrameElement::zero(f4, 3, 1);
  d(1, 0) = FrameElement::zero(f4, 3, -1);
  EXPECT_TRUE(dg_membership(d, I));
  FMatrix bad = sample_h(r, 3);
  bad(0, 1) = FrameElement::one(r, 3);
  auto res = dg_membership(bad, I);
  EXPECT_FALSE(res);
  EXPECT_EQ(res.row, 0);
  EXPECT_EQ(res.col, 1);
  FMatrix sing = sample_h(r, 3);
  sing(0, 0) = FrameElement::zero(r, 3, 0);
  sing(1, 1) = FrameElement::zero(r, 3, 0);
  EXPECT_FALSE(dg_membership(sing, I));
}

TEST(DisplayGroup, SigmaTauExample) {
  for (int p : {2, 3, 5}) {
    auto r = Ring::zmod(p, 1);
    auto h = sample_h(r, 3);
    EXPECT_TRUE(wm_eq(dg_tau(h), wm_from_ints(r, 3, {{1, p}, {1, 1}})));
    EXPECT_TRUE(wm_eq(dg_sigma(h), wm_from_ints(r, 3, {{1, 1}, {p, 1}})));
    EXPECT_TRUE(dg_conjugation_identity(h, {0, 1}));
    EXPECT_TRUE(dg_conjugation_identity(h, {1, 2}));
    EXPECT_TRUE(wm_eq(dg_tau(dg_identity(r, 3, {0, 1})), wm_identity(r, 2, 3)));
  }
}

TEST(DisplayGroup, HomomorphismsAndInverse) {
  std::mt19937_64 rng(11);
  for (const auto& r : {Ring::zmod(2, 1), Ring::zmod(3, 1), Ring::galois_field(2, 2), Ring::zmod(2, 2), Ring::dual(3, 1)})
    for (const Cocharacter& I : {Cocharacter{0, 1}, Cocharacter{0, 0, 1}, Cocharacter{0, 1, 1}, Cocharacter{-1, 0, 2}}) {
      for (int k = 0; k < 8; ++k) {
        auto a = dg_random(r, 3, I, rng), b = dg_random(r, 3, I, rng);
        auto ab = dg_mul(a, b);
        ASSERT_TRUE(dg_membership(ab, I));
        EXPECT_TRUE(wm_eq(dg_sigma(ab), dg_sigma(a) * dg_sigma(b)));
        EXPECT_TRUE(wm_eq(dg_tau(ab), dg_tau(a) * dg_tau(b)));
        auto ai = dg_inverse(a);
        ASSERT_TRUE(dg_membership(ai, I));
        EXPECT_TRUE(fm_eq(dg_mul(a, ai), dg_identity(r, 3, I)));
        EXPECT_TRUE(dg_conjugation_identity(a, I));
        for (auto c : {Construction::Standard, Construction::TensorSquare, Construction::Dual})
          EXPECT_TRUE(grading_preservation_check(a, I, c));
      }
    }
}

TEST(DisplayGroup, ActionLawAndMorphisms) {
  std::mt19937_64 rng(12);
  for (const auto& r : {Ring::zmod(2, 1), Ring::zmod(3, 1), Ring::zmod(2, 2), Ring::galois_field(2, 2)}) {
    const Cocharacter I{0, 0, 1};
    for (int k = 0; k < 10; ++k) {
      auto U = wm_random_invertible(r, 3, 3, rng);
      auto h = dg_random(r, 3, I, rng), hp = dg_random(r, 3, I, rng);
      EXPECT_TRUE(wm_eq(dg_action(U, dg_identity(r, 3, I)), U));
      EXPECT_TRUE(wm_eq(dg_action(dg_action(U, h), hp), dg_action(U, dg_mul(h, hp))));
      auto Uh = dg_action(U, h);
      auto D = banal_display(Uh, I), Dp = banal_display(U, I);
      EXPECT_TRUE(display_morphism_check(dg_morphism(h, D, Dp), D, Dp));
    }
  }
}

TEST(DisplayGroup, BanalDisplay) {
  auto r = Ring::zmod(2, 1);
  auto D = banal_display(wm_identity(r, 2, 3), {0, 1});
  EXPECT_EQ(D.L.weights(), (std::vector<int>{0, 1}));
  EXPECT_TRUE(wm_eq(D.phi, wm_identity(r, 2, 3)));
  EXPECT_THROW(banal_display(wm_from_ints(r, 3, {{1, 1}, {1, 1}}), {0, 1}), Error);
}

TEST(DisplayGroup, PlantedDegreeViolation) {
  auto r = Ring::zmod(3, 1);
  FMatrix h = sample_h(r, 2);
  h(1, 0) = FrameElement(0, WittVector::one(r, 2));
  EXPECT_FALSE(grading_preservation_check(h, {0, 1}, Construction::Standard));
  EXPECT_FALSE(grading_preservation_check(h, {0, 1}, Construction::TensorSquare));
  EXPECT_FALSE(grading_preservation_check(h, {0, 1}, Construction::Dual));
}

TEST(DisplayGroup, HomSetRecoversPlantedElement) {
  auto r = Ring::zmod(2, 1);
  const Cocharacter I{0, 1};
  auto members = dg_enumerate(r, 2, I);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 5; ++k) {
    auto U = wm_random_invertible(r, 2, 2, rng);
    auto h = members[rng() % members.size()];
    auto Up = dg_action(U, dg_inverse(h));  // U = Up·h
    auto homs = hom_set(U, Up, members);
    bool found = false;
    for (const auto& g : homs) found = found || fm_eq(g, h);
    EXPECT_TRUE(found);
    bool has_id = false;
    for (const auto& g : hom_set(U, U, members)) has_id = has_id || fm_eq(g, dg_identity(r, 2, I));
    EXPECT_TRUE(has_id);
  }
}

TEST(DisplayGroup, ExhaustiveW2F2) {
  auto r = Ring::zmod(2, 1);
  const Cocharacter I{0, 1};
  auto members = dg_enumerate(r, 2, I);
  EXPECT_EQ(members.size(), 64u);
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
    EXPECT_TRUE(keys.count(key(dg_inverse(a))));
    for (const auto& b : members) ASSERT_TRUE(keys.count(key(dg_mul(a, b))));
    for (auto c : {Construction::Standard, Construction::TensorSquare, Construction::Dual})
      EXPECT_TRUE(grading_preservation_check(a, I, c));
  }
  auto Us = gl_enumerate(r, 2, 2);
  EXPECT_EQ(Us.size(), 96u);
  auto orbits = dg_orbits(Us, members, 2);
  auto classes = dg_iso_classes(Us, members);
  EXPECT_EQ(orbits.count, classes.count);
  EXPECT_EQ(orbits.orbit_of, classes.orbit_of);
  // h in Hom(U, U') implies h^(-1) in Hom(U', U)
  for (std::size_t i = 0; i < Us.size(); i += 7)
    for (std::size_t j = 0; j < Us.size(); j += 5)
      for (const auto& h : hom_set(Us[i], Us[j], members)) EXPECT_TRUE(wm_eq(dg_action(Us[i], dg_inverse(h)), Us[j]));
}

TEST(Zink, MorphismTransport) {
  std::mt19937_64 rng(14);
  for (const auto& r : {Ring::zmod(2, 1), Ring::zmod(3, 1), Ring::galois_field(2, 2), Ring::zmod(2, 2)}) {
    const Cocharacter I{0, 0, 1};
    for (int k = 0; k < 8; ++k) {
      auto U = wm_random_invertible(r, 3, 3, rng);
      auto h = dg_random(r, 3, I, rng);
      auto D = banal_display(dg_action(U, h), I), Dp = banal_display(U, I);
      auto Z = zink_from_display(D), Zp = zink_from_display(Dp);
      const bool disp = display_morphism_check(dg_morphism(h, D, Dp), D, Dp);
      EXPECT_TRUE(disp);
      EXPECT_EQ(zink_morphism_check(dg_tau(h), Z, Zp, 4, rng), disp);
      // a non-morphism: perturb h
      auto g = random_morphism(D.L, Dp.L, rng);
      EXPECT_EQ(zink_morphism_check(morph_tau(g), Z, Zp, 4, rng), display_morphism_check(g, D, Dp));
    }
  }
}
