#include <gtest/gtest.h>

#include <random>

#include "wittkit/io.hpp"

using namespace wittkit;
using io::json;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Usage;
}

}  // namespace

TEST(IO, RingShorthand) {
  auto z8 = io::parse_ring("Z/8");
  EXPECT_EQ(z8->p(), 2);
  EXPECT_EQ(z8->N(), 3);
  auto f9 = io::parse_ring("F9");
  EXPECT_EQ(f9->p(), 3);
  EXPECT_EQ(f9->a(), 2);
  EXPECT_TRUE(f9->is_field());
  auto d = io::parse_ring("F2[e]");
  EXPECT_EQ(d->eps(), 2);
  EXPECT_FALSE(d->is_field());
  EXPECT_EQ(kind_of([] { io::parse_ring("Z6"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { io::parse_ring("Q7"); }), ErrorKind::Parse);
}

TEST(IO, RingConfig) {
  auto r = io::parse_ring(R"(ring = { p = 2, kind = "Fq", a = 2, modulus = [1,1,1] })");
  EXPECT_EQ(r->a(), 2);
  EXPECT_EQ(r->modulus(), (std::vector<i64>{1, 1, 1}));
  auto z = io::parse_ring(R"(ring = { p = 3, kind = "Zpn[e]", N = 2 })");
  EXPECT_EQ(z->N(), 2);
  EXPECT_EQ(z->eps(), 2);
  EXPECT_EQ(kind_of([] { io::parse_ring(R"(ring = { p = 2, kind = "Fq", a = 2, modulus = [1,0,1] })"); }),
            ErrorKind::Usage);
  EXPECT_EQ(kind_of([] { io::parse_ring(R"(ring = { p = 2, colour = 3 })"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { io::parse_ring(R"(ring = { kind = "Fq" })"); }), ErrorKind::Parse);
}

TEST(IO, WittRoundTrip) {
  std::mt19937_64 rng(3);
  for (auto r : {io::parse_ring("Z4"), io::parse_ring("F4"), io::parse_ring("F2[e]")}) {
    for (int t = 0; t < 20; ++t) {
      auto x = witt_random(r, 4, rng);
      auto j = io::to_json(x);
      EXPECT_EQ(io::witt_from_json(r, 7, json::parse(j.dump())), x);
    }
  }
}

TEST(IO, WittBareListIsPadded) {
  auto r = io::parse_ring("Z4");
  auto x = io::witt_from_json(r, 3, json::parse("[1]"));
  EXPECT_EQ(x.len(), 3);
  EXPECT_EQ(x, WittVector::one(r, 3));
  EXPECT_EQ(kind_of([&] { io::witt_from_json(r, 2, json::parse("[1,0,0]")); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([&] { io::witt_from_json(r, 2, json::parse(R"({"len":2})")); }), ErrorKind::Parse);
}

TEST(IO, IntegerMatrixEntries) {
  auto r = io::parse_ring("F2");
  auto a = io::wmatrix_from_json(r, 3, json::parse("[[0,2],[1,0]]"));
  EXPECT_EQ(a(0, 1), WittVector::from_int(r, 3, 2));
  EXPECT_EQ(kind_of([&] { io::wmatrix_from_json(r, 3, json::parse("[[0,2],[1]]")); }), ErrorKind::Parse);
}

TEST(IO, DisplayRoundTrip) {
  std::mt19937_64 rng(5);
  auto r = io::parse_ring("F4");
  for (int t = 0; t < 10; ++t) {
    auto D = random_display(GradedModule(r, 3, {0, 1, 1}), rng);
    auto E = io::display_from_json(r, 3, json::parse(io::to_json(D).dump()));
    EXPECT_EQ(E.L.weights(), D.L.weights());
    EXPECT_TRUE(wm_eq(E.phi, D.phi));
  }
}

TEST(IO, WeightsMapAndList) {
  EXPECT_EQ(io::weights_from_json(json::parse("[0,1,1]")), (std::vector<int>{0, 1, 1}));
  auto w = io::weights_from_json(json::parse(R"({"0":1,"1":2})"));
  EXPECT_EQ(w, (std::vector<int>{0, 1, 1}));
}

TEST(IO, MalformedJson) {
  EXPECT_EQ(kind_of([] { io::parse_json("[1,"); }), ErrorKind::Parse);
  EXPECT_EQ(io::int_list("0,1,-2"), (std::vector<int>{0, 1, -2}));
}
