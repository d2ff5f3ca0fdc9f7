#include <gtest/gtest.h>

#include "dwcat/dw.hpp"
#include "dwcat/gerbes.hpp"
#include "support.hpp"

using namespace dwcat;
using namespace testing_support;

TEST(Gerbes, CoversAreDownwardClosed) {
  EXPECT_THROW(make_cover(3, {{0}, {1}, {2}, {0, 1, 2}}), Error);
  EXPECT_THROW(make_cover(2, {{0}}), Error);
  auto U = covers::torus9();
  EXPECT_EQ(cech_nerve(U).faces, library::torus().faces);
  auto C = cover_category(covers::circle3());
  EXPECT_TRUE(C.arrow({0, 1}, {1}));
  EXPECT_FALSE(C.arrow({1}, {0, 1}));
  EXPECT_EQ(C.compose({0, 1}, {1, 2}), (Tuple{0, 1, 2}));
}

TEST(Gerbes, AlternatingTablesFlipSign) {
  AlternatingTable t;
  t.v[{0, 1, 2}] = 5;
  EXPECT_EQ(t.at({0, 1, 2}), 5);
  EXPECT_EQ(t.at({1, 0, 2}), -5);
  EXPECT_EQ(t.at({2, 0, 1}), 5);
  EXPECT_THROW(t.at({0, 1, 3}), Error);
}

TEST(Gerbes, ZeroGerbeHasTheZeroObject) {
  auto g = zero_gerbe(covers::circle3(), 2);
  EXPECT_TRUE(global_trivialization_check(g));
  auto o = find_object(g);
  ASSERT_TRUE(o.has_value());
  for (auto [i, L] : o->L) EXPECT_EQ(L, 0);
}

TEST(Gerbes, RoundTripDegreeOne) {
  std::mt19937 rng(41);
  auto U = covers::torus9();
  auto N = cech_nerve(U);
  for (Int m : {2, 3, 4}) {
    CochainContext ctx(N, CoeffGroupoid::lines(m));
    auto H = cohomology(ctx, 1);
    for (int t = 0; t < 10; ++t) {
      auto x = random_lines_cocycle(ctx, H, 1, rng);
      auto g = gerbe1_from_cocycle(U, x, m);
      EXPECT_EQ(cocycle_from_gerbe(g), x);
      EXPECT_EQ(gerbe1_from_cocycle(U, cocycle_from_gerbe(g), m).theta.v, g.theta.v);
      EXPECT_EQ(find_object(g).has_value(), H.class_is_zero(x));
      EXPECT_TRUE(equivalent(tensor_gerbes(g, dual_gerbe(g)), zero_gerbe(U, m)));
    }
  }
}

TEST(Gerbes, RoundTripDegreeTwo) {
  std::mt19937 rng(42);
  auto U = cover_of_complex(library::sphere3());
  auto N = cech_nerve(U);
  CochainContext ctx(N, CoeffGroupoid::lines(3));
  auto H = cohomology(ctx, 2);
  EXPECT_EQ(H.pi0.str(), "Z/3");
  for (int t = 0; t < 10; ++t) {
    auto x = random_lines_cocycle(ctx, H, 2, rng);
    auto g = gerbe2_from_cocycle(U, x, 3);
    EXPECT_EQ(cocycle_from_gerbe(g), x);
  }
}

TEST(Gerbes, ObjectsSolveTheSectionEquation) {
  auto U = covers::torus9();
  auto N = cech_nerve(U);
  CochainContext ctx(N, CoeffGroupoid::lines(5));
  std::vector<Int> b(N.count(1));
  for (int i = 0; i < N.count(1); ++i) b[i] = i * i + 1;
  auto x = ctx.phase_cocycle(1, ctx.coboundary_phases(1, b));
  auto g = gerbe1_from_cocycle(U, x, 5);
  auto o = find_object(g);
  ASSERT_TRUE(o.has_value());
  EXPECT_FALSE(object_violation(g, *o).has_value());
  o->isos.v.begin()->second += 1;
  EXPECT_TRUE(object_violation(g, *o).has_value());
}

TEST(Gerbes, GroupThreeCocycleOnTheNerve) {
  auto G = FiniteGroup::cyclic(2);
  Nerve N(G, 4);
  auto w = make_group_cocycle(G, 3, 2, [](const std::vector<int>& t) {
    return Int(t[0] == 1 && t[1] == 1 && t[2] == 1);
  }, "w");
  auto x = nerve_cocycle(N, w);
  auto H = cohomology(N.complex(), CoeffGroupoid::lines(2), 2);
  EXPECT_EQ(H.pi0.str(), "Z/2");
  EXPECT_FALSE(H.class_is_zero(x));
}

TEST(Gerbes, ZeroGerbeFunctorTransport) {
  auto X = library::circle();
  CochainContext ctx(X, CoeffGroupoid::lines(4));
  auto x = ctx.phase_cocycle(0, {1, 2, 3});
  auto F = zero_gerbe_functor(X, x, 4);
  EXPECT_EQ(F.transport({{0, 1}, {1, 1}, {2, 1}}), 2);
  EXPECT_EQ(F.transport({{0, 1}, {0, -1}}), 0);
  EXPECT_THROW(F.transport({{0, 1}, {2, 1}}), Error);
}
