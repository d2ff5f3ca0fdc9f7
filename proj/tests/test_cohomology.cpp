#include <gtest/gtest.h>

#include "support.hpp"

using namespace dwcat;
using namespace testing_support;

TEST(Cohomology, TorusWithLinesOfOrderThree) {
  auto H = cohomology(library::torus(), CoeffGroupoid::lines(3), 1);
  EXPECT_EQ(H.pi0.str(), "Z/3");
  EXPECT_EQ(H.pi1, (AbelianGroup{0, {3, 3}}));
  EXPECT_EQ(H.pi0_generators.size(), 1u);
}

TEST(Cohomology, LinesShiftDegreeAgainstOracle) {
  for (const char* name : {"s1", "s2", "t2"}) {
    auto X = library::by_name(name);
    for (int m : {2, 3, 4})
      for (int n = 0; n <= 2; ++n) {
        auto H = cohomology(X, CoeffGroupoid::lines(m), n);
        EXPECT_EQ(as_oracle(H.pi0), reference::cohomology_mod(X, n + 1, m)) << name << " n=" << n << " m=" << m;
        EXPECT_EQ(as_oracle(H.pi1), reference::cohomology_mod(X, n, m)) << name << " n=" << n << " m=" << m;
      }
  }
}

TEST(Cohomology, DiscreteCoefficientsAgainstOracle) {
  for (const char* name : {"s2", "t2", "s2xs1"}) {
    auto X = library::by_name(name);
    for (int d : {2, 3})
      for (int n = 0; n <= 2; ++n) {
        auto H = cohomology(X, CoeffGroupoid::cyclic(d), n);
        EXPECT_EQ(as_oracle(H.pi0), reference::cohomology_mod(X, n, d));
        EXPECT_EQ(as_oracle(H.pi1), reference::cohomology_mod(X, n - 1, d));
      }
    auto HZ = cohomology(X, CoeffGroupoid::integers(), 1);
    EXPECT_EQ(as_oracle(HZ.pi0), reference::integral_cohomology(X, 1)) << name;
  }
}

TEST(Cohomology, NonCocycleIsRejected) {
  auto X = library::torus();
  CochainContext ctx(X, CoeffGroupoid::lines(2));
  std::vector<Int> ph(X.count(2), 0);
  ph[0] = 1;
  EXPECT_NO_THROW(ctx.phase_cocycle(1, ph));
  CochainContext d(X, CoeffGroupoid::cyclic(2));
  Cochain a = d.zero_cochain(1);
  a.v[0] = Object{1};
  EXPECT_THROW(d.make_cocycle(a, d.zero_phases(2)), Error);
}

TEST(Cohomology, SphereHasNoHigherPhaseClass) {
  auto X = library::sphere3();
  CochainContext ctx(X, CoeffGroupoid::lines(2));
  std::vector<Int> ph(X.count(2), 0);
  ph[0] = 1;
  EXPECT_THROW(ctx.phase_cocycle(1, ph), Error);
}

TEST(Cohomology, ClassCoordinatesAreAdditive) {
  std::mt19937 rng(21);
  for (const char* name : {"t2", "s2xs1", "t3"}) {
    auto X = library::by_name(name);
    for (int m : {2, 4}) {
      CochainContext ctx(X, CoeffGroupoid::lines(m));
      auto H = cohomology(ctx, 1);
      for (int trial = 0; trial < 10; ++trial) {
        auto x = random_lines_cocycle(ctx, H, 1, rng), y = random_lines_cocycle(ctx, H, 1, rng);
        auto cx = H.pi0_coordinates(x), cy = H.pi0_coordinates(y), cs = H.pi0_coordinates(ctx.add(x, y));
        for (size_t i = 0; i < cs.size(); ++i) EXPECT_EQ(cs[i], mod(cx[i] + cy[i], H.pi0_parts[0].orders[i]));
        EXPECT_EQ(ctx.isomorphic(x, y), cx == cy);
        auto zero = ctx.add(x, ctx.negate(x));
        EXPECT_TRUE(H.class_is_zero(zero));
        auto h = ctx.find_morphism(zero, ctx.zero_cocycle(1));
        ASSERT_TRUE(h.has_value());
        EXPECT_FALSE(ctx.morphism_violation(zero, ctx.zero_cocycle(1), *h).has_value());
      }
    }
  }
}

TEST(Cohomology, ParallelMorphismsDifferByPi1) {
  auto X = library::circle();
  CochainContext ctx(X, CoeffGroupoid::lines(3));
  auto x = ctx.zero_cocycle(0);
  auto h1 = ctx.make_morphism(x, x, ctx.zero_cochain(-1), {0, 0, 0});
  auto h2 = ctx.make_morphism(x, x, ctx.zero_cochain(-1), {1, 1, 1});
  auto h3 = ctx.make_morphism(x, x, ctx.zero_cochain(-1), {2, 2, 2});
  EXPECT_FALSE(ctx.are_equivalent_morphisms(h1, h2));
  EXPECT_TRUE(ctx.are_equivalent_morphisms(h2, h2));
  EXPECT_FALSE(ctx.are_equivalent_morphisms(h2, h3));
  EXPECT_THROW(ctx.make_morphism(x, x, ctx.zero_cochain(-1), {1, 0, 0}), Error);
}

TEST(Cohomology, RelativeIntervalCarriesTheClass) {
  auto I = library::interval();
  std::vector<std::vector<int>> ends{{0, 1}};
  auto H = relative_cohomology(I, ends, CoeffGroupoid::lines(5), 0);
  EXPECT_EQ(H.pi0.str(), "Z/5");
  EXPECT_EQ(H.pi1, AbelianGroup{});
}

TEST(Cohomology, HomologyAgainstOracle) {
  for (const char* name : {"s2", "t2", "t3"}) {
    auto X = library::by_name(name);
    for (int m : {2, 3})
      for (int n = 0; n <= 2; ++n) {
        auto h = homology(absolute_complex(X), CoeffGroupoid::lines(m), n);
        EXPECT_EQ(as_oracle(h.pi0), reference::homology_mod(X, n - 1, m));
        EXPECT_EQ(as_oracle(h.pi1), reference::homology_mod(X, n, m));
      }
  }
}
