#include <gtest/gtest.h>

#include "dwcat/check.hpp"
#include "support.hpp"
#include "tqft_checks.hpp"

using namespace dwcat;
using namespace testing_support;

namespace {

Cyclo q(Int M, long num, long den = 1) { return Cyclo::rational(int(M), Rational(num, den)); }

// Random labels on a spanning tree, then a random flat completion.
Field random_flat_field(const DeltaComplex& X, const FiniteGroup& G, std::mt19937& rng) {
  Forest F = spanning_forest(X, {});
  Field partial(X.count(1), -1);
  for (int e = 0; e < X.count(1); ++e)
    if (F.tree[e]) partial[e] = int(rng() % G.order());
  auto all = FieldSolver(X, G).all(partial);
  return all[rng() % all.size()];
}

}  // namespace

TEST(DW, CyclicCocyclesAreNormalizedCocycles) {
  for (int n : {2, 3, 4})
    for (int p = 0; p < n; ++p) {
      auto w = cyclic_cocycle(n, p);
      EXPECT_NO_THROW(validate(w));
      EXPECT_EQ(w.modulus, n * n);
    }
  auto G = FiniteGroup::cyclic(2);
  EXPECT_THROW(make_group_cocycle(G, 3, 2, [](const std::vector<int>& t) { return Int(t[0]); }, "bad"), Error);
}

TEST(DW, PartitionFunctionsMatchHomomorphismCounts) {
  struct Case {
    const char* complex;
    FiniteGroup G;
    int rank;  // pi_1 = Z^rank
  };
  std::vector<Case> cases{{"s3", FiniteGroup::cyclic(2), 0},        {"s3", FiniteGroup::cyclic(3), 0},
                          {"s2xs1", FiniteGroup::cyclic(2), 1},     {"s2xs1", FiniteGroup::symmetric3(), 1},
                          {"t3", FiniteGroup::cyclic(2), 3}};
  for (const auto& c : cases) {
    auto X = library::by_name(c.complex);
    auto Z = partition_function(X, trivial_cocycle(c.G, 3));
    EXPECT_EQ(Z, q(1, reference::commuting_tuples(c.G, c.rank), c.G.order())) << c.complex << " " << c.G.name();
  }
}

TEST(DW, TwistedTorusThreeWithZ2) {
  auto X = library::torus3();
  EXPECT_EQ(partition_function(X, cyclic_cocycle(2, 1)), q(4, 4));
}

TEST(DW, StateSpaceDimensions) {
  auto T = library::torus();
  EXPECT_EQ(StateSpace(T, trivial_cocycle(FiniteGroup::cyclic(2), 3)).dimension(), 4);
  EXPECT_EQ(StateSpace(T, trivial_cocycle(FiniteGroup::symmetric3(), 3)).dimension(),
            reference::commuting_tuple_orbits(FiniteGroup::symmetric3(), 2));
  EXPECT_EQ(StateSpace(T, cyclic_cocycle(4, 1)).dimension(), 16);
  EXPECT_EQ(StateSpace(library::sphere2(), cyclic_cocycle(3, 1)).dimension(), 1);
  EXPECT_THROW(StateSpace(T, trivial_cocycle(FiniteGroup::cyclic(2), 2)), Error);
}

TEST(DW, OrbitSizesAddUpToAllFlatFields) {
  auto T = library::torus();
  auto G = FiniteGroup::symmetric3();
  StateSpace S(T, trivial_cocycle(G, 3));
  Rational total = 0;
  for (const auto& o : S.orbits()) total += o.size;
  auto flat = FieldSolver(T, G).all(Field(T.count(1), -1));
  EXPECT_EQ(total, Rational(long(flat.size())));
}

TEST(DW, ActionIsGaugeInvariantOnClosedComplexes) {
  std::mt19937 rng(51);
  auto X = library::torus3();
  auto w = cyclic_cocycle(4, 3);
  auto z = fundamental_cycle(X);
  for (int t = 0; t < 5; ++t) {
    Field f = random_flat_field(X, w.G, rng);
    std::vector<int> h(X.count(0));
    for (auto& g : h) g = int(rng() % 4);
    Field g = gauge_transform(X, w.G, f, h);
    EXPECT_TRUE(is_flat(X, w.G, g));
    EXPECT_EQ(field_action(X, w, f, z), field_action(X, w, g, z));
  }
}

TEST(DW, FastActionEqualsCapPairing) {
  std::mt19937 rng(52);
  auto X = prism(library::torus());
  auto z = fundamental_cycle(X);
  for (auto w : {cyclic_cocycle(4, 1), cyclic_cocycle(3, 2)}) {
    int nonzero = 0;
    for (int t = 0; t < 20; ++t) {
      Field f = random_flat_field(X, w.G, rng);
      Chain c = Chain::simplex(3, int(rng() % X.count(3)));
      EXPECT_EQ(field_action(X, w, f, c), field_cocycle_pairing(X, w, f, c));
      EXPECT_EQ(field_action(X, w, f, z), field_cocycle_pairing(X, w, f, z));
      nonzero += field_action(X, w, f, c) != 0;
    }
    EXPECT_GT(nonzero, 0);
  }
}

TEST(DW, CylinderIsTheIdentity) {
  for (auto w : {cyclic_cocycle(2, 1), cyclic_cocycle(4, 1), trivial_cocycle(FiniteGroup::symmetric3(), 3)}) {
    auto M = cobordism_map(prism(library::torus()), w);
    EXPECT_TRUE(is_identity(M.matrix)) << w.name;
  }
  auto w2 = trivial_cocycle(FiniteGroup::cyclic(3), 2);
  EXPECT_TRUE(is_identity(cobordism_map(prism(library::circle()), w2).matrix));
}

TEST(DW, GluingComposes) {
  std::mt19937 rng(53);
  auto Y = library::sphere2();
  auto perm = random_permutation(Y, rng);
  auto w = cyclic_cocycle(3, 1);
  EXPECT_TRUE(composes(prism(Y), prism(Y), w));
  EXPECT_TRUE(composes(mapping_cylinder(Y, perm), mapping_cylinder(relabel(Y, perm), inverse(perm)), w));
}

TEST(DW, RelabelingDoesNotChangeTheMatrix) {
  std::mt19937 rng(54);
  auto X = prism(library::torus());
  auto w = cyclic_cocycle(2, 1);
  auto M = cobordism_map(X, w);
  auto R = cobordism_map(relabel(X, random_permutation(X, rng)), w);
  EXPECT_TRUE(equal(M.matrix, R.matrix));
}

TEST(DW, CrossCheckAgainstStateSum) {
  auto z2 = FiniteGroup::cyclic(2);
  std::vector<GroupCocycle> ws{trivial_cocycle(z2, 3), cyclic_cocycle(2, 1)};
  for (const char* name : {"s3", "s2xs1", "cyl_s2"})
    for (const auto& r : cross_check(library::by_name(name), ws)) EXPECT_EQ(r.verdict, Verdict::Pass) << name << r.detail;
  EXPECT_EQ(cross_check(library::torus3(), trivial_cocycle(FiniteGroup::symmetric3(), 3), 10).verdict, Verdict::Skip);
}

TEST(DW, LineOfFieldOnTheSphere) {
  std::mt19937 rng(55);
  auto Y = library::sphere2();
  auto w = cyclic_cocycle(2, 1);
  for (const auto& f : FieldSolver(Y, w.G).all(Field(Y.count(1), -1))) {
    std::vector<int> h1(Y.count(0)), h2(2 * Y.count(0));
    for (auto& g : h1) g = int(rng() % 2);
    for (auto& g : h2) g = int(rng() % 2);
    auto L = line_of_field(Y, w, f, h1, h2, 10, 7);
    EXPECT_GT(L.cycles_checked, 10);
  }
}

TEST(DW, PullbackAlongProjection) {
  auto K = FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  std::vector<int> proj(K.order());
  for (int a = 0; a < K.order(); ++a) proj[a] = a / 2;
  auto w = pullback_cocycle(cyclic_cocycle(2, 1), K, proj, "pulled");
  EXPECT_NO_THROW(validate(w));
  EXPECT_EQ(StateSpace(library::sphere2(), w).dimension(), 1);
  std::vector<int> bad(K.order(), 1);
  EXPECT_THROW(pullback_cocycle(cyclic_cocycle(2, 1), K, bad, "bad"), Error);
}
