// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any
// failure.
#include <chrono>
#include <functional>
#include <iostream>

#include "cap_checks.hpp"
#include "dwcat/check.hpp"
#include "dwcat/io.hpp"
#include "support.hpp"
#include "tqft_checks.hpp"

using namespace dwcat;
using namespace testing_support;

namespace {

constexpr double kClosedSeconds = 10.0;   // per untwisted partition function
constexpr int kRandomCycles = 100;        // per no-holonomy certificate
constexpr int kRepresentativeTrials = 100;  // per complex
constexpr int kGerbeTrials = 50;          // per degree
constexpr int kCoherenceTrials = 100;
constexpr unsigned kSeed = 20240521;

struct Outcome {
  bool pass = true;
  std::string detail;
  int checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct CatalogPair {
  FiniteGroup G;
  GroupCocycle w;
};

// Every catalog group with the trivial cocycle, plus every catalog cocycle.
std::vector<CatalogPair> catalog_pairs() {
  std::vector<CatalogPair> r;
  std::vector<std::string> groups;
  for (const auto& e : std::filesystem::directory_iterator(io::catalog_dir() / "groups"))
    groups.push_back(e.path().stem().string());
  std::sort(groups.begin(), groups.end());
  for (const auto& g : groups) {
    auto G = io::load_group(g);
    r.push_back({G, trivial_cocycle(G, 3)});
  }
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(io::catalog_dir() / "cocycles")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    auto w = io::cocycle_from_json(io::read_json(p), p.stem().string());
    r.push_back({w.G, w});
  }
  return r;
}

Cyclo rational(long num, long den) { return Cyclo::rational(1, Rational(num, den)); }

std::string frac(const Cyclo& z) { return z.str(); }

// ---------------------------------------------------------------------------

Outcome untwisted_values() {
  Outcome o;
  struct Case {
    std::string complex;
    FiniteGroup G;
    int rank;  // pi_1 is Z^rank
    Cyclo expected;
  };
  auto z2 = FiniteGroup::cyclic(2), z3 = FiniteGroup::cyclic(3), s3 = FiniteGroup::symmetric3();
  std::vector<Case> cases{{"s3", z2, 0, rational(1, 2)},    {"s3", z3, 0, rational(1, 3)},
                          {"s3", s3, 0, rational(1, 6)},    {"s2xs1", z2, 1, rational(1, 1)},
                          {"s2xs1", z3, 1, rational(1, 1)}, {"s2xs1", s3, 1, rational(1, 1)},
                          {"t3", z2, 3, rational(4, 1)}};
  double slowest = 0;
  for (const auto& c : cases) {
    auto X = library::by_name(c.complex);
    auto t0 = std::chrono::steady_clock::now();
    Cyclo Z = partition_function(X, trivial_cocycle(c.G, 3));
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    slowest = std::max(slowest, dt);
    Cyclo hom = rational(reference::commuting_tuples(c.G, c.rank), c.G.order());
    std::string where = "Z(" + c.complex + "; " + c.G.name() + ") = " + frac(Z);
    o.expect(Z == hom, where + ", homomorphism count gives " + frac(hom));
    o.expect(Z == c.expected, where + ", expected " + frac(c.expected));
    o.expect(dt < kClosedSeconds, where + " took " + std::to_string(dt) + " s");
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " values, slowest " + std::to_string(slowest) + " s";
  return o;
}

Outcome state_space_dimensions() {
  Outcome o;
  auto S2 = library::sphere2(), T2 = library::torus();
  auto pairs = catalog_pairs();
  for (const auto& [G, w] : pairs) {
    int d = StateSpace(S2, w).dimension();
    o.expect(d == 1, "dim Z(S2; " + G.name() + ", " + w.name + ") = " + std::to_string(d));
  }
  auto s3 = FiniteGroup::symmetric3();
  int ds3 = StateSpace(T2, trivial_cocycle(s3, 3)).dimension();
  o.expect(ds3 == 8, "dim Z(T2; s3) = " + std::to_string(ds3));
  o.expect(ds3 == reference::commuting_tuple_orbits(s3, 2), "dim Z(T2; s3) differs from the commuting-pair orbit count");
  int dz2 = StateSpace(T2, trivial_cocycle(FiniteGroup::cyclic(2), 3)).dimension();
  o.expect(dz2 == 4, "dim Z(T2; z2) = " + std::to_string(dz2));
  if (o.pass) o.detail = std::to_string(pairs.size()) + " catalog pairs on S2, T2 dims 8 and 4";
  return o;
}

Outcome twisted_cross_check() {
  Outcome o;
  auto z2 = io::load_group("z2"), z4 = io::load_group("z4");
  std::vector<std::vector<GroupCocycle>> batches{
      {trivial_cocycle(z2, 3), io::load_cocycle("p1", "z2", 3)},
      {trivial_cocycle(z4, 3), io::load_cocycle("p1", "z4", 3), io::load_cocycle("p2", "z4", 3),
       io::load_cocycle("p3", "z4", 3)}};
  int compared = 0;
  for (const char* name : {"s3", "s2xs1", "t3", "cyl_s2", "cyl_t2"}) {
    auto X = library::by_name(name);
    for (const auto& ws : batches) {
      auto rs = cross_check(X, ws, 1e7);
      for (size_t i = 0; i < ws.size(); ++i) {
        o.expect(rs[i].verdict == Verdict::Pass, std::string(name) + " with " + ws[i].G.name() + " " + ws[i].name +
                                                     ": " + verdict_name(rs[i].verdict) + " " + rs[i].detail);
        ++compared;
      }
    }
  }
  auto T3 = close_up(prism(library::torus()));
  o.expect(T3.faces == library::torus3().faces, "library T3 is not close_up(prism(T2))");
  for (const auto& ws : batches)
    for (const auto& w : ws) {
      Cyclo Z = partition_function(T3, w);
      int d = StateSpace(library::torus(), w).dimension();
      o.expect(Z == Cyclo::rational(int(w.modulus), d),
               "Z(T2 x S1; " + w.G.name() + " " + w.name + ") = " + Z.str() + ", dim = " + std::to_string(d));
    }
  if (o.pass) o.detail = std::to_string(compared) + " cobordism maps agree with the state sum; Z(T3) = dim Z(T2)";
  return o;
}

// A normalized coboundary 2-cocycle on Z/n, for fields on the circle.
GroupCocycle circle_cocycle(int n) {
  return coboundary_cocycle(FiniteGroup::cyclic(n), 2, n, [](const std::vector<int>& t) { return Int(t[0] * t[0]); },
                            "db");
}

Outcome tqft_laws() {
  Outcome o;
  std::mt19937 rng(kSeed);
  auto S1 = library::circle(), S2 = library::sphere2(), T2 = library::torus();
  auto z2p1 = cyclic_cocycle(2, 1), z4p1 = cyclic_cocycle(4, 1), z3p2 = cyclic_cocycle(3, 2);
  auto s3 = trivial_cocycle(FiniteGroup::symmetric3(), 3);
  for (const auto& w : {circle_cocycle(3), trivial_cocycle(FiniteGroup::symmetric3(), 2)})
    o.expect(is_identity(cobordism_map(prism(S1), w).matrix), "Z(prism(S1); " + w.name + ") is not the identity");
  for (const auto& w : {z2p1, z4p1, z3p2, s3}) {
    o.expect(is_identity(cobordism_map(prism(S2), w).matrix), "Z(prism(S2); " + w.name + ") is not the identity");
    o.expect(is_identity(cobordism_map(prism(T2), w, 2).matrix), "Z(prism(T2); " + w.name + ") is not the identity");
  }
  int compositions = 0;
  auto compose_check = [&](const DeltaComplex& A, const DeltaComplex& B, const GroupCocycle& w, const std::string& what) {
    o.expect(composes(A, B, w, 2), "Z(X2 o X1) != Z(X2) Z(X1) for " + what + " with " + w.name);
    ++compositions;
  };
  auto pT = random_permutation(T2, rng), pS = random_permutation(S2, rng), p1 = random_permutation(S1, rng);
  compose_check(prism(T2), prism(T2), z4p1, "stacked torus cylinders");
  compose_check(mapping_cylinder(T2, pT), mapping_cylinder(relabel(T2, pT), inverse(pT)), z2p1,
                "torus mapping cylinders");
  compose_check(mapping_cylinder(S2, pS), prism(relabel(S2, pS)), z3p2, "sphere mapping cylinder then cylinder");
  compose_check(prism(S1), mapping_cylinder(S1, p1), circle_cocycle(4), "circle cylinder then mapping cylinder");
  auto round = cobordism_map(glue(mapping_cylinder(T2, pT), mapping_cylinder(relabel(T2, pT), inverse(pT))), s3);
  o.expect(is_identity(round.matrix), "mapping cylinder followed by its inverse is not the identity");
  // Relabeling.
  auto T3 = library::torus3();
  o.expect(partition_function(relabel(T3, random_permutation(T3, rng)), z4p1) == partition_function(T3, z4p1),
           "Z(T3) changes under relabeling");
  auto C = prism(T2);
  o.expect(equal(cobordism_map(relabel(C, random_permutation(C, rng)), z2p1).matrix, cobordism_map(C, z2p1).matrix),
           "Z(prism(T2)) changes under relabeling");
  auto Tr = relabel(T2, pT);
  o.expect(StateSpace(Tr, s3).dimension() == StateSpace(T2, s3).dimension(), "dim Z(T2) changes under relabeling");
  if (o.pass) o.detail = "cylinders are identities, " + std::to_string(compositions) + " compositions, relabel invariant";
  return o;
}

Outcome cohomology_groups() {
  Outcome o;
  for (const auto& name : library::closed_manifolds()) {
    auto X = library::by_name(name);
    for (int m = 2; m <= 4; ++m) {
      std::vector<HnGroupoid> H;
      for (int n = 0; n <= 3; ++n) H.push_back(cohomology(X, CoeffGroupoid::lines(m), n));
      for (int n = 0; n <= 2; ++n) {
        std::string where = name + " n=" + std::to_string(n) + " m=" + std::to_string(m);
        o.expect(as_oracle(H[n].pi0) == reference::cohomology_mod(X, n + 1, m), "pi0 differs from H^{n+1} at " + where);
        o.expect(as_oracle(H[n].pi1) == reference::cohomology_mod(X, n, m), "pi1 differs from H^n at " + where);
        o.expect(H[n].pi0 == H[n + 1].pi1, "pi0 H^n differs from pi1 H^{n+1} at " + where);
      }
    }
  }
  if (o.pass) o.detail = std::to_string(o.checks) + " group comparisons";
  return o;
}

Outcome cap_products() {
  Outcome o;
  std::mt19937 rng(kSeed);
  for (const auto& name : library::closed_manifolds())
    for (int m : {2, 3}) {
      auto r = compare_with_classical(library::by_name(name), m, rng);
      o.expect(!r, name + ": " + r.value_or(""));
    }
  int witnesses = 0;
  for (auto Y : {library::circle(), library::sphere2(), library::torus()}) {
    auto X = prism(Y);
    auto Ysup = boundary_support(X);
    Chain z = fundamental_cycle(X);
    int p = z.dim;
    for (int q = 0; q <= p - 1; ++q)
      for (auto A : {CoeffGroupoid::lines(3), CoeffGroupoid::cyclic(2)}) {
        auto H = cohomology(X, A, q);
        for (const auto& x : H.pi0_generators) {
          try {
            auto r = cap_del_check(X, Ysup, z, x, A);
            auto onY = HomologyPair{X, Ysup, A}.on_y();
            o.expect(!onY.morphism_violation(r.lhs, r.rhs, r.witness), "cap_del witness is not a morphism");
            ++witnesses;
          } catch (const Error& e) {
            o.expect(false, std::string("cap_del: ") + e.what());
          }
        }
      }
  }
  for (const auto& name : library::closed_manifolds()) {
    auto r = representative_independence(library::by_name(name), kRepresentativeTrials, rng);
    o.expect(!r, name + ": " + r.value_or(""));
  }
  if (o.pass)
    o.detail = "classical cap on 6 complexes, " + std::to_string(witnesses) + " boundary witnesses, " +
               std::to_string(6 * kRepresentativeTrials) + " change-of-cycle morphisms";
  return o;
}

Outcome no_holonomy() {
  Outcome o;
  std::mt19937 rng(kSeed);
  long fields = 0, cycles = 0;
  auto certify = [&](const std::string& name, const GroupCocycle& w) {
    auto Y = library::by_name(name);
    StateSpace S(Y, w);
    for (const auto& orbit : S.orbits()) {
      const Field& f = S.reps()[orbit.anchor];
      std::vector<int> h1(Y.count(0)), h2(2 * Y.count(0));
      for (auto& g : h1) g = int(rng() % w.G.order());
      for (auto& g : h2) g = int(rng() % w.G.order());
      try {
        auto L = line_of_field(Y, w, f, h1, h2, kRandomCycles, unsigned(rng()));
        cycles += L.cycles_checked;
        ++fields;
      } catch (const Error& e) {
        o.expect(false, name + " with " + w.G.name() + " " + w.name + ": " + e.what());
      }
    }
  };
  for (const auto& [G, w] : catalog_pairs())
    for (const char* name : {"s2", "t2"}) certify(name, w);
  for (int n : {2, 3, 4}) {
    auto G = FiniteGroup::cyclic(n);
    certify("s1", trivial_cocycle(G, 2));
    certify("s1", circle_cocycle(n));
  }
  for (int n : {2, 3}) {
    auto G = FiniteGroup::cyclic(n);
    auto beta = [n](const std::vector<int>& t) { return Int(t[0] * t[1] + t[2] * (t[0] + 1)) % n; };
    auto w4 = coboundary_cocycle(G, 4, n, beta, "db");
    for (const char* name : {"s3", "s2xs1", "t3"}) {
      certify(name, trivial_cocycle(G, 4));
      certify(name, w4);
    }
  }
  if (o.pass) o.detail = std::to_string(fields) + " fields, " + std::to_string(cycles) + " cycles without holonomy";
  return o;
}

Outcome gerbes() {
  Outcome o;
  std::mt19937 rng(kSeed);
  int zero = 0, nonzero = 0;
  auto U1 = covers::torus9();
  auto N1 = cech_nerve(U1);
  auto U2 = cover_of_complex(library::sphere3());
  auto N2 = cech_nerve(U2);
  for (int t = 0; t < kGerbeTrials; ++t) {
    Int m = uniform(rng, 2, 4);
    CochainContext c1(N1, CoeffGroupoid::lines(m));
    auto H1 = cohomology(c1, 1);
    auto x = random_lines_cocycle(c1, H1, 1, rng);
    auto g = gerbe1_from_cocycle(U1, x, m);
    o.expect(cocycle_from_gerbe(g) == x, "degree 1 round trip fails");
    o.expect(gerbe1_from_cocycle(U1, cocycle_from_gerbe(g), m).labels.v == g.labels.v, "degree 1 labels change");
    bool z = H1.class_is_zero(x);
    auto obj = find_object(g);
    o.expect(obj.has_value() == z, "find_object disagrees with the class");
    if (obj) o.expect(!object_violation(g, *obj), "returned object violates the section equation");
    (z ? zero : nonzero)++;
    CochainContext c2(N2, CoeffGroupoid::lines(m));
    auto H2 = cohomology(c2, 2);
    auto y = random_lines_cocycle(c2, H2, 2, rng);
    auto g2 = gerbe2_from_cocycle(U2, y, m);
    o.expect(cocycle_from_gerbe(g2) == y, "degree 2 round trip fails");
  }
  o.expect(zero > 0 && nonzero > 0, "random gerbes did not cover both zero and nonzero classes");
  auto G = FiniteGroup::cyclic(2);
  auto w = make_group_cocycle(G, 3, 2, [](const std::vector<int>& t) {
    return Int(t[0] == 1 && t[1] == 1 && t[2] == 1);
  }, "w");
  for (int N : {4, 5}) {
    Nerve nerve(G, N);
    auto H = cohomology(nerve.complex(), CoeffGroupoid::lines(2), 2);
    o.expect(!H.class_is_zero(nerve_cocycle(nerve, w)), "the Z/2 3-cocycle is trivial on nerve(Z/2, " +
                                                            std::to_string(N) + ")");
  }
  if (o.pass)
    o.detail = std::to_string(kGerbeTrials) + " round trips per degree, " + std::to_string(zero) + " trivial and " +
               std::to_string(nonzero) + " nontrivial 1-gerbes, nonzero Z/2 class";
  return o;
}

Outcome coherence() {
  Outcome o;
  std::mt19937 rng(kSeed);
  for (int t = 0; t < kCoherenceTrials; ++t) {
    try {
      auto A = CoeffGroupoid::integers(), B = random_lines(rng), C = random_lines(rng), D = random_lines(rng);
      auto hf = random_linear(A, B, rng), hg = random_linear(B, C, rng), hh = random_linear(C, D, rng);
      auto F = make_linear(A, B, hf), G = make_linear(B, C, hg), H = make_linear(C, D, hh);
      o.expect(equal_on_window(compose(compose(F, G), H), compose(F, compose(G, H))), "composition is not associative");
      o.expect(equal_on_window(compose(identity_hom(A), F), F) && equal_on_window(compose(F, identity_hom(B)), F),
               "identity is not a unit for composition");
      hom_of_groupoids(compose(compose(F, G), H));
      auto e1 = random_nat(A, B, hf, rng), e2 = random_nat(A, B, e1.target, rng), e3 = random_nat(A, B, e2.target, rng);
      auto t1 = random_nat(B, C, hg, rng), t2 = random_nat(B, C, t1.target, rng);
      auto u1 = random_nat(C, D, hh, rng);
      auto lhs = horizontal(vertical(e1.eta, e2.eta), vertical(t1.eta, t2.eta));
      auto rhs = vertical(horizontal(e1.eta, t1.eta), horizontal(e2.eta, t2.eta));
      validate(lhs);
      o.expect(equal_on_window(lhs, rhs), "interchange law fails");
      o.expect(equal_on_window(vertical(vertical(e1.eta, e2.eta), e3.eta), vertical(e1.eta, vertical(e2.eta, e3.eta))),
               "vertical composition is not associative");
      o.expect(equal_on_window(horizontal(horizontal(e1.eta, t1.eta), u1.eta),
                               horizontal(e1.eta, horizontal(t1.eta, u1.eta))),
               "horizontal composition is not associative");
      o.expect(equal_on_window(vertical(identity_nat(F), e1.eta), e1.eta) &&
                   equal_on_window(vertical(e1.eta, identity_nat(e1.eta.to)), e1.eta),
               "identity transformation is not a vertical unit");
      o.expect(equal_on_window(horizontal(identity_nat(identity_hom(A)), e1.eta), e1.eta),
               "identity is not a horizontal unit");
    } catch (const Error& e) {
      o.expect(false, std::string("trial ") + std::to_string(t) + ": " + e.what());
    }
  }
  if (o.pass) o.detail = std::to_string(kCoherenceTrials) + " random triples, " + std::to_string(o.checks) + " laws";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"untwisted partition functions", untwisted_values},
      {"state space dimensions", state_space_dimensions},
      {"twisted cross-check", twisted_cross_check},
      {"TQFT laws", tqft_laws},
      {"cohomology groupoids", cohomology_groups},
      {"cap product", cap_products},
      {"no-holonomy certificates", no_holonomy},
      {"gerbes", gerbes},
      {"coherence laws", coherence},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("%s criterion %zu (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), dt);
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
