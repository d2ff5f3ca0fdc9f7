#pragma once
// Shared helpers for the unit tests and the acceptance binary.
#include <functional>
#include <numeric>
#include <random>

#include "dwcat/cohomology.hpp"
#include "dwcat/picard.hpp"
#include "oracle/classical.hpp"

namespace testing_support {

using namespace dwcat;

inline reference::Group as_oracle(const AbelianGroup& g) { return reference::canonical(g.rank, g.torsion); }

inline Int uniform(std::mt19937& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

// A random degree-n cocycle for lines coefficients: arbitrary labels and a
// phase cocycle made of pi0 generators plus a random coboundary.
inline Cocycle2 random_lines_cocycle(const CochainContext& ctx, const HnGroupoid& H, int n, std::mt19937& rng) {
  Int m = ctx.m();
  const auto& C = ctx.complex();
  Cochain a = ctx.zero_cochain(n);
  for (auto& o : a.v) o = Object{uniform(rng, -3, 3)};
  std::vector<Int> ph(C.count(n + 1), 0);
  for (const auto& g : H.pi0_generators) {
    Int k = uniform(rng, 0, m - 1);
    for (size_t i = 0; i < ph.size(); ++i) ph[i] += k * g.phi.phase[i];
  }
  std::vector<Int> b(C.count(n));
  for (auto& v : b) v = uniform(rng, 0, m - 1);
  auto db = ctx.coboundary_phases(n, b);
  for (size_t i = 0; i < ph.size(); ++i) ph[i] += db[i];
  return ctx.make_cocycle(a, ph);
}

// ---------------------------------------------------------------------------
// Random homomorphisms lines(m) -> lines(m') of the form j -> a j,
// p -> k p, phi_{s,t} = lambda s t.

// j -> a j on objects, p -> k p on phases, coherence lambda s t + kappa.
// lambda is 0 over a lines source.
struct LinearHom {
  Int a = 1, k = 1, lambda = 0, kappa = 0;
};

inline Homomorphism make_linear(const CoeffGroupoid& A, const CoeffGroupoid& B, LinearHom h) {
  return hom_of_groupoids(Homomorphism{
      A, B, [h](const Object& x) { return Object{h.a * x[0]}; }, [h](Int p) { return h.k * p; },
      [h, B](const Object& s, const Object& t) { return B.phases().norm(h.lambda * s[0] * t[0] + h.kappa); }});
}

inline LinearHom random_linear(const CoeffGroupoid& A, const CoeffGroupoid& B, std::mt19937& rng) {
  Int m = A.modulus(), mp = B.modulus();
  Int step = mp / std::gcd(m, mp);
  Int lambda = A.is_lines() ? 0 : uniform(rng, 0, mp - 1);
  return LinearHom{uniform(rng, -2, 2), step * uniform(rng, 0, 3), lambda, uniform(rng, 0, mp - 1)};
}

// A natural transformation out of F = make_linear(h) together with its target.
// Over a lines source the components are a constant c and kappa moves by -c;
// over the integers they are nu s^2 + mu s and lambda moves by 2 nu.
struct RandomNat {
  LinearHom target;
  NatTrans eta;
};

inline RandomNat random_nat(const CoeffGroupoid& A, const CoeffGroupoid& B, LinearHom h, std::mt19937& rng) {
  Int mp = B.modulus();
  LinearHom t = h;
  t.a = uniform(rng, -2, 2);
  std::function<Int(const Object&)> component;
  if (A.is_lines()) {
    Int c = uniform(rng, 0, mp - 1);
    t.kappa = mod(h.kappa - c, mp);
    component = [c](const Object&) { return c; };
  } else {
    Int nu = uniform(rng, 0, mp - 1), mu = uniform(rng, 0, mp - 1);
    t.lambda = mod(h.lambda + 2 * nu, mp);
    component = [nu, mu, mp](const Object& s) { return mod(nu * s[0] * s[0] + mu * s[0], mp); };
  }
  NatTrans eta{make_linear(A, B, h), make_linear(A, B, t), component};
  return RandomNat{t, validate(eta)};
}

inline CoeffGroupoid random_lines(std::mt19937& rng) {
  static const Int moduli[] = {2, 3, 4, 6, 12};
  return CoeffGroupoid::lines(moduli[uniform(rng, 0, 4)]);
}

}  // namespace testing_support
