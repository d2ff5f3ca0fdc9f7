#pragma once
// Cap product checks shared by the unit tests and the acceptance binary.
#include <optional>
#include <string>

#include "dwcat/cap.hpp"
#include "support.hpp"

namespace testing_support {

inline std::vector<reference::i64> to_i64(const std::vector<Int>& v) { return {v.begin(), v.end()}; }

inline std::map<int, reference::i64> chain_map(const Chain& z) { return {z.c.begin(), z.c.end()}; }

// Whether u - v is a boundary of an (r+1)-chain modulo the prime p.
inline bool homologous_mod(const DeltaComplex& X, int r, const std::vector<reference::i64>& u,
                           const std::vector<reference::i64>& v, reference::i64 p) {
  std::vector<reference::i64> d(u.size());
  for (size_t i = 0; i < u.size(); ++i) d[i] = u[i] - v[i];
  return reference::in_span_mod(reference::boundary_matrix(X, r + 1), d, p);
}

// Caps the fundamental cycle of a closed complex with every pi0 generator
// and random classes of H^p, for lines and for discrete Z/m coefficients, and
// compares with the classical cap (p prime). Also checks that nonzero
// classes cap to nonzero homology classes. Returns the first failure.
inline std::optional<std::string> compare_with_classical(const DeltaComplex& X, reference::i64 m, std::mt19937& rng) {
  Chain z = fundamental_cycle(X);
  int q = X.dim();
  auto where = [&](const char* what, int p) { return std::string(what) + " at p=" + std::to_string(p) + " m=" + std::to_string(m); };
  for (int p = 0; p < q; ++p) {
    CochainContext ctx(X, CoeffGroupoid::lines(m));
    ChainContext hctx(X, CoeffGroupoid::lines(m));
    auto H = cohomology(ctx, p);
    int eps = cap_phase_sign(p, q) * cap_sign(p + 1, q);
    for (int trial = 0; trial < 8; ++trial) {
      auto x = trial < int(H.pi0_generators.size()) ? H.pi0_generators[trial] : random_lines_cocycle(ctx, H, p, rng);
      auto c = cap(X, hctx, z, x);
      auto classical = reference::classical_cap(X, chain_map(z), q, to_i64(x.phi.phase), p + 1, m);
      for (auto& v : classical) v *= eps;
      if (!homologous_mod(X, q - p - 1, to_i64(c.xi), classical, m)) return where("lines cap differs", p);
      bool zero_class = H.class_is_zero(x);
      std::vector<reference::i64> none(classical.size(), 0);
      if (zero_class != homologous_mod(X, q - p - 1, classical, none, m))
        return where("duality fails for lines", p);
    }
  }
  for (int p = 0; p <= q; ++p) {
    auto A = CoeffGroupoid::cyclic(m);
    CochainContext ctx(X, A);
    ChainContext hctx(X, A);
    auto H = cohomology(ctx, p);
    for (const auto& x : H.pi0_generators) {
      auto c = cap(X, hctx, z, x);
      std::vector<reference::i64> a, mine;
      for (const auto& o : x.a.v) a.push_back(o[0]);
      for (const auto& o : c.x) mine.push_back(o[0]);
      auto classical = reference::classical_cap(X, chain_map(z), q, a, p, m);
      for (auto& v : classical) v *= cap_sign(p, q);
      if (!homologous_mod(X, q - p, mine, classical, m)) return where("discrete cap differs", p);
      std::vector<reference::i64> none(classical.size(), 0);
      if (homologous_mod(X, q - p, classical, none, m)) return where("duality fails for discrete", p);
    }
  }
  return std::nullopt;
}

// A random integer q-cycle: a combination of boundaries of (q+1)-simplices,
// plus a multiple of the fundamental cycle in top degree.
inline Chain random_cycle(const DeltaComplex& X, int q, std::mt19937& rng) {
  Chain z{q, {}};
  if (q == X.dim() && X.oriented()) z = fundamental_cycle(X).scaled(uniform(rng, 1, 3));
  if (q == 0) z.add(int(uniform(rng, 0, X.count(0) - 1)), uniform(rng, -2, 2));
  for (int j = 0; j < 4 && X.count(q + 1) > 0; ++j)
    z = z + boundary(X, Chain::simplex(q + 1, int(uniform(rng, 0, X.count(q + 1) - 1)), uniform(rng, -2, 2)));
  if (q == 0) {
    Int total = 0;
    for (auto [s, v] : z.c) total += v;
    z.add(0, -total);
  }
  return z;
}

inline Chain random_chain(const DeltaComplex& X, int k, std::mt19937& rng) {
  Chain w{k, {}};
  for (int j = 0; j < 5; ++j) w.add(int(uniform(rng, 0, X.count(k) - 1)), uniform(rng, -3, 3));
  return w;
}

// Random (z, w, x): the change-of-cycle morphism cap(z, x) -> cap(z + dw, x)
// must be a valid morphism. Degree-0 cycles are used in dimension 1.
inline std::optional<std::string> representative_independence(const DeltaComplex& X, int trials, std::mt19937& rng) {
  int n = X.dim();
  for (int t = 0; t < trials; ++t) {
    int q = int(uniform(rng, n >= 2 ? 1 : 0, n - 1));
    int p = int(uniform(rng, 0, q));
    Int m = uniform(rng, 2, 4);
    bool lines = p < q && uniform(rng, 0, 1) == 1;
    auto A = lines ? CoeffGroupoid::lines(m) : CoeffGroupoid::cyclic(m);
    CochainContext ctx(X, A);
    ChainContext hctx(X, A);
    auto H = cohomology(ctx, p);
    Cocycle2 x = ctx.zero_cocycle(p);
    if (lines) {
      x = random_lines_cocycle(ctx, H, p, rng);
    } else {
      for (const auto& g : H.pi0_generators)
        if (uniform(rng, 0, 1)) x = ctx.add(x, g);
    }
    Chain z = random_cycle(X, q, rng);
    if (z.zero()) z = z + boundary(X, Chain::simplex(q + 1, 0));
    Chain w = random_chain(X, q + 1, rng);
    Chain z2 = z + boundary(X, w);
    auto h = cap_change_of_cycle(X, hctx, w, x);
    auto before = cap(X, hctx, z, x), after = cap(X, hctx, z2, x);
    if (auto v = hctx.morphism_violation(before, after, h))
      return "trial " + std::to_string(t) + " (q=" + std::to_string(q) + ", p=" + std::to_string(p) + "): " + *v;
  }
  return std::nullopt;
}

}  // namespace testing_support
