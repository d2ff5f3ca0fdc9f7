#pragma once
// Cochains and chains with coefficients in a Picard groupoid, cocycles
// (a, phi), the cohomology and homology groupoids, relative versions,
// pullbacks, and the connecting maps of the pair sequence.
//
// Both coefficient models have identity structure phases and trivial
// braiding, so every computation splits into an object-level complex over
// pi0 and a phase-level complex over pi1.
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "picard.hpp"
#include "simplicial.hpp"
#include "smith.hpp"

namespace dwcat {

// A finite free chain complex with signed face lists; either all simplices
// of X, or those outside a subcomplex (relative chains).
struct ChainComplex {
  // faces[k][s] = (local face index, sign) pairs
  std::vector<std::vector<std::vector<std::pair<int, int>>>> faces;
  std::vector<std::vector<int>> simplices;  // X-index of each local simplex
  std::vector<std::vector<int>> local;      // X-index -> local index or -1

  int top() const { return int(faces.size()) - 1; }
  int count(int k) const { return k < 0 || k > top() ? 0 : int(faces[k].size()); }

  Matrix boundary(int k) const {
    Matrix m(count(k - 1), count(k));
    if (k <= 0) return m;
    for (int s = 0; s < count(k); ++s)
      for (auto [f, sg] : faces[k][s]) m(f, s) += sg;
    return m;
  }
  Matrix coboundary(int k) const {
    Matrix b = boundary(k + 1), m(b.cols, b.rows);
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j) m(j, i) = b(i, j);
    return m;
  }
};

inline ChainComplex relative_complex(const DeltaComplex& X, const std::vector<std::vector<int>>& sub) {
  ChainComplex C;
  int n = X.dim();
  C.faces.resize(n + 1);
  C.simplices.resize(n + 1);
  C.local.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    std::set<int> in;
    if (k < int(sub.size())) in.insert(sub[k].begin(), sub[k].end());
    C.local[k].assign(X.count(k), -1);
    for (int s = 0; s < X.count(k); ++s)
      if (!in.count(s)) {
        C.local[k][s] = int(C.simplices[k].size());
        C.simplices[k].push_back(s);
      }
  }
  for (int k = 0; k <= n; ++k)
    for (int s : C.simplices[k]) {
      std::vector<std::pair<int, int>> f;
      if (k > 0)
        for (int j = 0; j <= k; ++j) {
          int x = X.faces[k][s][j];
          if (x >= 0 && C.local[k - 1][x] >= 0) f.push_back({C.local[k - 1][x], j % 2 ? -1 : 1});
        }
      C.faces[k].push_back(f);
    }
  return C;
}

inline ChainComplex absolute_complex(const DeltaComplex& X) { return relative_complex(X, {}); }

// H^k(C; Z/d) (d = 0: integer coefficients) as a subquotient with
// representative cocycles.
inline Subquotient cohomology_group(const ChainComplex& C, int k, Int d) {
  int N = C.count(k);
  if (N == 0 || k < 0) return subquotient(Matrix(0, 0), Matrix(0, 0));
  Matrix delta = C.coboundary(k);
  Matrix zgen;
  if (d == 0) {
    zgen = kernel_basis(delta);
  } else {
    Matrix K = kernel_basis(hconcat(delta, scalar_identity(delta.rows, d)));
    zgen = Matrix(N, K.cols);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < K.cols; ++j) zgen(i, j) = K(i, j);
  }
  Matrix bgen = k > 0 ? C.coboundary(k - 1) : Matrix(N, 0);
  if (d != 0) bgen = hconcat(bgen, scalar_identity(N, d));
  return subquotient(zgen, bgen);
}

// H_k(C; Z/d).
inline Subquotient homology_group(const ChainComplex& C, int k, Int d) {
  int N = C.count(k);
  if (N == 0 || k < 0) return subquotient(Matrix(0, 0), Matrix(0, 0));
  Matrix del = C.boundary(k);
  Matrix zgen;
  if (d == 0) {
    zgen = kernel_basis(del);
  } else {
    Matrix K = kernel_basis(hconcat(del, scalar_identity(del.rows, d)));
    zgen = Matrix(N, K.cols);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < K.cols; ++j) zgen(i, j) = K(i, j);
  }
  Matrix bgen = C.boundary(k + 1);
  if (d != 0) bgen = hconcat(bgen, scalar_identity(N, d));
  return subquotient(zgen, bgen);
}

// Invariant-factor form of a direct sum of cyclic groups (0 = Z).
inline AbelianGroup invariant_form(const std::vector<Int>& orders) {
  int n = int(orders.size());
  Matrix D(n, n);
  for (int i = 0; i < n; ++i) D(i, i) = orders[i];
  Smith s = smith(D);
  AbelianGroup g;
  for (int i = 0; i < n; ++i) {
    Int x = i < s.rank ? s.D(i, i) : 0;
    if (x == 0)
      ++g.rank;
    else if (x != 1)
      g.torsion.push_back(x);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Cochains, cochain morphisms and cocycles.

struct Cochain {
  int degree = 0;
  std::vector<Object> v;
  bool operator==(const Cochain&) const = default;
};

struct CochainMorphism {
  int degree = 0;
  Cochain src, dst;
  std::vector<Int> phase;
  bool operator==(const CochainMorphism&) const = default;
};

struct Cocycle2 {
  int degree = 0;
  Cochain a;
  CochainMorphism phi;  // da -> 0 on (degree+1)-simplices
  bool operator==(const Cocycle2&) const = default;
};

// Morphism (a, phi) -> (a', phi') in the cokernel: b of degree n-1 and
// f: a -> db + a'.
struct CohClassMorphism {
  Cochain b;
  CochainMorphism f;
};

// Everything about (co)chains on one chain complex with fixed coefficients.
class CochainContext {
public:
  CochainContext(ChainComplex C, CoeffGroupoid A) : C_(std::move(C)), A_(std::move(A)) {}
  CochainContext(const DeltaComplex& X, CoeffGroupoid A) : C_(absolute_complex(X)), A_(std::move(A)) {}

  const ChainComplex& complex() const { return C_; }
  const CoeffGroupoid& coeff() const { return A_; }
  Int m() const { return A_.modulus(); }

  Cochain zero_cochain(int k) const { return Cochain{k, std::vector<Object>(C_.count(k), A_.zero())}; }
  std::vector<Int> zero_phases(int k) const { return std::vector<Int>(C_.count(k), 0); }

  Cochain coboundary(const Cochain& a) const {
    check(a);
    Cochain r = zero_cochain(a.degree + 1);
    for (int t = 0; t < C_.count(a.degree + 1); ++t)
      for (auto [f, sg] : C_.faces[a.degree + 1][t])
        r.v[t] = A_.tensor(r.v[t], sg > 0 ? a.v[f] : A_.negate(a.v[f]));
    return r;
  }
  // Phase-level coboundary of a phase cochain of degree k.
  std::vector<Int> coboundary_phases(int k, const std::vector<Int>& p) const {
    std::vector<Int> r(C_.count(k + 1), 0);
    for (int t = 0; t < C_.count(k + 1); ++t) {
      Int s = 0;
      for (auto [f, sg] : C_.faces[k + 1][t]) s += sg * p[f];
      r[t] = mod(s, m());
    }
    return r;
  }
  CochainMorphism coboundary(const CochainMorphism& f) const {
    return CochainMorphism{f.degree + 1, coboundary(f.src), coboundary(f.dst), coboundary_phases(f.degree, f.phase)};
  }
  // chi_a: d(da) -> 0 with identity phases; d(da) vanishes on the nose.
  CochainMorphism chi(const Cochain& a) const {
    Cochain dda = coboundary(coboundary(a));
    for (const auto& x : dda.v)
      if (x != A_.zero()) fail("d^2 is not zero on the object level");
    return CochainMorphism{a.degree + 2, dda, zero_cochain(a.degree + 2), zero_phases(a.degree + 2)};
  }

  // First simplex where (a, phi) fails to be a cocycle, with a reason.
  std::optional<std::pair<int, std::string>> cocycle_violation(const Cochain& a, const CochainMorphism& phi) const {
    check(a);
    int n = a.degree;
    if (phi.degree != n + 1 || int(phi.phase.size()) != C_.count(n + 1))
      return std::pair<int, std::string>{-1, "trivialization has the wrong degree or length"};
    Cochain da = coboundary(a);
    for (int t = 0; t < C_.count(n + 1); ++t) {
      if (!A_.hom_nonempty(da.v[t], A_.zero()))
        return std::pair<int, std::string>{t, "no morphism da -> 0 on this simplex"};
      if (A_.normalize(phi.src.v.at(t)) != da.v[t] || A_.normalize(phi.dst.v.at(t)) != A_.zero())
        return std::pair<int, std::string>{t, "trivialization does not go from da to 0"};
    }
    auto dphi = coboundary_phases(n + 1, phi.phase);
    for (int r = 0; r < C_.count(n + 2); ++r)
      if (dphi[r] != 0) return std::pair<int, std::string>{r, "d(phi) differs from chi_a"};
    return std::nullopt;
  }

  Cocycle2 make_cocycle(const Cochain& a, const CochainMorphism& phi) const {
    if (auto v = cocycle_violation(a, phi))
      fail("not a cocycle: ", v->second, " at ", a.degree + (v->second.find("d(phi)") == 0 ? 2 : 1),
           "-simplex ", v->first);
    return Cocycle2{a.degree, a, phi};
  }
  // Cocycle from object values and trivialization phases.
  Cocycle2 make_cocycle(const Cochain& a, const std::vector<Int>& phases) const {
    CochainMorphism phi{a.degree + 1, coboundary(a), zero_cochain(a.degree + 1), norm(phases)};
    return make_cocycle(a, phi);
  }
  Cocycle2 zero_cocycle(int n) const { return make_cocycle(zero_cochain(n), zero_phases(n + 1)); }
  Cocycle2 phase_cocycle(int n, const std::vector<Int>& phases) const {
    return make_cocycle(zero_cochain(n), phases);
  }

  Cocycle2 add(const Cocycle2& x, const Cocycle2& y) const {
    Cochain a = x.a;
    for (size_t i = 0; i < a.v.size(); ++i) a.v[i] = A_.tensor(x.a.v[i], y.a.v[i]);
    std::vector<Int> p(x.phi.phase.size());
    for (size_t i = 0; i < p.size(); ++i) p[i] = x.phi.phase[i] + y.phi.phase[i];
    return make_cocycle(a, p);
  }
  Cocycle2 negate(const Cocycle2& x) const {
    Cochain a = x.a;
    for (auto& o : a.v) o = A_.negate(o);
    std::vector<Int> p(x.phi.phase.size());
    for (size_t i = 0; i < p.size(); ++i) p[i] = -x.phi.phase[i];
    return make_cocycle(a, p);
  }

  // Whether (b, f) is a morphism x -> y in the cokernel.
  std::optional<std::string> morphism_violation(const Cocycle2& x, const Cocycle2& y, const CohClassMorphism& h) const {
    int n = x.degree;
    if (h.b.degree != n - 1 || int(h.b.v.size()) != C_.count(n - 1)) return "b has the wrong degree";
    Cochain db = n >= 1 ? coboundary(h.b) : zero_cochain(n);
    if (int(h.f.phase.size()) != C_.count(n)) return "f has the wrong length";
    for (int s = 0; s < C_.count(n); ++s) {
      Object target = A_.tensor(db.v[s], y.a.v[s]);
      if (!A_.hom_nonempty(x.a.v[s], target)) return "no morphism a -> db + a' on simplex " + std::to_string(s);
    }
    auto df = coboundary_phases(n, h.f.phase);
    for (int t = 0; t < C_.count(n + 1); ++t)
      if (mod(x.phi.phase[t] - df[t] - y.phi.phase[t], m()) != 0)
        return "phase square fails on simplex " + std::to_string(t);
    return std::nullopt;
  }

  CohClassMorphism make_morphism(const Cocycle2& x, const Cocycle2& y, const Cochain& b, const std::vector<Int>& f) const {
    Cochain db = x.degree >= 1 ? coboundary(b) : zero_cochain(x.degree);
    Cochain tgt = db;
    for (size_t s = 0; s < tgt.v.size(); ++s) tgt.v[s] = A_.tensor(db.v[s], y.a.v[s]);
    CohClassMorphism h{b, CochainMorphism{x.degree, x.a, tgt, norm(f)}};
    if (auto v = morphism_violation(x, y, h)) fail("not a morphism of cocycles: ", *v);
    return h;
  }

  // A morphism x -> y, found by solving the linear systems, if one exists.
  std::optional<CohClassMorphism> find_morphism(const Cocycle2& x, const Cocycle2& y) const {
    int n = x.degree;
    Cochain b = zero_cochain(n - 1);
    std::vector<Int> f = zero_phases(n);
    if (!A_.is_lines()) {
      Matrix delta = n >= 1 ? C_.coboundary(n - 1) : Matrix(C_.count(n), 0);
      for (int c = 0; c < A_.object_length(); ++c) {
        Int d = A_.group().modulus_at(c);
        std::vector<Int> rhs(C_.count(n));
        for (int s = 0; s < C_.count(n); ++s) rhs[s] = x.a.v[s][c] - y.a.v[s][c];
        auto sol = solve_mod(delta, rhs, d);
        if (!sol) return std::nullopt;
        for (int s = 0; s < C_.count(n - 1); ++s) b.v[s][c] = (*sol)[s];
      }
      for (auto& o : b.v) o = A_.normalize(o);
    } else {
      Matrix delta = C_.coboundary(n);
      std::vector<Int> rhs(C_.count(n + 1));
      for (int t = 0; t < C_.count(n + 1); ++t) rhs[t] = x.phi.phase[t] - y.phi.phase[t];
      auto sol = solve_mod(delta, rhs, m());
      if (!sol) return std::nullopt;
      f = *sol;
    }
    return make_morphism(x, y, b, f);
  }
  bool isomorphic(const Cocycle2& x, const Cocycle2& y) const { return find_morphism(x, y).has_value(); }

  // Existence of (c, g) identifying two parallel morphisms.
  bool are_equivalent_morphisms(const CohClassMorphism& h1, const CohClassMorphism& h2) const {
    int n = h1.f.degree;
    if (!A_.is_lines()) {
      Matrix delta = n >= 2 ? C_.coboundary(n - 2) : Matrix(C_.count(n - 1), 0);
      for (int c = 0; c < A_.object_length(); ++c) {
        Int d = A_.group().modulus_at(c);
        std::vector<Int> rhs(C_.count(n - 1));
        for (int s = 0; s < C_.count(n - 1); ++s) rhs[s] = h1.b.v[s][c] - h2.b.v[s][c];
        if (!solve_mod(delta, rhs, d)) return false;
      }
      return true;
    }
    Matrix delta = n >= 1 ? C_.coboundary(n - 1) : Matrix(C_.count(n), 0);
    std::vector<Int> rhs(C_.count(n));
    for (int s = 0; s < C_.count(n); ++s) rhs[s] = h2.f.phase[s] - h1.f.phase[s];
    return solve_mod(delta, rhs, m()).has_value();
  }

  std::vector<Int> norm(std::vector<Int> p) const {
    for (auto& x : p) x = mod(x, m());
    return p;
  }

private:
  void check(const Cochain& a) const {
    if (int(a.v.size()) != C_.count(a.degree))
      fail("cochain of degree ", a.degree, " has ", a.v.size(), " values, expected ", C_.count(a.degree));
  }
  ChainComplex C_;
  CoeffGroupoid A_;
};

// ---------------------------------------------------------------------------
// The groupoid H^n with pi0 and pi1 as explicit subquotients.

struct HnGroupoid {
  CoeffGroupoid coeff;
  int degree = 0;
  AbelianGroup pi0, pi1;
  std::vector<Subquotient> pi0_parts, pi1_parts;  // one per coefficient summand
  std::vector<Cocycle2> pi0_generators;

  // Coordinates of a cocycle's class in pi0, concatenated over parts.
  std::vector<Int> pi0_coordinates(const Cocycle2& x) const {
    std::vector<Int> out;
    if (coeff.is_lines()) {
      std::vector<Int> p = x.phi.phase;
      auto c = pi0_parts.at(0).coordinates(p);
      out.insert(out.end(), c.begin(), c.end());
      return out;
    }
    for (int c = 0; c < coeff.object_length(); ++c) {
      std::vector<Int> v;
      for (const auto& o : x.a.v) v.push_back(o[c]);
      auto r = pi0_parts.at(c).coordinates(v);
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }
  bool class_is_zero(const Cocycle2& x) const {
    for (Int v : pi0_coordinates(x))
      if (v != 0) return false;
    return true;
  }
};

inline std::vector<Int> orders_of(const std::vector<Subquotient>& parts) {
  std::vector<Int> o;
  for (const auto& p : parts) o.insert(o.end(), p.orders.begin(), p.orders.end());
  return o;
}

inline HnGroupoid cohomology(const CochainContext& ctx, int n) {
  const auto& A = ctx.coeff();
  const auto& C = ctx.complex();
  HnGroupoid H;
  H.coeff = A;
  H.degree = n;
  if (A.is_lines()) {
    H.pi0_parts.push_back(cohomology_group(C, n + 1, A.modulus()));
    H.pi1_parts.push_back(cohomology_group(C, n, A.modulus()));
    for (const auto& g : H.pi0_parts[0].generators) H.pi0_generators.push_back(ctx.phase_cocycle(n, g));
  } else {
    for (int c = 0; c < A.object_length(); ++c) {
      Int d = A.group().modulus_at(c);
      H.pi0_parts.push_back(cohomology_group(C, n, d));
      H.pi1_parts.push_back(cohomology_group(C, n - 1, d));
      for (const auto& g : H.pi0_parts.back().generators) {
        Cochain a = ctx.zero_cochain(n);
        for (int s = 0; s < int(a.v.size()); ++s) a.v[s][c] = g[s];
        for (auto& o : a.v) o = A.normalize(o);
        H.pi0_generators.push_back(ctx.make_cocycle(a, ctx.zero_phases(n + 1)));
      }
    }
  }
  H.pi0 = invariant_form(orders_of(H.pi0_parts));
  H.pi1 = invariant_form(orders_of(H.pi1_parts));
  return H;
}

inline HnGroupoid cohomology(const DeltaComplex& X, const CoeffGroupoid& A, int n) {
  return cohomology(CochainContext(X, A), n);
}

inline HnGroupoid relative_cohomology(const DeltaComplex& X, const std::vector<std::vector<int>>& Y,
                                      const CoeffGroupoid& A, int n) {
  return cohomology(CochainContext(relative_complex(X, Y), A), n);
}

// ---------------------------------------------------------------------------
// Homology with coefficients: objects (x, xi) with xi: dx -> 0.

struct HomologyObject {
  int degree = 0;
  std::vector<Object> x;  // per degree-simplex
  std::vector<Int> xi;    // phases per (degree-1)-simplex
  bool operator==(const HomologyObject&) const = default;
};

struct HomologyMorphism {
  std::vector<Object> y;  // per (degree+1)-simplex
  std::vector<Int> g;     // phases x -> dy + x' per degree-simplex
};

class ChainContext {
public:
  ChainContext(ChainComplex C, CoeffGroupoid A) : C_(std::move(C)), A_(std::move(A)) {}
  ChainContext(const DeltaComplex& X, CoeffGroupoid A) : C_(absolute_complex(X)), A_(std::move(A)) {}

  const ChainComplex& complex() const { return C_; }
  const CoeffGroupoid& coeff() const { return A_; }
  Int m() const { return A_.modulus(); }

  std::vector<Object> zero_chain(int k) const { return std::vector<Object>(C_.count(k), A_.zero()); }

  std::vector<Object> boundary(int k, const std::vector<Object>& x) const {
    auto r = zero_chain(k - 1);
    if (k == 0) return r;
    for (int s = 0; s < C_.count(k); ++s)
      for (auto [f, sg] : C_.faces[k][s]) r[f] = A_.tensor(r[f], sg > 0 ? x[s] : A_.negate(x[s]));
    return r;
  }
  std::vector<Int> boundary_phases(int k, const std::vector<Int>& p) const {
    std::vector<Int> r(C_.count(k - 1), 0);
    if (k == 0) return r;
    for (int s = 0; s < C_.count(k); ++s)
      for (auto [f, sg] : C_.faces[k][s]) r[f] += sg * p[s];
    for (auto& v : r) v = mod(v, m());
    return r;
  }

  std::optional<std::string> violation(const HomologyObject& h) const {
    if (int(h.x.size()) != C_.count(h.degree)) return "wrong number of coefficients";
    auto dx = boundary(h.degree, h.x);
    for (int f = 0; f < int(dx.size()); ++f)
      if (!A_.hom_nonempty(dx[f], A_.zero())) return "boundary is nonzero on simplex " + std::to_string(f);
    if (A_.is_lines()) {
      if (int(h.xi.size()) != C_.count(h.degree - 1)) return "trivialization has the wrong length";
      auto dxi = boundary_phases(h.degree - 1, h.xi);
      for (int f = 0; f < int(dxi.size()); ++f)
        if (dxi[f] != 0) return "d(xi) is not the identity on simplex " + std::to_string(f);
    }
    return std::nullopt;
  }
  HomologyObject make(int k, std::vector<Object> x, std::vector<Int> xi) const {
    for (auto& p : xi) p = mod(p, m());
    if (!A_.is_lines()) xi.assign(C_.count(k - 1), 0);
    HomologyObject h{k, std::move(x), std::move(xi)};
    if (auto v = violation(h)) fail("not a homology object: ", *v);
    return h;
  }

  std::optional<std::string> morphism_violation(const HomologyObject& s, const HomologyObject& t,
                                                const HomologyMorphism& h) const {
    int k = s.degree;
    if (int(h.y.size()) != C_.count(k + 1) || int(h.g.size()) != C_.count(k)) return "witness has wrong shape";
    auto dy = boundary(k + 1, h.y);
    for (int i = 0; i < C_.count(k); ++i)
      if (!A_.hom_nonempty(s.x[i], A_.tensor(dy[i], t.x[i])))
        return "no morphism x -> dy + x' on simplex " + std::to_string(i);
    if (A_.is_lines()) {
      auto dg = boundary_phases(k, h.g);
      for (int f = 0; f < C_.count(k - 1); ++f)
        if (mod(s.xi[f] - dg[f] - t.xi[f], m()) != 0) return "phase square fails on simplex " + std::to_string(f);
    }
    return std::nullopt;
  }

  std::optional<HomologyMorphism> find_morphism(const HomologyObject& s, const HomologyObject& t) const {
    int k = s.degree;
    HomologyMorphism h{zero_chain(k + 1), std::vector<Int>(C_.count(k), 0)};
    if (!A_.is_lines()) {
      Matrix del = C_.boundary(k + 1);
      for (int c = 0; c < A_.object_length(); ++c) {
        std::vector<Int> rhs(C_.count(k));
        for (int i = 0; i < C_.count(k); ++i) rhs[i] = s.x[i][c] - t.x[i][c];
        auto sol = solve_mod(del, rhs, A_.group().modulus_at(c));
        if (!sol) return std::nullopt;
        for (int i = 0; i < C_.count(k + 1); ++i) h.y[i][c] = (*sol)[i];
      }
      for (auto& o : h.y) o = A_.normalize(o);
    } else {
      std::vector<Int> rhs(C_.count(k - 1));
      for (int f = 0; f < C_.count(k - 1); ++f) rhs[f] = s.xi[f] - t.xi[f];
      auto sol = solve_mod(C_.boundary(k), rhs, m());
      if (!sol) return std::nullopt;
      h.g = *sol;
    }
    if (auto v = morphism_violation(s, t, h)) fail("internal: solved witness is not a morphism: ", *v);
    return h;
  }

  // pi0 class of a homology object: the object level for discrete
  // coefficients, the phase level for lines.
  Subquotient pi0_group(int k) const {
    if (A_.is_lines()) return homology_group(C_, k - 1, m());
    if (A_.object_length() != 1) fail("pi0 of homology implemented for cyclic or integer coefficients");
    return homology_group(C_, k, A_.group().modulus_at(0));
  }
  std::vector<Int> pi0_coordinates(const HomologyObject& h, const Subquotient& q) const {
    if (A_.is_lines()) return q.coordinates(h.xi);
    std::vector<Int> v;
    for (const auto& o : h.x) v.push_back(o[0]);
    return q.coordinates(v);
  }

private:
  ChainComplex C_;
  CoeffGroupoid A_;
};

struct HomologyGroups {
  AbelianGroup pi0, pi1;
};

inline HomologyGroups homology(const ChainComplex& C, const CoeffGroupoid& A, int n) {
  HomologyGroups h;
  std::vector<Int> o0, o1;
  if (A.is_lines()) {
    o0 = homology_group(C, n - 1, A.modulus()).orders;
    o1 = homology_group(C, n, A.modulus()).orders;
  } else {
    for (int c = 0; c < A.object_length(); ++c) {
      auto a = homology_group(C, n, A.group().modulus_at(c)).orders;
      auto b = homology_group(C, n + 1, A.group().modulus_at(c)).orders;
      o0.insert(o0.end(), a.begin(), a.end());
      o1.insert(o1.end(), b.begin(), b.end());
    }
  }
  h.pi0 = invariant_form(o0);
  h.pi1 = invariant_form(o1);
  return h;
}

// ---------------------------------------------------------------------------
// Functoriality.

inline Cochain pullback(const SimplicialMap& f, const Cochain& a, const CoeffGroupoid& A, int count) {
  Cochain r{a.degree, std::vector<Object>(count, A.zero())};
  for (int s = 0; s < count; ++s) {
    int t = f(a.degree, s);
    if (t >= 0) r.v[s] = a.v.at(t);
  }
  return r;
}

inline std::vector<Int> pullback_phases(const SimplicialMap& f, int k, const std::vector<Int>& p, int count) {
  std::vector<Int> r(count, 0);
  for (int s = 0; s < count; ++s) {
    int t = f(k, s);
    if (t >= 0) r[s] = p.at(t);
  }
  return r;
}

// f: X -> Y; x a cocycle on Y (absolute).
inline Cocycle2 pullback(const SimplicialMap& f, const DeltaComplex& X, const CochainContext& onX, const Cocycle2& x) {
  int n = x.degree;
  Cochain a = pullback(f, x.a, onX.coeff(), X.count(n));
  return onX.make_cocycle(a, pullback_phases(f, n + 1, x.phi.phase, X.count(n + 1)));
}

// Simplicial map into a nerve determined by edge labels (a flat coloring):
// a simplex goes to the tuple of its spine labels.
inline SimplicialMap map_to_nerve(const DeltaComplex& X, const Nerve& N, const std::vector<int>& edge_labels) {
  SimplicialMap f;
  int top = std::min(X.dim(), N.complex().dim());
  f.image.resize(X.dim() + 1);
  f.image[0].assign(X.count(0), 0);
  for (int k = 1; k <= X.dim(); ++k)
    for (int s = 0; s < X.count(k); ++s) {
      std::vector<int> t;
      for (int i = 0; i < k; ++i) t.push_back(edge_labels.at(X.edge(k, s, i, i + 1)));
      int idx = N.index(t);
      if (idx >= 0 && k > top) fail("field needs nerve dimension at least ", k);
      f.image[k].push_back(idx);
    }
  return f;
}

// Cochain homotopy for a prism: (T c)(sigma) = c(sum_i (-1)^i P(sigma, i)).
inline std::vector<Object> prism_operator(const Prism& P, const DeltaComplex& X, int k, const std::vector<Object>& c,
                                          const CoeffGroupoid& A) {
  std::vector<Object> r(X.count(k), A.zero());
  for (int s = 0; s < X.count(k); ++s)
    for (int i = 0; i <= k; ++i) {
      const Object& v = c.at(P.vertical(k, s, i));
      r[s] = A.tensor(r[s], i % 2 ? A.negate(v) : v);
    }
  return r;
}

inline std::vector<Int> prism_operator_phases(const Prism& P, const DeltaComplex& X, int k, const std::vector<Int>& c,
                                              Int m) {
  std::vector<Int> r(X.count(k), 0);
  for (int s = 0; s < X.count(k); ++s) {
    Int v = 0;
    for (int i = 0; i <= k; ++i) v += (i % 2 ? -1 : 1) * c.at(P.vertical(k, s, i));
    r[s] = mod(v, m);
  }
  return r;
}

// Given a simplicial homotopy H: prism(X) -> Y from f to g and a cocycle x on
// Y, the morphism f*x -> g*x built from the prism operator.
inline CohClassMorphism homotopy_morphism(const Prism& P, const DeltaComplex& X, const SimplicialMap& H,
                                          const CochainContext& onPrism, const CochainContext& onX,
                                          const Cocycle2& x, const Cocycle2& fx, const Cocycle2& gx) {
  const auto& PX = P.complex();
  int n = x.degree;
  const auto& A = onX.coeff();
  Cocycle2 Hx = pullback(H, PX, onPrism, x);
  Cochain b{n - 1, std::vector<Object>(X.count(n - 1), A.zero())};
  if (n >= 1) {
    auto t = prism_operator(P, X, n - 1, Hx.a.v, A);
    for (int s = 0; s < X.count(n - 1); ++s) b.v[s] = A.negate(t[s]);
  }
  auto t = prism_operator_phases(P, X, n, Hx.phi.phase, A.modulus());
  for (auto& v : t) v = -v;
  return onX.make_morphism(fx, gx, b, t);
}

// ---------------------------------------------------------------------------
// Pair sequence for a subcomplex Y of X (cochains).

struct PairSequence {
  const DeltaComplex& X;
  std::vector<std::vector<int>> Y;  // simplices of the subcomplex
  CoeffGroupoid A;

  CochainContext on_x() const { return CochainContext(X, A); }
  CochainContext on_y() const { return CochainContext(relative_complex(X, complement()), A); }
  CochainContext on_pair() const { return CochainContext(relative_complex(X, Y), A); }

  std::vector<std::vector<int>> complement() const {
    std::vector<std::vector<int>> c(X.dim() + 1);
    for (int k = 0; k <= X.dim(); ++k) {
      std::set<int> in;
      if (k < int(Y.size())) in.insert(Y[k].begin(), Y[k].end());
      for (int s = 0; s < X.count(k); ++s)
        if (!in.count(s)) c[k].push_back(s);
    }
    return c;
  }

  // Extension by zero from Y-local indices to X.
  template<typename T>
  std::vector<T> extend(const ChainComplex& sub, int k, const std::vector<T>& v, const T& zero) const {
    std::vector<T> r(X.count(k), zero);
    if (k < 0 || k > sub.top()) return r;
    for (int i = 0; i < int(v.size()); ++i) r[sub.simplices[k][i]] = v[i];
    return r;
  }
  template<typename T>
  std::vector<T> restrict_to(const ChainComplex& sub, int k, const std::vector<T>& v) const {
    std::vector<T> r;
    if (k < 0 || k > sub.top()) return r;
    for (int s : sub.simplices[k]) r.push_back(v[s]);
    return r;
  }

  Cocycle2 restrict_cocycle(const Cocycle2& x) const {
    auto cy = on_y();
    const auto& S = cy.complex();
    Cochain a{x.degree, restrict_to(S, x.degree, x.a.v)};
    return cy.make_cocycle(a, restrict_to(S, x.degree + 1, x.phi.phase));
  }

  // Connecting map: lift c to X by zero, differentiate, and read the result
  // as a relative cocycle whose trivialization is -d of the lifted one.
  Cocycle2 connecting(const Cocycle2& c) const {
    auto cx = on_x(), cy = on_y(), cp = on_pair();
    int n = c.degree;
    Cochain lift{n, extend(cy.complex(), n, c.a.v, A.zero())};
    Cochain dl = cx.coboundary(lift);
    auto psi = extend(cy.complex(), n + 1, c.phi.phase, Int(0));
    auto dpsi = cx.coboundary_phases(n + 1, psi);
    const auto& R = cp.complex();
    Cochain a{n + 1, restrict_to(R, n + 1, dl.v)};
    auto phases = restrict_to(R, n + 2, dpsi);
    for (auto& p : phases) p = -p;
    return cp.make_cocycle(a, phases);
  }

  Cocycle2 include_relative(const Cocycle2& r) const {
    auto cx = on_x(), cp = on_pair();
    int n = r.degree;
    Cochain a{n, extend(cp.complex(), n, r.a.v, A.zero())};
    return cx.make_cocycle(a, extend(cp.complex(), n + 1, r.phi.phase, Int(0)));
  }

  // Psi: the morphism from the image of the connecting map in H^{n+1}(X)
  // to zero, given by the lift and the inverse of the lifted trivialization.
  CohClassMorphism psi(const Cocycle2& c) const {
    auto cx = on_x(), cy = on_y();
    int n = c.degree;
    Cochain lift{n, extend(cy.complex(), n, c.a.v, A.zero())};
    auto ph = extend(cy.complex(), n + 1, c.phi.phase, Int(0));
    for (auto& p : ph) p = -p;
    return cx.make_morphism(include_relative(connecting(c)), cx.zero_cocycle(n + 1), lift, ph);
  }
};

// Pair sequence on chains: boundary of a relative homology object and the
// morphism Psi trivializing its image in X.
struct HomologyPair {
  const DeltaComplex& X;
  std::vector<std::vector<int>> Y;
  CoeffGroupoid A;

  ChainContext on_x() const { return ChainContext(X, A); }
  ChainContext on_pair() const { return ChainContext(relative_complex(X, Y), A); }
  ChainContext on_y() const {
    std::vector<std::vector<int>> comp(X.dim() + 1);
    for (int k = 0; k <= X.dim(); ++k) {
      std::set<int> in;
      if (k < int(Y.size())) in.insert(Y[k].begin(), Y[k].end());
      for (int s = 0; s < X.count(k); ++s)
        if (!in.count(s)) comp[k].push_back(s);
    }
    return ChainContext(relative_complex(X, comp), A);
  }

  template<typename T>
  std::vector<T> lift(const ChainComplex& sub, int k, const std::vector<T>& v, const T& zero) const {
    std::vector<T> r(X.count(k), zero);
    if (k < 0 || k > sub.top()) return r;
    for (int i = 0; i < int(v.size()); ++i) r[sub.simplices[k][i]] = v[i];
    return r;
  }
  template<typename T>
  std::vector<T> restrict_to(const ChainComplex& sub, int k, const std::vector<T>& v) const {
    std::vector<T> r;
    if (k < 0 || k > sub.top()) return r;
    for (int s : sub.simplices[k]) r.push_back(v[s]);
    return r;
  }

  HomologyObject connecting(const HomologyObject& h) const {
    auto cx = on_x(), cp = on_pair(), cy = on_y();
    int n = h.degree;
    auto x = lift(cp.complex(), n, h.x, A.zero());
    auto dx = cx.boundary(n, x);
    std::vector<Int> xi = A.is_lines() ? lift(cp.complex(), n - 1, h.xi, Int(0)) : std::vector<Int>(X.count(n - 1), 0);
    auto dxi = cx.boundary_phases(n - 1, xi);
    for (auto& p : dxi) p = -p;
    return cy.make(n - 1, restrict_to(cy.complex(), n - 1, dx), restrict_to(cy.complex(), n - 2, dxi));
  }

  HomologyObject push_from_y(const HomologyObject& h) const {
    auto cy = on_y(), cx = on_x();
    return cx.make(h.degree, lift(cy.complex(), h.degree, h.x, A.zero()),
                   lift(cy.complex(), h.degree - 1, h.xi, Int(0)));
  }

  HomologyMorphism psi(const HomologyObject& h) const {
    auto cx = on_x(), cp = on_pair();
    int n = h.degree;
    HomologyMorphism w{lift(cp.complex(), n, h.x, A.zero()),
                       A.is_lines() ? lift(cp.complex(), n - 1, h.xi, Int(0)) : std::vector<Int>(X.count(n - 1), 0)};
    for (auto& p : w.g) p = mod(-p, A.modulus());
    auto src = push_from_y(connecting(h));
    auto zero = cx.make(n - 1, cx.zero_chain(n - 1), std::vector<Int>(X.count(n - 2), 0));
    if (auto v = cx.morphism_violation(src, zero, w)) fail("Psi is not a morphism: ", *v);
    return w;
  }
};

}  // namespace dwcat
