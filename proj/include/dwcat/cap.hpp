#pragma once
// Cap product of integer chains with Picard-groupoid cochains, its relative
// version, and the compatibility with connecting maps.
//
// Convention: c(z, a) = (-1)^(pq + p(p+1)/2) sum_s z(s) a(front_p s) back_{q-p} s
// for a q-chain z and a p-cochain a. With this sign
//   d c(z, a) = c(dz, a) + (-1)^q c(z, da),
// which makes z -> c(z, -) a chain map into the Hom complex below.
#include <map>
#include <numeric>
#include <optional>

#include "cohomology.hpp"

namespace dwcat {

inline int cap_sign(int p, int q) { return (p * q + p * (p + 1) / 2) % 2 ? -1 : 1; }

inline std::pair<int, int> front_back(const DeltaComplex& X, int q, int s, int p) {
  std::vector<int> front(p + 1), back(q - p + 1);
  std::iota(front.begin(), front.end(), 0);
  std::iota(back.begin(), back.end(), p);
  return {X.face_spanned(q, s, front), X.face_spanned(q, s, back)};
}

inline std::vector<Object> cap_objects(const DeltaComplex& X, const CoeffGroupoid& A, const Chain& z, int p,
                                       const std::vector<Object>& a) {
  int q = z.dim;
  if (p < 0 || p > q) fail("cap of a ", q, "-chain with a ", p, "-cochain");
  if (int(a.size()) != X.count(p)) fail("cochain length ", a.size(), " does not match ", X.count(p));
  std::vector<Object> r(X.count(q - p), A.zero());
  int sg = cap_sign(p, q);
  for (auto [s, v] : z.c) {
    auto [f, b] = front_back(X, q, s, p);
    if (f < 0 || b < 0) continue;
    r[b] = A.tensor(r[b], A.scale(a[f], v * sg));
  }
  return r;
}

inline std::vector<Int> cap_phases(const DeltaComplex& X, const Chain& z, int p, const std::vector<Int>& phi, Int m) {
  int q = z.dim;
  std::vector<Int> r(X.count(q - p), 0);
  if (p > q) return r;
  int sg = cap_sign(p, q);
  for (auto [s, v] : z.c) {
    auto [f, b] = front_back(X, q, s, p);
    if (f < 0 || b < 0) continue;
    r[b] = mod(r[b] + sg * mod(v, m) * phi.at(f), m);
  }
  return r;
}

// Sign of the phase part: the trivialization dx -> 0 induced by phi.
inline int cap_phase_sign(int, int q) { return q % 2 ? -1 : 1; }

// [z] cap (a, phi) for an integer cycle z.
inline HomologyObject cap(const DeltaComplex& X, const ChainContext& ctx, const Chain& z, const Cocycle2& x) {
  if (!is_cycle(X, z)) fail("cap needs a cycle");
  int q = z.dim, p = x.degree;
  auto objs = cap_objects(X, ctx.coeff(), z, p, x.a.v);
  std::vector<Int> ph(X.count(q - p - 1), 0);
  if (q - p - 1 >= 0) {
    ph = cap_phases(X, z, p + 1, x.phi.phase, ctx.m());
    for (auto& v : ph) v *= cap_phase_sign(p, q);
  }
  return ctx.make(q - p, objs, ph);
}

inline HomologyObject cap(const DeltaComplex& X, const Chain& z, const Cocycle2& x, const CoeffGroupoid& A) {
  return cap(X, ChainContext(X, A), z, x);
}

// The morphism cap(z, x) -> cap(z + dw, x) induced by capping with w.
inline HomologyMorphism cap_change_of_cycle(const DeltaComplex& X, const ChainContext& ctx, const Chain& w,
                                            const Cocycle2& x) {
  const auto& A = ctx.coeff();
  int q = w.dim - 1, p = x.degree;
  HomologyMorphism h;
  h.y = cap_objects(X, A, w, p, x.a.v);
  for (auto& o : h.y) o = A.negate(o);
  h.g = cap_phases(X, w, p + 1, x.phi.phase, ctx.m());
  int s = cap_phase_sign(p, q);
  for (auto& v : h.g) v = mod(-s * v, ctx.m());
  return h;
}

// Union of all marked boundary pieces, as simplex lists per dimension.
inline std::vector<std::vector<int>> boundary_support(const DeltaComplex& X) {
  std::vector<std::set<int>> s(X.dim() + 1);
  for (const auto& b : X.boundaries)
    for (size_t k = 0; k < b.embed.size(); ++k) s[k].insert(b.embed[k].begin(), b.embed[k].end());
  std::vector<std::vector<int>> out(X.dim() + 1);
  for (int k = 0; k <= X.dim(); ++k) out[k].assign(s[k].begin(), s[k].end());
  return out;
}

inline bool is_relative_cycle(const DeltaComplex& X, const std::vector<std::vector<int>>& Y, const Chain& z) {
  Chain b = boundary(X, z);
  std::set<int> in;
  if (b.dim < int(Y.size())) in.insert(Y[b.dim].begin(), Y[b.dim].end());
  for (auto [s, v] : b.c)
    if (!in.count(s)) return false;
  return true;
}

template<typename T>
std::vector<T> project(const ChainComplex& R, int k, const std::vector<T>& v) {
  std::vector<T> r;
  if (k < 0 || k > R.top()) return r;
  for (int s : R.simplices[k]) r.push_back(v.at(s));
  return r;
}

// Cap of a relative cycle with an absolute cocycle, projected to relative
// chains.
inline HomologyObject relative_cap(const DeltaComplex& X, const std::vector<std::vector<int>>& Y, const Chain& z,
                                   const Cocycle2& x, const CoeffGroupoid& A) {
  if (!is_relative_cycle(X, Y, z)) fail("relative cap needs a relative cycle");
  ChainContext rel(relative_complex(X, Y), A);
  int q = z.dim, p = x.degree;
  auto objs = cap_objects(X, A, z, p, x.a.v);
  std::vector<Int> ph(X.count(q - p - 1), 0);
  if (q - p - 1 >= 0) {
    ph = cap_phases(X, z, p + 1, x.phi.phase, A.modulus());
    for (auto& v : ph) v *= cap_phase_sign(p, q);
  }
  const auto& R = rel.complex();
  return rel.make(q - p, project(R, q - p, objs), project(R, q - p - 1, ph));
}

struct CapDelResult {
  HomologyObject lhs, rhs;
  HomologyMorphism witness;
};

// For a relative p-cycle z and a q-cocycle x with p-1 >= q >= 0: the
// connecting map applied to z cap x, the cap of the boundary cycle with the
// restriction of x, and a morphism between them in H_{p-q-1}(Y).
inline CapDelResult cap_del_check(const DeltaComplex& X, const std::vector<std::vector<int>>& Y, const Chain& z,
                                  const Cocycle2& x, const CoeffGroupoid& A) {
  int p = z.dim, q = x.degree;
  if (!(p - 1 >= q && q >= 0)) fail("cap_del_check needs p-1 >= q >= 0, got p=", p, " q=", q);
  HomologyPair pair{X, Y, A};
  CapDelResult r;
  r.lhs = pair.connecting(relative_cap(X, Y, z, x, A));
  Chain dz = boundary(X, z);
  ChainContext onX(X, A);
  auto full = cap(X, onX, dz, x);
  ChainContext onY = pair.on_y();
  const auto& S = onY.complex();
  r.rhs = onY.make(full.degree, project(S, full.degree, full.x), project(S, full.degree - 1, full.xi));
  auto w = onY.find_morphism(r.lhs, r.rhs);
  if (!w) fail("no morphism between the two sides of the boundary square");
  r.witness = *w;
  return r;
}

// ---------------------------------------------------------------------------
// Hom complex from the cochains (cochain degree k sits in degree -k) to the
// chains, on the integer level. A family of total degree n has components
// f_k: C^k -> C_{n-k} and differential
//   (df)_k = d f_k - (-1)^n f_{k+1} delta.
struct HomFamily {
  int degree = 0;
  std::map<int, Matrix> f;  // k -> matrix count(n-k) x count(k)
};

inline Matrix coboundary_matrix(const DeltaComplex& X, int k) {
  Matrix b = boundary_matrix(X, k + 1), c(b.cols, b.rows);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) c(j, i) = b(i, j);
  return c;
}

inline HomFamily hom_differential(const DeltaComplex& X, const HomFamily& F) {
  HomFamily d;
  int n = F.degree;
  d.degree = n - 1;
  for (int k = 0; k <= X.dim(); ++k) {
    int tgt = n - 1 - k;
    if (tgt < 0 || tgt > X.dim()) continue;
    Matrix m(X.count(tgt), X.count(k));
    if (auto it = F.f.find(k); it != F.f.end()) m = m + boundary_matrix(X, n - k) * it->second;
    if (auto it = F.f.find(k + 1); it != F.f.end() && k + 1 <= X.dim())
      m = m + (it->second * coboundary_matrix(X, k)) * Int(n % 2 ? 1 : -1);
    d.f[k] = m;
  }
  return d;
}

// The family a -> c(z, a) of a q-chain z, as integer matrices.
inline HomFamily cap_family(const DeltaComplex& X, const Chain& z) {
  HomFamily F;
  F.degree = z.dim;
  int q = z.dim;
  auto Z = CoeffGroupoid::integers();
  for (int k = 0; k <= q; ++k) {
    Matrix m(X.count(q - k), X.count(k));
    for (int j = 0; j < X.count(k); ++j) {
      std::vector<Object> a(X.count(k), Object{0});
      a[j] = Object{1};
      auto r = cap_objects(X, Z, z, k, a);
      for (int i = 0; i < X.count(q - k); ++i) m(i, j) = r[i][0];
    }
    F.f[k] = m;
  }
  return F;
}

}  // namespace dwcat
