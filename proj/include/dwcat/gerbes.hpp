#pragma once
// Čech covers, their nerves, and flat hermitian line 0-, 1- and 2-gerbes as
// data on ordered intersections. Data is stored on increasing index tuples;
// any other ordering of distinct indices is read with the sign of the
// sorting permutation.
#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cohomology.hpp"

namespace dwcat {

using Tuple = std::vector<int>;

struct CechCover {
  int sets = 0;
  std::set<Tuple> nonempty;  // sorted index sets with nonempty intersection

  bool intersects(Tuple t) const {
    std::sort(t.begin(), t.end());
    return nonempty.count(t) > 0;
  }
};

// Checks singletons and downward closure, and adds nothing.
inline CechCover make_cover(int sets, const std::vector<Tuple>& nonempty) {
  CechCover U;
  U.sets = sets;
  for (auto t : nonempty) {
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) fail("repeated index in ", tuple_str(t));
    for (int i : t)
      if (i < 0 || i >= sets) fail("cover index ", i, " out of range");
    U.nonempty.insert(t);
  }
  for (int i = 0; i < sets; ++i)
    if (!U.nonempty.count({i})) fail("cover set ", i, " is empty");
  for (const auto& t : U.nonempty)
    for (size_t j = 0; j < t.size() && t.size() > 1; ++j) {
      Tuple f = t;
      f.erase(f.begin() + j);
      if (!U.nonempty.count(f)) fail("intersection oracle is not downward closed: ", tuple_str(t), " without ", tuple_str(f));
    }
  return U;
}

// Cover whose nerve is the given ordered simplicial complex (open stars of
// the vertices).
inline CechCover cover_of_complex(const DeltaComplex& X) {
  std::vector<Tuple> ne;
  for (int k = 0; k <= X.dim(); ++k)
    for (int s = 0; s < X.count(k); ++s) ne.push_back(X.vertices(k, s));
  return make_cover(X.count(0), ne);
}

// Nerve: k-simplices are the increasing (k+1)-tuples with nonempty
// intersection.
inline DeltaComplex cech_nerve(const CechCover& U) {
  std::vector<Tuple> facets(U.nonempty.begin(), U.nonempty.end());
  return from_facets(U.sets, facets);
}

// The cover category: objects are the nonempty intersections, and there is
// a unique arrow U_S -> U_T whenever T is contained in S.
struct CoverCategory {
  std::vector<Tuple> objects;
  bool arrow(const Tuple& from, const Tuple& to) const {
    return std::includes(from.begin(), from.end(), to.begin(), to.end());
  }
  // U_{i,j} o U_{j,k} := U_{i,j,k}.
  Tuple compose(const Tuple& a, const Tuple& b) const {
    Tuple r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
  }
};

inline CoverCategory cover_category(const CechCover& U) {
  return CoverCategory{std::vector<Tuple>(U.nonempty.begin(), U.nonempty.end())};
}

namespace covers {

inline CechCover interval2() { return make_cover(2, {{0}, {1}, {0, 1}}); }
inline CechCover circle3() { return make_cover(3, {{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}}); }
inline CechCover sphere4() { return cover_of_complex(library::sphere2()); }
inline CechCover torus9() { return cover_of_complex(library::torus()); }

inline CechCover by_name(const std::string& name) {
  if (name == "interval2") return interval2();
  if (name == "circle3") return circle3();
  if (name == "sphere4") return sphere4();
  if (name == "torus9") return torus9();
  fail("unknown cover '", name, "'");
}

}  // namespace covers

// Values on increasing tuples, read on any ordering of distinct indices with
// the alternating sign.
struct AlternatingTable {
  std::map<Tuple, Int> v;

  Int at(const Tuple& t) const {
    Tuple s = t;
    std::sort(s.begin(), s.end());
    auto it = v.find(s);
    if (it == v.end()) fail("no value on ", tuple_str(t));
    return permutation_sign(t) * it->second;
  }
};

struct Gerbe1Data {
  CechCover cover;
  Int m = 1;
  AlternatingTable labels;  // Lambda_i^j on pairs
  AlternatingTable theta;   // sections on triples

  Int label(int i, int j) const { return labels.at({i, j}); }
  Int section(int i, int j, int k) const { return mod(theta.at({i, j, k}), m); }
};

struct Gerbe2Data {
  CechCover cover;
  Int m = 1;
  AlternatingTable objects;  // labels of O_{i,j,k}
  AlternatingTable theta;    // sections on quadruples

  Int object(int i, int j, int k) const { return objects.at({i, j, k}); }
  Int section(int i, int j, int k, int l) const { return mod(theta.at({i, j, k, l}), m); }
};

struct ObjectData {
  std::map<int, Int> L;          // per index
  AlternatingTable isos;         // m_i^j phases on pairs
};

inline std::vector<Tuple> tuples_of_size(const CechCover& U, size_t n) {
  std::vector<Tuple> r;
  for (const auto& t : U.nonempty)
    if (t.size() == n) r.push_back(t);
  return r;
}

// Alternating sum of a table over the codimension-one faces of t.
inline Int coboundary_at(const AlternatingTable& tab, const Tuple& t) {
  Int s = 0;
  for (size_t j = 0; j < t.size(); ++j) {
    Tuple f = t;
    f.erase(f.begin() + j);
    s += (j % 2 ? -1 : 1) * tab.at(f);
  }
  return s;
}

inline void validate(const Gerbe1Data& g) {
  for (const auto& t : tuples_of_size(g.cover, 2)) g.labels.at(t);
  for (const auto& t : tuples_of_size(g.cover, 3)) g.theta.at(t);
  for (const auto& q : tuples_of_size(g.cover, 4))
    if (mod(coboundary_at(g.theta, q), g.m) != 0)
      fail("1-gerbe cocycle condition fails on ", tuple_str(q));
}

inline void validate(const Gerbe2Data& g) {
  for (const auto& t : tuples_of_size(g.cover, 3)) g.objects.at(t);
  for (const auto& t : tuples_of_size(g.cover, 4)) g.theta.at(t);
  for (const auto& q : tuples_of_size(g.cover, 5))
    if (mod(coboundary_at(g.theta, q), g.m) != 0)
      fail("2-gerbe cocycle condition fails on ", tuple_str(q));
}

// Tables indexed by nerve simplices.
inline AlternatingTable table_from(const DeltaComplex& N, int k, const std::vector<Int>& v) {
  AlternatingTable t;
  for (int s = 0; s < N.count(k); ++s) t.v[N.vertices(k, s)] = v[s];
  return t;
}
inline std::vector<Int> values_of(const DeltaComplex& N, int k, const AlternatingTable& t) {
  std::vector<Int> v(N.count(k));
  for (int s = 0; s < N.count(k); ++s) v[s] = t.at(N.vertices(k, s));
  return v;
}

inline std::vector<Int> labels_of(const Cochain& a) {
  std::vector<Int> v;
  for (const auto& o : a.v) v.push_back(o.at(0));
  return v;
}
inline Cochain cochain_of(int k, const std::vector<Int>& v) {
  Cochain c{k, {}};
  for (Int x : v) c.v.push_back(Object{x});
  return c;
}

inline Gerbe1Data gerbe1_from_cocycle(const CechCover& U, const Cocycle2& x, Int m) {
  if (x.degree != 1) fail("a 1-gerbe comes from a degree 1 cocycle");
  DeltaComplex N = cech_nerve(U);
  Gerbe1Data g{U, m, table_from(N, 1, labels_of(x.a)), table_from(N, 2, x.phi.phase)};
  validate(g);
  return g;
}

inline Gerbe2Data gerbe2_from_cocycle(const CechCover& U, const Cocycle2& x, Int m) {
  if (x.degree != 2) fail("a 2-gerbe comes from a degree 2 cocycle");
  DeltaComplex N = cech_nerve(U);
  Gerbe2Data g{U, m, table_from(N, 2, labels_of(x.a)), table_from(N, 3, x.phi.phase)};
  validate(g);
  return g;
}

inline Cocycle2 cocycle_from_gerbe(const Gerbe1Data& g) {
  validate(g);
  DeltaComplex N = cech_nerve(g.cover);
  CochainContext ctx(N, CoeffGroupoid::lines(g.m));
  return ctx.make_cocycle(cochain_of(1, values_of(N, 1, g.labels)), values_of(N, 2, g.theta));
}

inline Cocycle2 cocycle_from_gerbe(const Gerbe2Data& g) {
  validate(g);
  DeltaComplex N = cech_nerve(g.cover);
  CochainContext ctx(N, CoeffGroupoid::lines(g.m));
  return ctx.make_cocycle(cochain_of(2, values_of(N, 2, g.objects)), values_of(N, 3, g.theta));
}

// Whether an object satisfies m_i^j + m_j^k + m_k^i = theta_{i,j,k}.
inline std::optional<Tuple> object_violation(const Gerbe1Data& g, const ObjectData& o) {
  for (const auto& t : tuples_of_size(g.cover, 3)) {
    Int lhs = o.isos.at({t[0], t[1]}) + o.isos.at({t[1], t[2]}) + o.isos.at({t[2], t[0]});
    if (mod(lhs - g.section(t[0], t[1], t[2]), g.m) != 0) return t;
  }
  return std::nullopt;
}

// An object compatible with g, from a morphism (beta, f): (alpha, phi) -> 0.
inline std::optional<ObjectData> find_object(const Gerbe1Data& g) {
  DeltaComplex N = cech_nerve(g.cover);
  CochainContext ctx(N, CoeffGroupoid::lines(g.m));
  Cocycle2 x = cocycle_from_gerbe(g);
  auto h = ctx.find_morphism(x, ctx.zero_cocycle(1));
  if (!h) return std::nullopt;
  ObjectData o;
  for (int i = 0; i < N.count(0); ++i) o.L[N.vertices(0, i)[0]] = h->b.v[i][0];
  o.isos = table_from(N, 1, h->f.phase);
  if (auto bad = object_violation(g, o)) fail("internal: object fails on ", tuple_str(*bad));
  return o;
}

inline void check_same_cover(const CechCover& a, const CechCover& b, Int ma, Int mb) {
  if (a.sets != b.sets || a.nonempty != b.nonempty) fail("gerbes live on different covers");
  if (ma != mb) fail("gerbes have different phase moduli");
}

inline AlternatingTable combine(const AlternatingTable& a, const AlternatingTable& b, Int sb) {
  AlternatingTable r = a;
  for (auto& [t, v] : r.v) v += sb * b.v.at(t);
  return r;
}

inline Gerbe1Data tensor_gerbes(const Gerbe1Data& g, const Gerbe1Data& h) {
  check_same_cover(g.cover, h.cover, g.m, h.m);
  Gerbe1Data r{g.cover, g.m, combine(g.labels, h.labels, 1), combine(g.theta, h.theta, 1)};
  for (auto& [t, v] : r.theta.v) v = mod(v, r.m);
  return r;
}

inline Gerbe1Data dual_gerbe(const Gerbe1Data& g) {
  Gerbe1Data r = g;
  for (auto& [t, v] : r.labels.v) v = -v;
  for (auto& [t, v] : r.theta.v) v = mod(-v, r.m);
  return r;
}

inline Gerbe1Data zero_gerbe(const CechCover& U, Int m) {
  Gerbe1Data g{U, m, {}, {}};
  for (const auto& t : tuples_of_size(U, 2)) g.labels.v[t] = 0;
  for (const auto& t : tuples_of_size(U, 3)) g.theta.v[t] = 0;
  return g;
}

// Globally trivialized in the displayed bases: every section is the
// identity phase.
inline bool global_trivialization_check(const Gerbe1Data& g) {
  for (const auto& [t, v] : g.theta.v)
    if (mod(v, g.m) != 0) return false;
  return true;
}

// Equivalence of gerbes: a morphism between their cocycles.
inline bool equivalent(const Gerbe1Data& g, const Gerbe1Data& h) {
  check_same_cover(g.cover, h.cover, g.m, h.m);
  DeltaComplex N = cech_nerve(g.cover);
  CochainContext ctx(N, CoeffGroupoid::lines(g.m));
  return ctx.isomorphic(cocycle_from_gerbe(g), cocycle_from_gerbe(h));
}

// A 0-gerbe as a functor on the edge-path groupoid: line labels on vertices
// and transport phases on edges.
struct ZeroGerbeFunctor {
  const DeltaComplex* X = nullptr;
  Int m = 1;
  std::vector<Int> vertex_label;
  std::vector<Int> edge_phase;

  // Composite phase of an edge path given as (edge, +1 forward / -1 backward).
  Int transport(const std::vector<std::pair<int, int>>& path) const {
    int at = -1;
    Int s = 0;
    for (auto [e, dir] : path) {
      int src = X->faces[1][e][1], tgt = X->faces[1][e][0];
      if (dir < 0) std::swap(src, tgt);
      if (at >= 0 && at != src) fail("edge path is not connected at edge ", e);
      at = tgt;
      s += dir * edge_phase[e];
    }
    return mod(s, m);
  }
};

inline ZeroGerbeFunctor zero_gerbe_functor(const DeltaComplex& X, const Cocycle2& x, Int m) {
  if (x.degree != 0) fail("a 0-gerbe comes from a degree 0 cocycle");
  return ZeroGerbeFunctor{&X, m, labels_of(x.a), x.phi.phase};
}

}  // namespace dwcat
