#pragma once
// Finite Δ-complexes with face maps, orientation and marked boundary pieces;
// nerves of finite groups, prisms, gluing, chains and the built-in library.
#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "smith.hpp"

namespace dwcat {

// A marked boundary piece. embed[k][i] is the X-index of the i-th k-simplex
// of the model complex; the model's faces are the induced ones.
struct Boundary {
  std::string name;
  bool incoming = true;
  std::vector<std::vector<int>> embed;
};

// faces[k][i] lists d_0..d_k of the i-th k-simplex (empty for vertices).
// A face index of -1 marks a degenerate face, which only nerves produce;
// normalized chains ignore it.
struct DeltaComplex {
  std::vector<std::vector<std::vector<int>>> faces;
  std::vector<int> orientation;  // per top simplex, +1/-1, empty if undeclared
  std::vector<Boundary> boundaries;

  int dim() const { return int(faces.size()) - 1; }
  int count(int k) const { return k < 0 || k > dim() ? 0 : int(faces[k].size()); }
  int face(int k, int i, int j) const { return faces[k][i][j]; }
  bool oriented() const { return !orientation.empty(); }

  // Local vertex l of the k-simplex i.
  int vertex(int k, int i, int l) const {
    while (k > 0) {
      if (l < k) {
        i = faces[k][i][k];
      } else {
        i = faces[k][i][0];
        --l;
      }
      --k;
      if (i < 0) fail("vertex of a degenerate face requested");
    }
    return i;
  }
  std::vector<int> vertices(int k, int i) const {
    std::vector<int> v(k + 1);
    for (int l = 0; l <= k; ++l) v[l] = vertex(k, i, l);
    return v;
  }
  // Face of the k-simplex i spanned by the sorted local vertices `keep`.
  int face_spanned(int k, int i, const std::vector<int>& keep) const {
    int cur = i, d = k;
    for (int j = k; j >= 0; --j) {
      if (std::binary_search(keep.begin(), keep.end(), j)) continue;
      cur = faces[d][cur][j];
      --d;
      if (cur < 0) return -1;
    }
    return cur;
  }
  int edge(int k, int i, int a, int b) const { return face_spanned(k, i, {a, b}); }

  const Boundary* find_boundary(bool incoming) const {
    for (const auto& b : boundaries)
      if (b.incoming == incoming) return &b;
    return nullptr;
  }
};

inline void validate(const DeltaComplex& X) {
  for (int k = 1; k <= X.dim(); ++k)
    for (int s = 0; s < X.count(k); ++s) {
      if (int(X.faces[k][s].size()) != k + 1)
        fail("simplex ", s, " of dimension ", k, " has ", X.faces[k][s].size(), " faces");
      for (int f : X.faces[k][s])
        if (f < -1 || f >= X.count(k - 1))
          fail("simplex ", s, " of dimension ", k, " has face index ", f, " out of range");
    }
  for (int k = 2; k <= X.dim(); ++k)
    for (int s = 0; s < X.count(k); ++s)
      for (int j = 1; j <= k; ++j)
        for (int i = 0; i < j; ++i) {
          int a = X.faces[k][s][j], b = X.faces[k][s][i];
          if (a < 0 || b < 0) continue;
          int x = X.faces[k - 1][a][i], y = X.faces[k - 1][b][j - 1];
          if (x < 0 || y < 0) continue;
          if (x != y)
            fail("simplicial identity d_", i, " d_", j, " = d_", j - 1, " d_", i,
                 " fails on simplex ", s, " of dimension ", k);
        }
  if (X.oriented() && int(X.orientation.size()) != X.count(X.dim()))
    fail("orientation has ", X.orientation.size(), " entries for ", X.count(X.dim()), " top simplices");
  for (int e : X.orientation)
    if (e != 1 && e != -1) fail("orientation coefficients must be +1 or -1");
  for (const auto& b : X.boundaries) {
    std::vector<std::set<int>> in(X.dim() + 1);
    for (int k = 0; k < int(b.embed.size()); ++k)
      for (int s : b.embed[k]) {
        if (k > X.dim() || s < 0 || s >= X.count(k))
          fail("boundary '", b.name, "' lists a simplex outside the complex");
        in[k].insert(s);
      }
    for (int k = 1; k < int(b.embed.size()); ++k)
      for (int s : b.embed[k])
        for (int f : X.faces[k][s])
          if (!in[k - 1].count(f))
            fail("boundary '", b.name, "' is not closed under faces at simplex ", s, " of dimension ", k);
  }
}

// Induced complex on the simplices of a boundary piece, indexed as listed.
inline DeltaComplex subcomplex(const DeltaComplex& X, const std::vector<std::vector<int>>& embed) {
  DeltaComplex Y;
  int top = int(embed.size()) - 1;
  while (top >= 0 && embed[top].empty()) --top;
  Y.faces.resize(top + 1);
  std::vector<std::map<int, int>> index(top + 1);
  for (int k = 0; k <= top; ++k)
    for (int i = 0; i < int(embed[k].size()); ++i) index[k][embed[k][i]] = i;
  for (int k = 0; k <= top; ++k)
    for (int s : embed[k]) {
      std::vector<int> f;
      if (k > 0)
        for (int x : X.faces[k][s]) {
          auto it = index[k - 1].find(x);
          if (it == index[k - 1].end()) fail("subcomplex is not closed under faces");
          f.push_back(it->second);
        }
      Y.faces[k].push_back(f);
    }
  return Y;
}

inline DeltaComplex boundary_model(const DeltaComplex& X, const Boundary& b) {
  return subcomplex(X, b.embed);
}

// Face closure of the listed top simplices, ordered by (dimension, index).
inline std::vector<std::vector<int>> face_closure(const DeltaComplex& X, int k, const std::vector<int>& tops) {
  std::vector<std::set<int>> s(k + 1);
  for (int t : tops) s[k].insert(t);
  for (int d = k; d >= 1; --d)
    for (int t : s[d])
      for (int f : X.faces[d][t]) s[d - 1].insert(f);
  std::vector<std::vector<int>> out(k + 1);
  for (int d = 0; d <= k; ++d) out[d].assign(s[d].begin(), s[d].end());
  return out;
}

// ---------------------------------------------------------------------------
// Chains with integer coefficients.

struct Chain {
  int dim = 0;
  std::map<int, Int> c;

  void add(int s, Int v) {
    if (v == 0) return;
    Int& x = c[s];
    x = impl::checked_add(x, v);
    if (x == 0) c.erase(s);
  }
  bool zero() const { return c.empty(); }
  bool operator==(const Chain&) const = default;
  Chain operator+(const Chain& o) const {
    Chain r = *this;
    for (auto [s, v] : o.c) r.add(s, v);
    return r;
  }
  Chain operator-() const {
    Chain r{dim, {}};
    for (auto [s, v] : c) r.c[s] = -v;
    return r;
  }
  Chain operator-(const Chain& o) const { return *this + (-o); }
  Chain scaled(Int k) const {
    Chain r{dim, {}};
    if (k == 0) return r;
    for (auto [s, v] : c) r.c[s] = impl::checked_mul(v, k);
    return r;
  }
  std::vector<Int> dense(int n) const {
    std::vector<Int> v(n, 0);
    for (auto [s, x] : c) v.at(s) = x;
    return v;
  }
  static Chain from_dense(int dim, const std::vector<Int>& v) {
    Chain r{dim, {}};
    for (int i = 0; i < int(v.size()); ++i) r.add(i, v[i]);
    return r;
  }
  static Chain simplex(int dim, int s, Int v = 1) {
    Chain r{dim, {}};
    r.add(s, v);
    return r;
  }
};

inline Chain boundary(const DeltaComplex& X, const Chain& c) {
  Chain r{c.dim - 1, {}};
  if (c.dim == 0) return r;
  for (auto [s, v] : c.c)
    for (int j = 0; j <= c.dim; ++j) {
      int f = X.faces[c.dim][s][j];
      if (f >= 0) r.add(f, (j % 2 ? -v : v));
    }
  return r;
}

// Matrix of the boundary C_k -> C_{k-1} (rows: (k-1)-simplices).
inline Matrix boundary_matrix(const DeltaComplex& X, int k) {
  Matrix m(X.count(k - 1), X.count(k));
  if (k <= 0 || k > X.dim()) return m;
  for (int s = 0; s < X.count(k); ++s)
    for (int j = 0; j <= k; ++j) {
      int f = X.faces[k][s][j];
      if (f >= 0) m(f, s) += (j % 2 ? -1 : 1);
    }
  return m;
}

inline bool is_cycle(const DeltaComplex& X, const Chain& c) { return boundary(X, c).zero(); }

// Witness w with boundary(w) = c, if one exists.
inline std::optional<Chain> is_boundary(const DeltaComplex& X, const Chain& c) {
  if (c.dim >= X.dim()) {
    if (c.zero()) return Chain{c.dim + 1, {}};
    return std::nullopt;
  }
  auto w = solve_integer(boundary_matrix(X, c.dim + 1), c.dense(X.count(c.dim)));
  if (!w) return std::nullopt;
  return Chain::from_dense(c.dim + 1, *w);
}

inline Chain fundamental_cycle(const DeltaComplex& X) {
  if (!X.oriented())
    fail("complex has no orientation data");
  int n = X.dim();
  Chain z{n, {}};
  for (int i = 0; i < X.count(n); ++i) z.add(i, X.orientation[i]);
  Chain b = boundary(X, z);
  std::set<int> allowed;
  for (const auto& bd : X.boundaries)
    if (int(bd.embed.size()) > n - 1)
      for (int s : bd.embed[n - 1]) allowed.insert(s);
  std::string bad;
  for (auto [s, v] : b.c)
    if (!allowed.count(s)) bad += " " + std::to_string(s) + "(" + std::to_string(v) + ")";
  if (!bad.empty())
    fail("orientation does not give a relative cycle; unmatched faces:", bad);
  return z;
}

// Chain on a boundary model pushed into X.
inline Chain push_chain(const Boundary& b, const Chain& c) {
  Chain r{c.dim, {}};
  for (auto [s, v] : c.c) r.add(b.embed.at(c.dim).at(s), v);
  return r;
}

inline Int euler_characteristic(const DeltaComplex& X) {
  Int e = 0;
  for (int k = 0; k <= X.dim(); ++k) e += (k % 2 ? -1 : 1) * Int(X.count(k));
  return e;
}

// ---------------------------------------------------------------------------
// Simplicial maps. image[k][i] is the index of the image simplex, or -1 when
// the image is degenerate.

struct SimplicialMap {
  std::vector<std::vector<int>> image;

  int operator()(int k, int i) const { return image.at(k).at(i); }
};

inline void validate(const SimplicialMap& f, const DeltaComplex& X, const DeltaComplex& Y) {
  if (int(f.image.size()) != X.dim() + 1)
    fail("simplicial map has ", f.image.size(), " levels for a complex of dimension ", X.dim());
  for (int k = 0; k <= X.dim(); ++k) {
    if (int(f.image[k].size()) != X.count(k))
      fail("simplicial map level ", k, " has wrong length");
    for (int s = 0; s < X.count(k); ++s) {
      int t = f.image[k][s];
      if (t < -1 || t >= Y.count(k)) fail("simplicial map sends simplex ", s, " out of range");
      if (k == 0 && t < 0) fail("vertex images cannot be degenerate");
      if (t < 0 || k == 0) continue;
      for (int j = 0; j <= k; ++j) {
        int fs = X.faces[k][s][j];
        int ft = Y.faces[k][t][j];
        if (fs >= 0 && f.image[k - 1][fs] != ft)
          fail("simplicial map does not commute with d_", j, " on simplex ", s, " of dimension ", k);
      }
    }
  }
}

inline SimplicialMap compose(const SimplicialMap& f, const SimplicialMap& g) {
  SimplicialMap h;
  h.image.resize(f.image.size());
  for (size_t k = 0; k < f.image.size(); ++k)
    for (int t : f.image[k]) h.image[k].push_back(t < 0 ? -1 : g.image.at(k).at(t));
  return h;
}

inline SimplicialMap identity_map(const DeltaComplex& X) {
  SimplicialMap f;
  f.image.resize(X.dim() + 1);
  for (int k = 0; k <= X.dim(); ++k) {
    f.image[k].resize(X.count(k));
    std::iota(f.image[k].begin(), f.image[k].end(), 0);
  }
  return f;
}

// Map determined by a vertex map into a complex whose simplices are
// determined by their vertex tuples. Images with a repeated vertex are
// degenerate; images must respect the local vertex order.
inline SimplicialMap from_vertex_map(const DeltaComplex& X, const DeltaComplex& Y, const std::vector<int>& vmap) {
  std::vector<std::map<std::vector<int>, int>> lookup(Y.dim() + 1);
  for (int k = 0; k <= Y.dim(); ++k)
    for (int t = 0; t < Y.count(k); ++t) {
      auto v = Y.vertices(k, t);
      if (!lookup[k].emplace(v, t).second)
        fail("target complex has two simplices with vertices of simplex ", t, " in dimension ", k);
    }
  SimplicialMap f;
  f.image.resize(X.dim() + 1);
  for (int k = 0; k <= X.dim(); ++k)
    for (int s = 0; s < X.count(k); ++s) {
      std::vector<int> v;
      for (int x : X.vertices(k, s)) v.push_back(vmap.at(x));
      bool degenerate = false;
      for (int l = 1; l <= k; ++l)
        if (v[l] == v[l - 1]) degenerate = true;
      if (degenerate) {
        f.image[k].push_back(-1);
        continue;
      }
      if (k > Y.dim()) fail("vertex map sends a ", k, "-simplex to a nondegenerate simplex above the target dimension");
      auto it = lookup[k].find(v);
      if (it == lookup[k].end())
        fail("vertex map sends simplex ", s, " of dimension ", k, " to a missing simplex");
      f.image[k].push_back(it->second);
    }
  validate(f, X, Y);
  return f;
}

// ---------------------------------------------------------------------------
// Constructions.

// Ordered simplicial complex generated by facets given as vertex lists.
// Every simplex is stored with its vertices in increasing order; simplices of
// each dimension are sorted lexicographically.
inline DeltaComplex from_facets(int nverts, const std::vector<std::vector<int>>& facets) {
  int top = 0;
  for (const auto& f : facets) top = std::max(top, int(f.size()) - 1);
  std::vector<std::set<std::vector<int>>> simp(top + 1);
  for (int v = 0; v < nverts; ++v) simp[0].insert({v});
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    int n = int(f.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> s;
      for (int j = 0; j < n; ++j)
        if (mask >> j & 1) s.push_back(f[j]);
      simp[s.size() - 1].insert(s);
    }
  }
  DeltaComplex X;
  X.faces.resize(top + 1);
  std::vector<std::map<std::vector<int>, int>> index(top + 1);
  for (int k = 0; k <= top; ++k) {
    int i = 0;
    for (const auto& s : simp[k]) index[k][s] = i++;
  }
  for (int k = 0; k <= top; ++k)
    for (const auto& s : simp[k]) {
      std::vector<int> f;
      if (k > 0)
        for (int j = 0; j <= k; ++j) {
          auto t = s;
          t.erase(t.begin() + j);
          f.push_back(index[k - 1].at(t));
        }
      X.faces[k].push_back(f);
    }
  return X;
}

inline int simplex_index(const DeltaComplex& X, std::vector<int> verts) {
  int k = int(verts.size()) - 1;
  for (int t = 0; t < X.count(k); ++t)
    if (X.vertices(k, t) == verts) return t;
  fail("no simplex with the given vertices");
}

// Sign of the permutation that sorts v.
inline int permutation_sign(std::vector<int> v) {
  int sign = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) sign = -sign;
  return sign;
}

// Nerve of a finite group up to dimension N: the k-simplices are tuples
// (g_1..g_k) of non-identity elements, ordered lexicographically.
class Nerve {
public:
  Nerve(const FiniteGroup& G, int N) : G_(G) {
    int n = G.order();
    for (int g = 0; g < n; ++g)
      if (g != G.identity()) nonid_.push_back(g);
    pos_.assign(n, -1);
    for (int i = 0; i < int(nonid_.size()); ++i) pos_[nonid_[i]] = i;
    X_.faces.resize(N + 1);
    X_.faces[0].push_back({});
    for (int k = 1; k <= N; ++k) {
      Int cnt = 1;
      for (int i = 0; i < k; ++i) cnt *= Int(nonid_.size());
      for (Int idx = 0; idx < cnt; ++idx) {
        auto t = tuple(k, int(idx));
        std::vector<int> f(k + 1);
        for (int j = 0; j <= k; ++j) f[j] = index(face_tuple(t, j));
        X_.faces[k].push_back(f);
      }
    }
  }

  const DeltaComplex& complex() const { return X_; }
  const FiniteGroup& group() const { return G_; }

  std::vector<int> tuple(int k, int idx) const {
    std::vector<int> t(k);
    int b = int(nonid_.size());
    for (int i = k - 1; i >= 0; --i) {
      t[i] = nonid_[idx % b];
      idx /= b;
    }
    return t;
  }
  // Index of a tuple, or -1 if it is degenerate (contains the identity).
  int index(const std::vector<int>& t) const {
    int idx = 0, b = int(nonid_.size());
    for (int g : t) {
      if (g == G_.identity()) return -1;
      idx = idx * b + pos_[g];
    }
    return idx;
  }
  std::vector<int> face_tuple(const std::vector<int>& t, int j) const {
    int k = int(t.size());
    std::vector<int> r;
    if (j == 0) {
      r.assign(t.begin() + 1, t.end());
    } else if (j == k) {
      r.assign(t.begin(), t.end() - 1);
    } else {
      for (int i = 0; i < k; ++i) {
        if (i == j - 1) {
          r.push_back(G_.mul(t[i], t[i + 1]));
          ++i;
        } else {
          r.push_back(t[i]);
        }
      }
    }
    return r;
  }

private:
  FiniteGroup G_;
  std::vector<int> nonid_, pos_;
  DeltaComplex X_;
};

inline DeltaComplex nerve(const FiniteGroup& G, int N) { return Nerve(G, N).complex(); }

// Triangulated Y × [0,1]. A simplex is a strictly increasing chain of pairs
// (local vertex of a simplex of Y, level) that covers every vertex of that
// simplex. The bottom copy is marked incoming and the top copy outgoing.
class Prism {
public:
  explicit Prism(const DeltaComplex& Y) : Y_(Y) {
    int n = Y.dim();
    X_.faces.resize(n + 2);
    // First pass: enumerate simplices dimension by dimension.
    for (int d = 0; d <= n + 1; ++d) {
      if (d <= n)
        for (int s = 0; s < Y.count(d); ++s) {
          add(d, s, chain_of(d, Type::Bottom, 0));
          add(d, s, chain_of(d, Type::Top, 0));
          for (int i = 0; i < d; ++i) add(d, s, chain_of(d, Type::Diagonal, i));
        }
      if (d >= 1)
        for (int s = 0; s < Y.count(d - 1); ++s)
          for (int i = 0; i <= d - 1; ++i) add(d - 1, s, chain_of(d - 1, Type::Vertical, i));
    }
    for (int d = 1; d <= n + 1; ++d)
      for (int id = 0; id < X_.count(d); ++id) {
        const auto& [k, s, chain] = keys_[d][id];
        std::vector<int> f;
        for (int j = 0; j <= d; ++j) {
          auto c = chain;
          c.erase(c.begin() + j);
          f.push_back(lookup(k, s, c));
        }
        X_.faces[d][id] = f;
      }
    if (Y.oriented()) {
      X_.orientation.assign(X_.count(n + 1), 0);
      for (int s = 0; s < Y.count(n); ++s)
        for (int i = 0; i <= n; ++i)
          X_.orientation[index(n, s, chain_of(n, Type::Vertical, i))] = Y.orientation[s] * (i % 2 ? -1 : 1);
    }
    Boundary bottom{"bottom", true, {}}, top{"top", false, {}};
    for (int k = 0; k <= n; ++k) {
      bottom.embed.emplace_back();
      top.embed.emplace_back();
      for (int s = 0; s < Y.count(k); ++s) {
        bottom.embed[k].push_back(this->bottom(k, s));
        top.embed[k].push_back(this->top(k, s));
      }
    }
    X_.boundaries = {bottom, top};
  }

  const DeltaComplex& complex() const { return X_; }
  int bottom(int k, int s) const { return index(k, s, chain_of(k, Type::Bottom, 0)); }
  int top(int k, int s) const { return index(k, s, chain_of(k, Type::Top, 0)); }
  // (k+1)-simplex (v_0,0)..(v_i,0),(v_i,1)..(v_k,1) over the k-simplex s.
  int vertical(int k, int s, int i) const { return index(k, s, chain_of(k, Type::Vertical, i)); }

private:
  enum class Type { Bottom, Top, Diagonal, Vertical };
  using Link = std::vector<std::pair<int, int>>;
  using Key = std::tuple<int, int, Link>;

  static Link chain_of(int k, Type t, int i) {
    Link c;
    for (int l = 0; l <= k; ++l) {
      int level = 0;
      switch (t) {
        case Type::Bottom: level = 0; break;
        case Type::Top: level = 1; break;
        case Type::Diagonal: level = l > i ? 1 : 0; break;
        case Type::Vertical: level = l > i ? 1 : 0; break;
      }
      c.push_back({l, level});
      if (t == Type::Vertical && l == i) c.push_back({l, 1});
    }
    return c;
  }
  void add(int k, int s, Link c) {
    int d = int(c.size()) - 1;
    Key key{k, s, c};
    if (ids_.count(key)) return;
    int id = X_.count(d);
    ids_[key] = id;
    X_.faces[d].push_back({});
    if (int(keys_.size()) <= d) keys_.resize(d + 1);
    keys_[d].push_back(key);
  }
  int index(int k, int s, const Link& c) const { return ids_.at(Key{k, s, c}); }
  // Canonical id of the chain c living over the k-simplex s of Y.
  int lookup(int k, int s, const Link& c) const {
    std::vector<int> used;
    for (auto [l, lev] : c)
      if (used.empty() || used.back() != l) used.push_back(l);
    int face = Y_.face_spanned(k, s, used);
    Link r;
    for (auto [l, lev] : c) {
      int pos = int(std::lower_bound(used.begin(), used.end(), l) - used.begin());
      r.push_back({pos, lev});
    }
    return index(int(used.size()) - 1, face, r);
  }

  const DeltaComplex& Y_;
  DeltaComplex X_;
  std::map<Key, int> ids_;
  std::vector<std::vector<Key>> keys_;
};

inline DeltaComplex prism(const DeltaComplex& Y) { return Prism(Y).complex(); }

inline DeltaComplex disjoint_union(const DeltaComplex& A, const DeltaComplex& B) {
  DeltaComplex X;
  int n = std::max(A.dim(), B.dim());
  X.faces.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    for (int s = 0; s < A.count(k); ++s) X.faces[k].push_back(A.faces[k][s]);
    for (int s = 0; s < B.count(k); ++s) {
      auto f = B.faces[k][s];
      for (int& x : f)
        if (x >= 0) x += A.count(k - 1);
      X.faces[k].push_back(f);
    }
  }
  if (A.oriented() && B.oriented() && A.dim() == B.dim()) {
    X.orientation = A.orientation;
    X.orientation.insert(X.orientation.end(), B.orientation.begin(), B.orientation.end());
  }
  X.boundaries = A.boundaries;
  for (auto b : B.boundaries) {
    for (int k = 0; k < int(b.embed.size()); ++k)
      for (int& s : b.embed[k]) s += A.count(k);
    X.boundaries.push_back(b);
  }
  return X;
}

// Quotient identifying simplex pairs[k][p].first with pairs[k][p].second.
// The identification must be compatible with faces; top simplices must
// not be identified. Boundary pieces listed in `drop` are removed.
inline DeltaComplex identify(const DeltaComplex& X,
                             const std::vector<std::vector<std::pair<int, int>>>& pairs,
                             const std::set<std::string>& drop = {}) {
  int n = X.dim();
  std::vector<std::vector<int>> parent(n + 1);
  for (int k = 0; k <= n; ++k) {
    parent[k].resize(X.count(k));
    std::iota(parent[k].begin(), parent[k].end(), 0);
  }
  auto find = [&](int k, int x) {
    while (parent[k][x] != x) x = parent[k][x] = parent[k][parent[k][x]];
    return x;
  };
  for (int k = 0; k < int(pairs.size()); ++k)
    for (auto [a, b] : pairs[k]) {
      if (k == n) fail("top-dimensional simplices cannot be identified");
      int ra = find(k, a), rb = find(k, b);
      if (ra != rb) parent[k][std::max(ra, rb)] = std::min(ra, rb);
    }
  std::vector<std::vector<int>> newid(n + 1);
  DeltaComplex Y;
  Y.faces.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    newid[k].assign(X.count(k), -1);
    for (int s = 0; s < X.count(k); ++s)
      if (find(k, s) == s) {
        newid[k][s] = Y.count(k);
        Y.faces[k].push_back({});
      }
    for (int s = 0; s < X.count(k); ++s) newid[k][s] = newid[k][find(k, s)];
  }
  for (int k = 1; k <= n; ++k)
    for (int s = 0; s < X.count(k); ++s) {
      std::vector<int> f;
      for (int x : X.faces[k][s]) f.push_back(x < 0 ? -1 : newid[k - 1][x]);
      int t = newid[k][s];
      if (Y.faces[k][t].empty())
        Y.faces[k][t] = f;
      else if (Y.faces[k][t] != f)
        fail("identification is not compatible with faces in dimension ", k);
    }
  Y.orientation = X.orientation;
  for (const auto& b : X.boundaries) {
    if (drop.count(b.name)) continue;
    Boundary nb = b;
    for (int k = 0; k < int(nb.embed.size()); ++k)
      for (int& s : nb.embed[k]) s = newid[k][s];
    Y.boundaries.push_back(nb);
  }
  validate(Y);
  return Y;
}

inline std::vector<std::vector<std::pair<int, int>>> match_boundaries(const Boundary& a, const Boundary& b) {
  if (a.embed.size() != b.embed.size())
    fail("boundary pieces '", a.name, "' and '", b.name, "' have different dimensions");
  std::vector<std::vector<std::pair<int, int>>> pairs(a.embed.size());
  for (size_t k = 0; k < a.embed.size(); ++k) {
    if (a.embed[k].size() != b.embed[k].size())
      fail("boundary pieces '", a.name, "' and '", b.name, "' differ in dimension ", k);
    for (size_t i = 0; i < a.embed[k].size(); ++i) pairs[k].push_back({a.embed[k][i], b.embed[k][i]});
  }
  return pairs;
}

// Glues the outgoing piece of X1 to the incoming piece of X2 using their
// models' indexing; the models must be equal complexes.
inline DeltaComplex glue(const DeltaComplex& X1, const DeltaComplex& X2) {
  auto piece = [](const DeltaComplex& X, bool incoming) {
    for (int i = 0; i < int(X.boundaries.size()); ++i)
      if (X.boundaries[i].incoming == incoming) return i;
    fail("glue needs an outgoing piece on the first and an incoming piece on the second");
  };
  int oi = piece(X1, false), ii = piece(X2, true);
  if (boundary_model(X1, X1.boundaries[oi]).faces != boundary_model(X2, X2.boundaries[ii]).faces)
    fail("glue: boundary models differ");
  DeltaComplex U = disjoint_union(X1, X2);
  Boundary& a = U.boundaries[oi];
  Boundary& b = U.boundaries[X1.boundaries.size() + ii];
  a.name = "\x01glue_out";
  b.name = "\x01glue_in";
  auto pairs = match_boundaries(a, b);
  return identify(U, pairs, {"\x01glue_out", "\x01glue_in"});
}

// Closed complex obtained by gluing the two ends of a cylinder-like
// cobordism whose incoming and outgoing models agree.
inline DeltaComplex close_up(const DeltaComplex& X) {
  const Boundary* in = X.find_boundary(true);
  const Boundary* out = X.find_boundary(false);
  if (!in || !out) fail("close_up needs incoming and outgoing pieces");
  if (boundary_model(X, *in).faces != boundary_model(X, *out).faces)
    fail("close_up: boundary models differ");
  return identify(X, match_boundaries(*in, *out), {in->name, out->name});
}

// Renumbers simplices: simplex i of dimension k becomes perm[k][i].
inline DeltaComplex relabel(const DeltaComplex& X, const std::vector<std::vector<int>>& perm) {
  DeltaComplex Y;
  Y.faces.resize(X.dim() + 1);
  for (int k = 0; k <= X.dim(); ++k) {
    Y.faces[k].assign(X.count(k), {});
    for (int s = 0; s < X.count(k); ++s) {
      auto f = X.faces[k][s];
      for (int& x : f)
        if (x >= 0) x = perm[k - 1][x];
      Y.faces[k][perm[k][s]] = f;
    }
  }
  if (X.oriented()) {
    Y.orientation.assign(X.orientation.size(), 0);
    for (int s = 0; s < X.count(X.dim()); ++s) Y.orientation[perm[X.dim()][s]] = X.orientation[s];
  }
  for (auto b : X.boundaries) {
    for (int k = 0; k < int(b.embed.size()); ++k)
      for (int& s : b.embed[k]) s = perm[k][s];
    Y.boundaries.push_back(b);
  }
  validate(Y);
  return Y;
}

// Mapping cylinder of the relabeling `perm` of Y: a prism whose outgoing
// piece is parametrized by relabel(Y, perm).
inline DeltaComplex mapping_cylinder(const DeltaComplex& Y, const std::vector<std::vector<int>>& perm) {
  DeltaComplex X = prism(Y);
  Boundary& top = X.boundaries[1];
  auto old = top.embed;
  for (int k = 0; k < int(old.size()); ++k)
    for (int s = 0; s < int(old[k].size()); ++s) top.embed[k][perm[k][s]] = old[k][s];
  return X;
}

// ---------------------------------------------------------------------------
// Edge-path groupoid presentation: generators are edges, each triangle gives
// the relation e01 * e12 = e02, and a spanning forest is marked.

struct EdgePathPresentation {
  std::vector<std::pair<int, int>> edges;          // (source, target)
  std::vector<std::array<int, 3>> relations;       // (e01, e12, e02)
  std::vector<bool> tree;                          // spanning forest edges
  std::vector<int> component;                      // per vertex
  int components = 0;
};

inline EdgePathPresentation edge_path_groupoid(const DeltaComplex& X) {
  EdgePathPresentation p;
  int nv = X.count(0);
  for (int e = 0; e < X.count(1); ++e) p.edges.push_back({X.faces[1][e][1], X.faces[1][e][0]});
  for (int t = 0; t < X.count(2); ++t)
    p.relations.push_back({X.faces[2][t][2], X.faces[2][t][0], X.faces[2][t][1]});
  p.tree.assign(X.count(1), false);
  p.component.assign(nv, -1);
  std::vector<std::vector<std::pair<int, int>>> adj(nv);
  for (int e = 0; e < X.count(1); ++e) {
    adj[p.edges[e].first].push_back({e, p.edges[e].second});
    adj[p.edges[e].second].push_back({e, p.edges[e].first});
  }
  for (int r = 0; r < nv; ++r) {
    if (p.component[r] >= 0) continue;
    int c = p.components++;
    std::vector<int> queue{r};
    p.component[r] = c;
    for (size_t q = 0; q < queue.size(); ++q)
      for (auto [e, w] : adj[queue[q]])
        if (p.component[w] < 0) {
          p.component[w] = c;
          p.tree[e] = true;
          queue.push_back(w);
        }
  }
  return p;
}

// First homology as invariant factors (abelianized edge-path groupoid).
inline std::vector<Int> first_homology(const DeltaComplex& X) {
  Matrix d1 = boundary_matrix(X, 1), d2 = boundary_matrix(X, 2);
  Smith s1 = smith(d1), s2 = smith(d2);
  std::vector<Int> r;
  for (int i = 0; i < s2.rank; ++i)
    if (s2.D(i, i) != 1) r.push_back(s2.D(i, i));
  for (int i = 0; i < X.count(1) - s1.rank - s2.rank; ++i) r.push_back(0);
  return r;
}

// ---------------------------------------------------------------------------
// Built-in complexes.

namespace library {

inline DeltaComplex point() { return from_facets(1, {{0}}); }
inline DeltaComplex interval() { return from_facets(2, {{0, 1}}); }

// Three vertices, edges 0->1, 1->2, 2->0, all positively oriented.
inline DeltaComplex circle() {
  DeltaComplex X;
  X.faces = {{{}, {}, {}}, {{1, 0}, {2, 1}, {0, 2}}};
  X.orientation = {1, 1, 1};
  return X;
}

inline DeltaComplex boundary_of_simplex(int n) {
  std::vector<std::vector<int>> facets;
  for (int miss = 0; miss <= n; ++miss) {
    std::vector<int> f;
    for (int v = 0; v <= n; ++v)
      if (v != miss) f.push_back(v);
    facets.push_back(f);
  }
  DeltaComplex X = from_facets(n + 1, facets);
  X.orientation.assign(X.count(n - 1), 0);
  for (int t = 0; t < X.count(n - 1); ++t) {
    auto v = X.vertices(n - 1, t);
    int miss = 0;
    while (miss < int(v.size()) && v[miss] == miss) ++miss;
    X.orientation[t] = miss % 2 ? -1 : 1;
  }
  return X;
}
inline DeltaComplex sphere2() { return boundary_of_simplex(3); }
inline DeltaComplex sphere3() { return boundary_of_simplex(4); }

// 3x3 grid torus: vertex (i,j) has index 3i+j, each square split along its
// main diagonal.
inline DeltaComplex torus() {
  auto v = [](int i, int j) { return 3 * ((i + 3) % 3) + (j + 3) % 3; };
  std::vector<std::vector<int>> ccw;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ccw.push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1)});
      ccw.push_back({v(i, j), v(i + 1, j + 1), v(i, j + 1)});
    }
  DeltaComplex X = from_facets(9, ccw);
  X.orientation.assign(X.count(2), 0);
  for (const auto& t : ccw) {
    auto sorted = t;
    std::sort(sorted.begin(), sorted.end());
    X.orientation[simplex_index(X, sorted)] = permutation_sign(t);
  }
  return X;
}

inline DeltaComplex s2xs1() { return close_up(prism(sphere2())); }
inline DeltaComplex torus3() { return close_up(prism(torus())); }

inline DeltaComplex by_name(const std::string& name) {
  if (name == "point") return point();
  if (name == "interval") return interval();
  if (name == "s1") return circle();
  if (name == "s2") return sphere2();
  if (name == "t2") return torus();
  if (name == "s3") return sphere3();
  if (name == "s2xs1") return s2xs1();
  if (name == "t3") return torus3();
  if (name == "cyl_s1") return prism(circle());
  if (name == "cyl_s2") return prism(sphere2());
  if (name == "cyl_t2") return prism(torus());
  fail("unknown complex '", name, "'");
}

inline std::vector<std::string> closed_manifolds() { return {"s1", "s2", "t2", "s3", "s2xs1", "t3"}; }

}  // namespace library

}  // namespace dwcat
