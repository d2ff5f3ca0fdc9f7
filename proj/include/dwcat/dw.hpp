#pragma once
// Finite-group Dijkgraaf-Witten theory on Δ-complexes: group cocycles,
// flat gauge fields, the field groupoid, state spaces, cobordism maps, and
// an independent brute-force state sum.
#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <thread>
#include <vector>

#include "cap.hpp"
#include "cyclotomic.hpp"
#include "group.hpp"

namespace dwcat {

// ---------------------------------------------------------------------------
// Normalized group cocycles G^args -> Z/modulus.

struct GroupCocycle {
  FiniteGroup G;
  int args = 0;
  Int modulus = 1;
  std::vector<Int> values;  // mixed radix over G, first argument most significant
  std::string name;

  size_t index(const std::vector<int>& t) const {
    size_t i = 0;
    for (int g : t) i = i * size_t(G.order()) + size_t(g);
    return i;
  }
  Int operator()(const std::vector<int>& t) const { return values.at(index(t)); }
};

inline std::vector<std::vector<int>> all_tuples(int order, int k) {
  std::vector<std::vector<int>> r;
  std::vector<int> t(k, 0);
  while (true) {
    r.push_back(t);
    int i = k - 1;
    while (i >= 0 && ++t[i] == order) t[i--] = 0;
    if (i < 0) break;
  }
  return r;
}

// Coboundary of a function on G^k at a (k+1)-tuple, following the nerve's
// face maps.
inline Int group_coboundary(const FiniteGroup& G, const std::function<Int(const std::vector<int>&)>& w,
                            const std::vector<int>& t) {
  int k = int(t.size());
  Int s = 0;
  for (int j = 0; j <= k; ++j) {
    std::vector<int> f;
    if (j == 0) {
      f.assign(t.begin() + 1, t.end());
    } else if (j == k) {
      f.assign(t.begin(), t.end() - 1);
    } else {
      for (int i = 0; i < k; ++i) {
        if (i == j - 1) {
          f.push_back(G.mul(t[i], t[i + 1]));
          ++i;
        } else {
          f.push_back(t[i]);
        }
      }
    }
    s += (j % 2 ? -1 : 1) * w(f);
  }
  return s;
}

inline void validate(const GroupCocycle& w) {
  size_t n = 1;
  for (int i = 0; i < w.args; ++i) n *= size_t(w.G.order());
  if (w.values.size() != n) fail("cocycle table has ", w.values.size(), " entries, expected ", n);
  if (w.modulus < 1) fail("cocycle modulus must be positive");
  for (const auto& t : all_tuples(w.G.order(), w.args)) {
    bool degenerate = std::find(t.begin(), t.end(), w.G.identity()) != t.end();
    if (degenerate && mod(w(t), w.modulus) != 0) fail("cocycle is not normalized at ", tuple_str(t));
  }
  auto f = [&](const std::vector<int>& t) { return w(t); };
  for (const auto& t : all_tuples(w.G.order(), w.args + 1))
    if (mod(group_coboundary(w.G, f, t), w.modulus) != 0) fail("group cocycle condition fails at ", tuple_str(t));
}

inline GroupCocycle make_group_cocycle(const FiniteGroup& G, int args, Int modulus,
                                       const std::function<Int(const std::vector<int>&)>& f, std::string name) {
  GroupCocycle w{G, args, modulus, {}, std::move(name)};
  for (const auto& t : all_tuples(G.order(), args)) w.values.push_back(mod(f(t), modulus));
  validate(w);
  return w;
}

inline GroupCocycle trivial_cocycle(const FiniteGroup& G, int args) {
  return make_group_cocycle(G, args, 1, [](const std::vector<int>&) { return Int(0); }, "trivial");
}

// The degree 3 family on Z/n: p a n [b + c >= n] modulo n^2.
inline GroupCocycle cyclic_cocycle(int n, Int p) {
  return make_group_cocycle(
      FiniteGroup::cyclic(n), 3, Int(n) * n,
      [n, p](const std::vector<int>& t) { return p * t[0] * n * (t[1] + t[2] >= n ? 1 : 0); },
      "p" + std::to_string(p));
}

// The coboundary of a normalized function beta on G^(args-1).
inline GroupCocycle coboundary_cocycle(const FiniteGroup& G, int args, Int modulus,
                                       const std::function<Int(const std::vector<int>&)>& beta, std::string name) {
  auto nb = [&](const std::vector<int>& t) {
    return std::find(t.begin(), t.end(), G.identity()) != t.end() ? Int(0) : beta(t);
  };
  return make_group_cocycle(G, args, modulus, [&](const std::vector<int>& t) { return group_coboundary(G, nb, t); },
                            std::move(name));
}

// Pullback along a group homomorphism phi: H -> G.
inline GroupCocycle pullback_cocycle(const GroupCocycle& w, const FiniteGroup& H, const std::vector<int>& phi,
                                     std::string name) {
  for (int a = 0; a < H.order(); ++a)
    for (int b = 0; b < H.order(); ++b)
      if (phi[H.mul(a, b)] != w.G.mul(phi[a], phi[b])) fail("pullback map is not a homomorphism");
  return make_group_cocycle(
      H, w.args, w.modulus,
      [&](const std::vector<int>& t) {
        std::vector<int> s;
        for (int g : t) s.push_back(phi[g]);
        return w(s);
      },
      std::move(name));
}

// The cocycle as a Cocycle2 on the nerve: zero objects, phases omega.
inline Cocycle2 nerve_cocycle(const Nerve& N, const GroupCocycle& w) {
  const auto& X = N.complex();
  if (X.dim() < w.args) fail("nerve too short for a cocycle with ", w.args, " arguments");
  CochainContext ctx(X, CoeffGroupoid::lines(w.modulus));
  std::vector<Int> ph(X.count(w.args));
  for (int s = 0; s < X.count(w.args); ++s) ph[s] = w(N.tuple(w.args, s));
  return ctx.phase_cocycle(w.args - 1, ph);
}

// ---------------------------------------------------------------------------
// Gauge fields: one group element per edge, from source (d_1) to target
// (d_0), flat on every triangle.

using Field = std::vector<int>;

struct EdgeIncidence {
  std::vector<int> src, tgt;
  std::vector<std::array<int, 3>> triangles;  // (e01, e12, e02)
  std::vector<std::vector<int>> triangles_of;  // per edge

  explicit EdgeIncidence(const DeltaComplex& X) {
    for (int e = 0; e < X.count(1); ++e) {
      src.push_back(X.faces[1][e][1]);
      tgt.push_back(X.faces[1][e][0]);
    }
    triangles_of.resize(X.count(1));
    for (int t = 0; t < X.count(2); ++t) {
      triangles.push_back({X.faces[2][t][2], X.faces[2][t][0], X.faces[2][t][1]});
      for (int e : triangles.back()) triangles_of[e].push_back(t);
    }
  }
};

inline bool is_flat(const DeltaComplex& X, const FiniteGroup& G, const Field& f) {
  EdgeIncidence I(X);
  if (int(f.size()) != X.count(1)) return false;
  for (auto [a, b, c] : I.triangles)
    if (G.mul(f[a], f[b]) != f[c]) return false;
  return true;
}

// g'_{uv} = h(u)^-1 g_{uv} h(v)
inline Field gauge_transform(const DeltaComplex& X, const FiniteGroup& G, const Field& f, const std::vector<int>& h) {
  Field r(f.size());
  for (int e = 0; e < X.count(1); ++e) r[e] = G.mul(G.inv(h[X.faces[1][e][1]]), G.mul(f[e], h[X.faces[1][e][0]]));
  return r;
}

inline std::vector<int> spine_labels(const DeltaComplex& X, int k, int s, const Field& f) {
  std::vector<int> t(k);
  for (int i = 0; i < k; ++i) t[i] = f[X.edge(k, s, i, i + 1)];
  return t;
}

// Sum over the chain of coefficient times omega of the spine labels.
inline Int field_action(const DeltaComplex& X, const GroupCocycle& w, const Field& f, const Chain& z) {
  if (z.dim != w.args) fail("pairing a ", z.dim, "-chain with a cocycle of ", w.args, " arguments");
  Int s = 0;
  for (auto [sig, v] : z.c) s = mod(s + v * w(spine_labels(X, z.dim, sig, f)), w.modulus);
  return s;
}

// The same pairing computed as the degree of the cap product of z with the
// pulled-back cocycle.
inline Int field_cocycle_pairing(const DeltaComplex& X, const GroupCocycle& w, const Field& f, const Chain& z) {
  Nerve N(w.G, w.args + 1);
  SimplicialMap F = map_to_nerve(X, N, f);
  Cocycle2 x = nerve_cocycle(N, w);
  auto ph = pullback_phases(F, w.args, x.phi.phase, X.count(w.args));
  auto c = cap_phases(X, z, w.args, ph, w.modulus);
  Int s = 0;
  for (Int v : c) s += v;
  return mod(cap_sign(w.args, w.args) * s, w.modulus);
}

// Enumerates flat completions of a partial field (-1 = unassigned) by
// propagating triangle relations and branching on the first free edge.
class FieldSolver {
public:
  FieldSolver(const DeltaComplex& X, const FiniteGroup& G) : I_(X), G_(G), edges_(X.count(1)) {}

  void enumerate(Field partial, const std::function<void(const Field&)>& visit) const {
    std::vector<int> queue;
    for (int e = 0; e < edges_; ++e)
      if (partial[e] >= 0) queue.push_back(e);
    if (!propagate(partial, queue)) return;
    recurse(partial, visit);
  }
  std::vector<Field> all(const Field& partial) const {
    std::vector<Field> r;
    enumerate(partial, [&](const Field& f) { r.push_back(f); });
    return r;
  }
  Field unique(const Field& partial) const {
    auto r = all(partial);
    if (r.size() != 1) fail("expected a unique flat extension, found ", r.size());
    return r[0];
  }

private:
  bool propagate(Field& f, std::vector<int>& queue) const {
    while (!queue.empty()) {
      int e = queue.back();
      queue.pop_back();
      for (int t : I_.triangles_of[e]) {
        auto [a, b, c] = I_.triangles[t];
        int known = (f[a] >= 0) + (f[b] >= 0) + (f[c] >= 0);
        if (known == 3) {
          if (G_.mul(f[a], f[b]) != f[c]) return false;
        } else if (known == 2) {
          if (f[a] < 0) {
            f[a] = G_.mul(f[c], G_.inv(f[b]));
            queue.push_back(a);
          } else if (f[b] < 0) {
            f[b] = G_.mul(G_.inv(f[a]), f[c]);
            queue.push_back(b);
          } else {
            f[c] = G_.mul(f[a], f[b]);
            queue.push_back(c);
          }
        }
      }
    }
    return true;
  }
  void recurse(const Field& f, const std::function<void(const Field&)>& visit) const {
    int e = 0;
    while (e < edges_ && f[e] >= 0) ++e;
    if (e == edges_) {
      visit(f);
      return;
    }
    for (int g = 0; g < G_.order(); ++g) {
      Field next = f;
      next[e] = g;
      std::vector<int> queue{e};
      if (propagate(next, queue)) recurse(next, visit);
    }
  }

  EdgeIncidence I_;
  const FiniteGroup& G_;
  int edges_;
};

// Spanning forest grown from a set of fixed vertices; unreached components
// get their smallest vertex as a free root.
struct Forest {
  std::vector<int> order;        // vertices in discovery order
  std::vector<int> parent_edge;  // -1 for roots
  std::vector<int> parent;
  std::vector<int> component;    // index of the root set: 0 for fixed, then free roots
  std::vector<bool> tree;        // per edge
  std::vector<int> free_roots;
};

inline Forest spanning_forest(const DeltaComplex& X, const std::vector<int>& fixed) {
  Forest F;
  int nv = X.count(0);
  F.parent_edge.assign(nv, -1);
  F.parent.assign(nv, -1);
  F.component.assign(nv, -1);
  F.tree.assign(X.count(1), false);
  std::vector<std::vector<std::pair<int, int>>> adj(nv);
  for (int e = 0; e < X.count(1); ++e) {
    int s = X.faces[1][e][1], t = X.faces[1][e][0];
    adj[s].push_back({e, t});
    adj[t].push_back({e, s});
  }
  auto grow = [&](std::vector<int> start, int comp) {
    for (int v : start) {
      F.component[v] = comp;
      F.order.push_back(v);
    }
    for (size_t q = F.order.size() - start.size(); q < F.order.size(); ++q) {
      int u = F.order[q];
      for (auto [e, w] : adj[u])
        if (F.component[w] < 0) {
          F.component[w] = comp;
          F.parent_edge[w] = e;
          F.parent[w] = u;
          F.tree[e] = true;
          F.order.push_back(w);
        }
    }
  };
  std::vector<int> fx = fixed;
  std::sort(fx.begin(), fx.end());
  fx.erase(std::unique(fx.begin(), fx.end()), fx.end());
  int comp = 0;
  if (!fx.empty()) grow(fx, comp++);
  for (int v = 0; v < nv; ++v)
    if (F.component[v] < 0) {
      F.free_roots.push_back(v);
      grow({v}, comp++);
    }
  return F;
}

// Gauge transformation h, trivial on roots, with f^h equal to e on tree edges.
inline std::vector<int> gauge_fixing(const DeltaComplex& X, const FiniteGroup& G, const Forest& F, const Field& f) {
  std::vector<int> h(X.count(0), G.identity());
  for (int v : F.order) {
    int e = F.parent_edge[v];
    if (e < 0) continue;
    int u = F.parent[v];
    if (X.faces[1][e][1] == u)
      h[v] = G.mul(G.inv(f[e]), h[u]);
    else
      h[v] = G.mul(f[e], h[u]);
  }
  return h;
}

// Flat field on prism(Y): f on the bottom, h on the vertical edges.
inline Field cylinder_field(const Prism& P, const DeltaComplex& Y, const FiniteGroup& G, const Field& f,
                            const std::vector<int>& h) {
  const auto& X = P.complex();
  Field partial(X.count(1), -1);
  for (int e = 0; e < Y.count(1); ++e) partial[P.bottom(1, e)] = f[e];
  for (int v = 0; v < Y.count(0); ++v) partial[P.vertical(0, v, 0)] = h[v];
  return FieldSolver(X, G).unique(partial);
}

inline Field restrict_field(const Field& F, const Boundary& b) {
  Field f;
  if (b.embed.size() > 1)
    for (int e : b.embed[1]) f.push_back(F[e]);
  return f;
}

// Orientation of a boundary piece induced from the relative fundamental
// cycle: the boundary of [X] is [outgoing] - [incoming].
inline std::vector<int> boundary_orientation(const DeltaComplex& X, const Boundary& b) {
  Chain dz = boundary(X, fundamental_cycle(X));
  int n = X.dim() - 1;
  std::vector<int> o;
  for (int s : b.embed.at(n)) {
    Int c = dz.c.count(s) ? dz.c.at(s) : 0;
    if (c != 1 && c != -1) fail("boundary piece '", b.name, "' is not covered once by the fundamental cycle");
    o.push_back(int(b.incoming ? -c : c));
  }
  return o;
}

inline DeltaComplex oriented_boundary_model(const DeltaComplex& X, const Boundary& b) {
  DeltaComplex Y = boundary_model(X, b);
  Y.boundaries.clear();
  Y.orientation = boundary_orientation(X, b);
  return Y;
}

// ---------------------------------------------------------------------------
// The field groupoid of a closed complex and the state space.

struct Orbit {
  int anchor = 0;                           // index into reps
  std::vector<std::vector<int>> stabilizer;  // constant gauge values per component
  std::vector<Int> holonomy;                // theta per stabilizer element
  bool holonomy_free = true;
  Rational size;                            // number of fields in the orbit
};

class StateSpace {
public:
  StateSpace(DeltaComplex Y, GroupCocycle w)
      : Y_(std::move(Y)), w_(std::move(w)), forest_(spanning_forest(Y_, {})), prism_(Y_) {
    if (!Y_.oriented()) fail("state spaces need an oriented complex");
    if (w_.args != Y_.dim() + 1) fail("cocycle with ", w_.args, " arguments on a ", Y_.dim(), "-dimensional complex");
    prism_cycle_ = fundamental_cycle(prism_.complex());
    const auto& G = w_.G;
    Field partial(Y_.count(1), -1);
    for (int e = 0; e < Y_.count(1); ++e)
      if (forest_.tree[e]) partial[e] = G.identity();
    reps_ = FieldSolver(Y_, G).all(partial);
    std::sort(reps_.begin(), reps_.end());
    for (int i = 0; i < int(reps_.size()); ++i) rep_index_[reps_[i]] = i;
    orbit_of_rep_.assign(reps_.size(), -1);
    int comps = int(forest_.free_roots.size());
    auto gauges = all_tuples(G.order(), comps);
    Rational total = 1;
    for (int v = 0; v < Y_.count(0); ++v) total *= G.order();
    for (int i = 0; i < int(reps_.size()); ++i) {
      if (orbit_of_rep_[i] >= 0) continue;
      Orbit o;
      o.anchor = i;
      int id = int(orbits_.size());
      for (const auto& c : gauges) {
        Field g = gauge_transform(Y_, G, reps_[i], constant_gauge(c));
        int j = rep_index_.at(g);
        orbit_of_rep_[j] = id;
        if (j == i) o.stabilizer.push_back(c);
      }
      o.size = total / Rational(long(o.stabilizer.size()));
      for (const auto& c : o.stabilizer) {
        Int th = field_action(prism_.complex(), w_, cylinder_field(prism_, Y_, G, reps_[i], constant_gauge(c)),
                              prism_cycle_);
        o.holonomy.push_back(th);
        if (th != 0) o.holonomy_free = false;
      }
      orbits_.push_back(o);
      if (o.holonomy_free) basis_.push_back(id);
    }
    basis_pos_.assign(orbits_.size(), -1);
    for (int b = 0; b < int(basis_.size()); ++b) basis_pos_[basis_[b]] = b;
  }

  const DeltaComplex& complex() const { return Y_; }
  const GroupCocycle& cocycle() const { return w_; }
  const std::vector<Field>& reps() const { return reps_; }
  const std::vector<Orbit>& orbits() const { return orbits_; }
  const std::vector<int>& basis() const { return basis_; }
  int dimension() const { return int(basis_.size()); }
  int basis_position(int orbit) const { return basis_pos_.at(orbit); }
  const Field& anchor(int orbit) const { return reps_[orbits_[orbit].anchor]; }
  const Prism& prism() const { return prism_; }
  const Chain& prism_cycle() const { return prism_cycle_; }

  std::vector<int> constant_gauge(const std::vector<int>& c) const {
    std::vector<int> h(Y_.count(0));
    for (int v = 0; v < Y_.count(0); ++v) h[v] = c[forest_.component[v]];
    return h;
  }

  // Orbit of an arbitrary flat field, and a gauge transformation h with
  // anchor^h = f.
  std::pair<int, std::vector<int>> locate(const Field& f) const {
    const auto& G = w_.G;
    auto h1 = gauge_fixing(Y_, G, forest_, f);
    Field f0 = gauge_transform(Y_, G, f, h1);
    auto it = rep_index_.find(f0);
    if (it == rep_index_.end()) fail("field is not flat");
    int o = orbit_of_rep_[it->second];
    const Field& a = anchor(o);
    for (const auto& c : all_tuples(G.order(), int(forest_.free_roots.size()))) {
      auto hc = constant_gauge(c);
      if (gauge_transform(Y_, G, a, hc) == f0) {
        std::vector<int> h(Y_.count(0));
        for (int v = 0; v < Y_.count(0); ++v) h[v] = G.mul(hc[v], G.inv(h1[v]));
        return {o, h};
      }
    }
    fail("internal: representative not conjugate to its anchor");
  }
  int orbit_of(const Field& f) const { return locate(f).first; }

  // Phase of the basis vector of f's orbit at f: the cylinder action from
  // the anchor to f.
  Int transport(const Field& f) const {
    auto [o, h] = locate(f);
    return field_action(prism_.complex(), w_, cylinder_field(prism_, Y_, w_.G, anchor(o), h), prism_cycle_);
  }
  Int holonomy(const Field& f, const std::vector<int>& h) const {
    return field_action(prism_.complex(), w_, cylinder_field(prism_, Y_, w_.G, f, h), prism_cycle_);
  }

private:
  DeltaComplex Y_;
  GroupCocycle w_;
  Forest forest_;
  Prism prism_;
  Chain prism_cycle_;
  std::vector<Field> reps_;
  std::map<Field, int> rep_index_;
  std::vector<int> orbit_of_rep_;
  std::vector<Orbit> orbits_;
  std::vector<int> basis_, basis_pos_;
};

// ---------------------------------------------------------------------------
// Cobordism maps.

struct CobordismMap {
  std::optional<StateSpace> in, out;
  std::vector<std::vector<Cyclo>> matrix;  // rows: outgoing basis, columns: incoming basis
  int rows() const { return int(matrix.size()); }
  int cols() const { return matrix.empty() ? 0 : int(matrix[0].size()); }
};

inline Rational group_power(int order, long e) {
  Rational r = 1;
  for (long i = 0; i < std::abs(e); ++i) r *= order;
  return e >= 0 ? r : Rational(1) / r;
}

inline std::pair<const Boundary*, const Boundary*> pieces(const DeltaComplex& X) {
  const Boundary *in = nullptr, *out = nullptr;
  for (const auto& b : X.boundaries) {
    auto& slot = b.incoming ? in : out;
    if (slot) fail("at most one incoming and one outgoing boundary piece are supported");
    slot = &b;
  }
  return {in, out};
}

// Matrix of Z(X) between the holonomy-free orbit bases of the boundary
// pieces. Columns are computed independently and may run on several threads.
inline CobordismMap cobordism_map(const DeltaComplex& X, const GroupCocycle& w, int threads = 1) {
  if (!X.oriented()) fail("cobordism needs a relative fundamental cycle");
  if (w.args != X.dim()) fail("cocycle with ", w.args, " arguments on a ", X.dim(), "-dimensional cobordism");
  const auto& G = w.G;
  auto [bin, bout] = pieces(X);
  CobordismMap R;
  if (bin) R.in.emplace(oriented_boundary_model(X, *bin), w);
  if (bout) R.out.emplace(oriented_boundary_model(X, *bout), w);
  int rows = R.out ? R.out->dimension() : 1, cols = R.in ? R.in->dimension() : 1;
  R.matrix.assign(rows, std::vector<Cyclo>(cols, Cyclo(int(w.modulus))));
  Chain z = fundamental_cycle(X);
  std::vector<int> fixed;
  if (bin) fixed = bin->embed[0];
  Forest F = spanning_forest(X, fixed);
  long vout = bout ? long(bout->embed[0].size()) : 0, vin = bin ? long(bin->embed[0].size()) : 0;
  Rational factor = group_power(G.order(), vout - vin - long(F.free_roots.size()));
  FieldSolver solver(X, G);

  auto column = [&](int col) {
    Field partial(X.count(1), -1);
    for (int e = 0; e < X.count(1); ++e)
      if (F.tree[e]) partial[e] = G.identity();
    if (bin) {
      const Field& a = R.in->anchor(R.in->basis()[col]);
      for (size_t i = 0; i < a.size(); ++i) partial[bin->embed[1][i]] = a[i];
    }
    std::vector<std::vector<Rational>> counts(rows, std::vector<Rational>(size_t(w.modulus), Rational(0)));
    std::map<Field, std::pair<int, Int>> seen;  // outgoing field -> (basis row or -1, transport)
    solver.enumerate(partial, [&](const Field& f) {
      Int W = field_action(X, w, f, z);
      int row = 0;
      Int tau = 0;
      if (bout) {
        Field fo = restrict_field(f, *bout);
        auto it = seen.find(fo);
        if (it == seen.end()) {
          int o = R.out->orbit_of(fo);
          int b = R.out->basis_position(o);
          it = seen.emplace(fo, std::make_pair(b, b >= 0 ? R.out->transport(fo) : Int(0))).first;
        }
        row = it->second.first;
        tau = it->second.second;
        if (row < 0) return;
      }
      counts[row][size_t(mod(W - tau, w.modulus))] += 1;
    });
    for (int r = 0; r < rows; ++r) {
      for (auto& c : counts[r]) c *= factor;
      R.matrix[r][col] = Cyclo::from_counts(int(w.modulus), counts[r]);
    }
  };

  int nt = std::max(1, std::min(threads, cols));
  if (nt == 1) {
    for (int c = 0; c < cols; ++c) column(c);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        for (int c = t; c < cols; c += nt) column(c);
      });
    for (auto& th : pool) th.join();
  }
  return R;
}

inline Cyclo partition_function(const DeltaComplex& X, const GroupCocycle& w, int threads = 1) {
  if (!X.boundaries.empty()) fail("partition function of a complex with boundary");
  return cobordism_map(X, w, threads).matrix[0][0];
}

inline std::vector<std::vector<Cyclo>> multiply(const std::vector<std::vector<Cyclo>>& A,
                                                const std::vector<std::vector<Cyclo>>& B, int M) {
  size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
  if (!A.empty() && A[0].size() != k) fail("matrix shapes do not compose");
  std::vector<std::vector<Cyclo>> C(n, std::vector<Cyclo>(m, Cyclo(M)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j)
      for (size_t l = 0; l < k; ++l) C[i][j] += A[i][l] * B[l][j];
  return C;
}

// ---------------------------------------------------------------------------
// Line of a field: the phase between fundamental-cycle representatives
// y and y + dx is <f* omega, x>, and it must vanish on cycles x. The check
// runs in the double prism Y x I x I with a flat field restricting to f on
// the bottom copy.

struct LineOfField {
  Field field;
  Int label = 0;
  Int cycles_checked = 0;
};

inline LineOfField line_of_field(const DeltaComplex& Y, const GroupCocycle& w, const Field& f,
                                 const std::vector<int>& h1, const std::vector<int>& h2, int random_cycles,
                                 unsigned seed) {
  if (w.args != Y.dim() + 1) fail("cocycle degree does not match the complex");
  if (!is_flat(Y, w.G, f)) fail("field is not flat");
  Prism P1(Y);
  Field f1 = cylinder_field(P1, Y, w.G, f, h1);
  const auto& Y1 = P1.complex();
  Prism P2(Y1);
  Field f2 = cylinder_field(P2, Y1, w.G, f1, h2);
  const auto& Z = P2.complex();
  int k = w.args;
  LineOfField L{f, 0, 0};
  auto check = [&](const Chain& x) {
    if (!is_cycle(Z, x)) fail("internal: generated chain is not a cycle");
    Int ph = field_action(Z, w, f2, x);
    if (ph != 0) fail("holonomy ", ph, " on a cycle: the line of the field is not defined");
    ++L.cycles_checked;
  };
  std::vector<Chain> small;
  for (int s = 0; s < Z.count(k + 1); ++s) {
    Chain x = boundary(Z, Chain::simplex(k + 1, s));
    check(x);
    small.push_back(x);
  }
  std::mt19937 rng(seed);
  for (int r = 0; r < random_cycles && !small.empty(); ++r) {
    Chain x{k, {}};
    for (int j = 0; j < 4; ++j) x = x + small[rng() % small.size()].scaled(Int(rng() % 5) - 2);
    check(x);
  }
  return L;
}

// ---------------------------------------------------------------------------
// Independent state sum: plain backtracking over all edge labels, with no
// gauge fixing, propagation or orbit bookkeeping.

namespace oracle {

struct Budget {
  long long max_nodes = 2'000'000'000;
};

class Enumerator {
public:
  Enumerator(const DeltaComplex& X, const FiniteGroup& G) : X_(X), G_(G) {
    int ne = X.count(1);
    std::vector<std::array<int, 3>> tris;
    std::vector<std::vector<int>> of(ne);
    for (int t = 0; t < X.count(2); ++t) {
      tris.push_back({X.faces[2][t][2], X.faces[2][t][0], X.faces[2][t][1]});
      for (int e : tris.back()) of[e].push_back(t);
    }
    // Greedy order: next the edge touching the most partly assigned triangles.
    std::vector<int> placed(ne, -1), filled(tris.size(), 0);
    for (int step = 0; step < ne; ++step) {
      int best = -1, score = -1;
      for (int e = 0; e < ne; ++e) {
        if (placed[e] >= 0) continue;
        int sc = 0;
        for (int t : of[e]) sc += filled[t] * filled[t];
        if (sc > score) best = e, score = sc;
      }
      placed[best] = step;
      order_.push_back(best);
      for (int t : of[best]) ++filled[t];
    }
    closing_.resize(ne);
    for (const auto& t : tris) {
      int last = std::max({placed[t[0]], placed[t[1]], placed[t[2]]});
      closing_[last].push_back(t);
    }
  }
  // Visits every flat field agreeing with `fixed` (-1 = free).
  void run(const Field& fixed, Budget budget, const std::function<void(const Field&)>& visit) {
    Field f(X_.count(1), -1);
    nodes_ = 0;
    step(0, fixed, f, budget, visit);
  }

private:
  void step(int e, const Field& fixed, Field& f, const Budget& budget, const std::function<void(const Field&)>& visit) {
    if (++nodes_ > budget.max_nodes) fail("oracle budget of ", budget.max_nodes, " nodes exceeded");
    if (e == int(f.size())) {
      visit(f);
      return;
    }
    int edge = order_[e];
    for (int g = 0; g < G_.order(); ++g) {
      if (fixed[edge] >= 0 && g != fixed[edge]) continue;
      f[edge] = g;
      bool ok = true;
      for (const auto& t : closing_[e])
        if (G_.mul(f[t[0]], f[t[1]]) != f[t[2]]) {
          ok = false;
          break;
        }
      if (ok) step(e + 1, fixed, f, budget, visit);
    }
    f[edge] = -1;
  }

  const DeltaComplex& X_;
  const FiniteGroup& G_;
  std::vector<int> order_;
  std::vector<std::vector<std::array<int, 3>>> closing_;  // by position in order_
  long long nodes_ = 0;
};

// Top-simplex spines and orientations, read once.
class Action {
public:
  explicit Action(const DeltaComplex& X) : n_(X.dim()), eps_(X.orientation) {
    if (!X.oriented()) fail("the state sum needs orientation data");
    for (int t = 0; t < X.count(n_); ++t)
      for (int i = 0; i < n_; ++i) spine_.push_back(X.edge(n_, t, i, i + 1));
  }
  Int operator()(const GroupCocycle& w, const Field& f) const {
    if (w.args != n_) fail("cocycle with ", w.args, " arguments on a ", n_, "-complex");
    Int s = 0;
    size_t order = size_t(w.G.order());
    for (size_t t = 0; t < eps_.size(); ++t) {
      size_t idx = 0;
      for (int i = 0; i < n_; ++i) idx = idx * order + size_t(f[spine_[t * n_ + i]]);
      s += eps_[t] * w.values[idx];
    }
    return mod(s, w.modulus);
  }

private:
  int n_;
  std::vector<int> eps_, spine_;
};

inline Cyclo normalized(int M, const std::vector<long long>& counts, const Rational& norm) {
  std::vector<Rational> c;
  for (long long k : counts) c.push_back(Rational(long(k)) * norm);
  return Cyclo::from_counts(M, c);
}

// Z of a closed complex for several cocycles on the same group.
inline std::vector<Cyclo> partition_functions(const DeltaComplex& X, const std::vector<GroupCocycle>& ws,
                                              Budget budget = {}) {
  const auto& G = ws.at(0).G;
  std::vector<std::vector<long long>> counts;
  for (const auto& w : ws) counts.emplace_back(size_t(w.modulus), 0);
  Action act(X);
  Enumerator en(X, G);
  en.run(Field(X.count(1), -1), budget, [&](const Field& f) {
    for (size_t i = 0; i < ws.size(); ++i) ++counts[i][size_t(act(ws[i], f))];
  });
  std::vector<Cyclo> r;
  Rational norm = group_power(G.order(), -long(X.count(0)));
  for (size_t i = 0; i < ws.size(); ++i) r.push_back(normalized(int(ws[i].modulus), counts[i], norm));
  return r;
}

// Field-level kernels: for a fixed incoming field, the normalized sum of
// zeta^W over all extensions, grouped by the outgoing restriction, for
// several cocycles on the same group in one pass. Counts are kept raw and
// turned into cyclotomic numbers on lookup.
struct KernelTable {
  std::vector<int> moduli;
  Rational norm;
  std::map<Field, std::vector<std::vector<long long>>> counts;

  std::optional<Cyclo> at(size_t cocycle, const Field& out) const {
    auto it = counts.find(out);
    if (it == counts.end()) return std::nullopt;
    return normalized(moduli[cocycle], it->second[cocycle], norm);
  }
};

inline KernelTable kernels(const DeltaComplex& X, const std::vector<GroupCocycle>& ws, const Field& incoming,
                           Budget budget = {}) {
  const Boundary *bin = nullptr, *bout = nullptr;
  for (const auto& b : X.boundaries) (b.incoming ? bin : bout) = &b;
  Field fixed(X.count(1), -1);
  if (bin)
    for (size_t i = 0; i < incoming.size(); ++i) fixed[bin->embed[1][i]] = incoming[i];
  KernelTable T;
  for (const auto& w : ws) T.moduli.push_back(int(w.modulus));
  Action act(X);
  Enumerator en(X, ws.at(0).G);
  Field out(bout ? bout->embed[1].size() : 0);
  en.run(fixed, budget, [&](const Field& f) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = f[bout->embed[1][i]];
    auto it = T.counts.find(out);
    if (it == T.counts.end()) {
      it = T.counts.emplace(out, std::vector<std::vector<long long>>{}).first;
      for (const auto& w : ws) it->second.emplace_back(size_t(w.modulus), 0);
    }
    for (size_t i = 0; i < ws.size(); ++i) ++it->second[i][size_t(act(ws[i], f))];
  });
  long vout = bout ? long(bout->embed[0].size()) : 0;
  T.norm = group_power(ws[0].G.order(), -(long(X.count(0)) - vout));
  return T;
}

inline std::map<Field, Cyclo> kernel(const DeltaComplex& X, const GroupCocycle& w, const Field& incoming,
                                     Budget budget = {}) {
  auto T = kernels(X, {w}, incoming, budget);
  std::map<Field, Cyclo> r;
  for (const auto& [f, c] : T.counts) r.emplace(f, *T.at(0, f));
  return r;
}

// Stabilizer order of a field under all gauge transformations, by
// backtracking over vertex values.
inline Int stabilizer_order(const DeltaComplex& Y, const FiniteGroup& G, const Field& f) {
  int nv = Y.count(0);
  std::vector<int> h(nv, -1);
  Int count = 0;
  std::function<void(int)> go = [&](int v) {
    if (v == nv) {
      ++count;
      return;
    }
    for (int g = 0; g < G.order(); ++g) {
      h[v] = g;
      bool ok = true;
      for (int e = 0; e < Y.count(1) && ok; ++e) {
        int s = Y.faces[1][e][1], t = Y.faces[1][e][0];
        if (s > v || t > v) continue;
        ok = G.mul(G.inv(h[s]), G.mul(f[e], h[t])) == f[e];
      }
      if (ok) go(v + 1);
    }
    h[v] = -1;
  };
  go(0);
  return count;
}

// Number of homomorphisms Z^k -> G (commuting k-tuples).
inline Int commuting_tuples(const FiniteGroup& G, int k) {
  Int count = 0;
  for (const auto& t : all_tuples(G.order(), k)) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      for (int j = i + 1; j < k && ok; ++j) ok = G.mul(t[i], t[j]) == G.mul(t[j], t[i]);
    count += ok;
  }
  return count;
}

// Conjugation orbits of commuting k-tuples, counted directly.
inline Int commuting_tuple_orbits(const FiniteGroup& G, int k) {
  std::set<std::vector<int>> seen;
  Int orbits = 0;
  for (const auto& t : all_tuples(G.order(), k)) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      for (int j = i + 1; j < k && ok; ++j) ok = G.mul(t[i], t[j]) == G.mul(t[j], t[i]);
    if (!ok || seen.count(t)) continue;
    ++orbits;
    for (int h = 0; h < G.order(); ++h) {
      std::vector<int> c;
      for (int g : t) c.push_back(G.conj(h, g));
      seen.insert(c);
    }
  }
  return orbits;
}

}  // namespace oracle

}  // namespace dwcat
