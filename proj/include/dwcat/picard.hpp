#pragma once
// Two computable Picard groupoids: a discrete abelian group A[0], and
// framed hermitian lines whose isometries are m-th roots of unity.
#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "error.hpp"

namespace dwcat {

using Int = long long;

struct PhaseGroup {
  Int m = 1;
  PhaseGroup() = default;
  explicit PhaseGroup(Int modulus) : m(modulus) {
    if (m < 1)
      fail("phase group modulus must be positive, got ", m);
  }
  Int add(Int a, Int b) const { return mod(a + b, m); }
  Int neg(Int a) const { return mod(-a, m); }
  Int norm(Int a) const { return mod(a, m); }
  bool operator==(const PhaseGroup&) const = default;
};

// Z^rank ⊕ Z/torsion[0] ⊕ ... ; elements are vectors, free part first.
struct AbelianGroup {
  int rank = 0;
  std::vector<Int> torsion;

  int length() const { return rank + int(torsion.size()); }
  Int modulus_at(int i) const { return i < rank ? 0 : torsion[i - rank]; }
  std::vector<Int> normalize(std::vector<Int> x) const {
    if (int(x.size()) != length())
      fail("group element has ", x.size(), " components, expected ", length());
    for (int i = 0; i < length(); ++i)
      x[i] = mod(x[i], modulus_at(i));
    return x;
  }
  std::string str() const {
    std::string s;
    auto add = [&](const std::string& t) { s += (s.empty() ? "" : " + ") + t; };
    for (int i = 0; i < rank; ++i) add("Z");
    for (Int d : torsion) add("Z/" + std::to_string(d));
    return s.empty() ? "0" : s;
  }
  bool operator==(const AbelianGroup&) const = default;
};

using Object = std::vector<Int>;

struct Morphism {
  Object src, dst;
  Int phase = 0;
  bool operator==(const Morphism&) const = default;
};

class CoeffGroupoid {
public:
  enum class Kind { Discrete, FramedLines };

  static CoeffGroupoid discrete(AbelianGroup a) {
    for (Int d : a.torsion)
      if (d < 2) fail("invariant factors must be at least 2, got ", d);
    CoeffGroupoid g;
    g.kind_ = Kind::Discrete;
    g.group_ = std::move(a);
    return g;
  }
  static CoeffGroupoid integers() { return discrete(AbelianGroup{1, {}}); }
  static CoeffGroupoid cyclic(Int d) { return discrete(AbelianGroup{0, {d}}); }
  static CoeffGroupoid lines(Int m) {
    CoeffGroupoid g;
    g.kind_ = Kind::FramedLines;
    g.phases_ = PhaseGroup(m);
    return g;
  }

  Kind kind() const { return kind_; }
  bool is_lines() const { return kind_ == Kind::FramedLines; }
  const AbelianGroup& group() const { return group_; }
  const PhaseGroup& phases() const { return phases_; }
  Int modulus() const { return is_lines() ? phases_.m : 1; }

  // Homotopy groups: pi0 is the group of iso classes, pi1 the automorphisms of 0.
  AbelianGroup pi0() const { return is_lines() ? AbelianGroup{} : group_; }
  AbelianGroup pi1() const {
    if (!is_lines() || phases_.m == 1) return AbelianGroup{};
    return AbelianGroup{0, {phases_.m}};
  }

  int object_length() const { return is_lines() ? 1 : group_.length(); }
  Object zero() const { return Object(object_length(), 0); }
  Object normalize(Object x) const {
    if (is_lines()) {
      if (x.size() != 1) fail("framed line label must be a single integer");
      return x;
    }
    return group_.normalize(std::move(x));
  }
  Object label(Int j) const {
    if (!is_lines() && object_length() != 1)
      fail("scalar label given for a group with ", object_length(), " components");
    return normalize(Object{j});
  }

  Object tensor(const Object& x, const Object& y) const {
    check_object(x);
    check_object(y);
    Object r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return normalize(r);
  }
  Object negate(const Object& x) const {
    check_object(x);
    Object r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
    return normalize(r);
  }
  Object scale(const Object& x, Int k) const {
    Object r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] * k;
    return normalize(r);
  }

  Morphism morphism(const Object& src, const Object& dst, Int phase) const {
    check_object(src);
    check_object(dst);
    Object s = normalize(src), d = normalize(dst);
    if (!is_lines()) {
      if (s != d) fail("discrete groupoid has no morphism between distinct objects");
      if (phase != 0) fail("discrete groupoid morphisms carry no phase");
      return {s, d, 0};
    }
    return {s, d, phases_.norm(phase)};
  }
  Morphism identity(const Object& x) const { return morphism(x, x, 0); }
  bool hom_nonempty(const Object& x, const Object& y) const {
    return is_lines() || normalize(x) == normalize(y);
  }

  Morphism tensor_mor(const Morphism& f, const Morphism& g) const {
    return morphism(tensor(f.src, g.src), tensor(f.dst, g.dst), f.phase + g.phase);
  }
  // f: x -> y followed by g: y -> z.
  Morphism compose(const Morphism& f, const Morphism& g) const {
    if (normalize(f.dst) != normalize(g.src))
      fail("non-composable morphisms: target ", str(f.dst), " vs source ", str(g.src));
    return morphism(f.src, g.dst, f.phase + g.phase);
  }
  Morphism invert(const Morphism& f) const { return morphism(f.dst, f.src, -f.phase); }

  // Structure isomorphisms; stored explicitly, all with identity phase.
  Morphism alpha(const Object& s, const Object& t, const Object& u) const {
    return identity(tensor(tensor(s, t), u));
  }
  Morphism left_unit(const Object& s) const { return morphism(tensor(zero(), s), s, 0); }
  Morphism right_unit(const Object& s) const { return morphism(tensor(s, zero()), s, 0); }
  Morphism braiding(const Object& s, const Object& t) const {
    return morphism(tensor(s, t), tensor(t, s), 0);
  }
  Morphism m_iso(const Object& s) const { return morphism(zero(), tensor(s, negate(s)), 0); }
  Morphism n_iso(const Object& s) const { return morphism(tensor(negate(s), s), zero(), 0); }

  std::string str(const Object& x) const {
    std::string s = "(";
    for (size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
    return s + ")";
  }
  std::string name() const {
    return is_lines() ? "lines(Z/" + std::to_string(phases_.m) + ")" : group_.str();
  }
  bool operator==(const CoeffGroupoid&) const = default;

private:
  void check_object(const Object& x) const {
    if (int(x.size()) != object_length())
      fail("object ", str(x), " does not belong to ", name());
  }
  Kind kind_ = Kind::Discrete;
  AbelianGroup group_;
  PhaseGroup phases_;
};

// A symmetric monoidal functor F with coherence isomorphisms
// phi_{s,t}: F(s) + F(t) -> F(s + t), given by their phases.
struct Homomorphism {
  CoeffGroupoid src, dst;
  std::function<Object(const Object&)> on_objects;
  std::function<Int(Int)> on_phases;
  std::function<Int(const Object&, const Object&)> coherence;

  Morphism apply(const Morphism& f) const {
    return dst.morphism(on_objects(f.src), on_objects(f.dst), on_phases(f.phase));
  }
  Morphism phi(const Object& s, const Object& t) const {
    return dst.morphism(dst.tensor(on_objects(s), on_objects(t)), on_objects(src.tensor(s, t)),
                        coherence(s, t));
  }
};

// Objects of the form sum k_i e_i with |k_i| <= radius.
inline std::vector<Object> object_window(const CoeffGroupoid& g, Int radius) {
  std::vector<Object> out{Object{}};
  for (int i = 0; i < g.object_length(); ++i) {
    bool free = g.is_lines() || g.group().modulus_at(i) == 0;
    Int lo = free ? -radius : 0;
    Int hi = free ? radius : std::min<Int>(radius, g.group().modulus_at(i) - 1);
    std::vector<Object> next;
    for (const auto& o : out)
      for (Int k = lo; k <= hi; ++k) {
        Object x = o;
        x.push_back(k);
        next.push_back(x);
      }
    out = std::move(next);
  }
  for (auto& o : out) o = g.normalize(o);
  return out;
}

// Validates functoriality on phases and the coherence equations on pairs and
// triples of window objects.
inline Homomorphism hom_of_groupoids(Homomorphism F, Int radius = 3) {
  const auto& A = F.src;
  const auto& B = F.dst;
  auto window = object_window(A, radius);
  if (A.is_lines()) {
    Int m = A.modulus();
    for (Int p = 0; p < m; ++p)
      for (Int q = 0; q < m; ++q)
        if (B.phases().norm(F.on_phases(mod(p + q, m))) !=
            B.phases().add(F.on_phases(p), F.on_phases(q)))
          fail("phase map is not a homomorphism at (", p, ",", q, ")");
  } else if (F.on_phases(0) != 0 && B.is_lines() && B.phases().norm(F.on_phases(0)) != 0) {
    fail("identity phase must map to the identity phase");
  }
  for (const auto& s : window)
    for (const auto& t : window) {
      Object lhs = B.tensor(F.on_objects(s), F.on_objects(t));
      Object rhs = F.on_objects(A.tensor(s, t));
      if (!B.hom_nonempty(lhs, rhs))
        fail("no coherence isomorphism F(s)+F(t) -> F(s+t) for pair s=", A.str(s), " t=", A.str(t));
      // F(beta) o phi_{s,t} = phi_{t,s} o beta; the braidings carry identity phases.
      Int left = B.phases().add(F.on_phases(A.braiding(s, t).phase), F.coherence(s, t));
      Int right = B.phases().add(F.coherence(t, s), B.braiding(F.on_objects(s), F.on_objects(t)).phase);
      if (B.phases().norm(left) != B.phases().norm(right))
        fail("symmetry coherence fails for pair s=", A.str(s), " t=", A.str(t));
    }
  // Naturality of phi along pairs of morphisms s -> s2, t -> t2.
  std::vector<std::pair<Object, Object>> arrows;
  for (const auto& s : window)
    for (const auto& s2 : window)
      if (A.hom_nonempty(s, s2)) arrows.push_back({s, s2});
  for (const auto& [s, s2] : arrows)
    for (const auto& [t, t2] : arrows)
      if (B.phases().norm(F.coherence(s, t) - F.coherence(s2, t2)) != 0)
        fail("coherence is not natural from pair s=", A.str(s), " t=", A.str(t), " to s=", A.str(s2),
             " t=", A.str(t2));
  for (const auto& s : window)
    for (const auto& t : window)
      for (const auto& u : window) {
        Int left = F.coherence(s, t) + F.coherence(A.tensor(s, t), u) +
                   F.on_phases(A.alpha(s, t, u).phase);
        Int right = B.alpha(F.on_objects(s), F.on_objects(t), F.on_objects(u)).phase +
                    F.coherence(t, u) + F.coherence(s, A.tensor(t, u));
        if (B.phases().norm(left) != B.phases().norm(right))
          fail("associativity coherence fails for triple s=", A.str(s), " t=", A.str(t),
               " u=", A.str(u));
      }
  return F;
}

inline Homomorphism identity_hom(const CoeffGroupoid& A) {
  return Homomorphism{A, A, [](const Object& x) { return x; }, [](Int p) { return p; },
                      [](const Object&, const Object&) { return Int(0); }};
}

// G after F. The composite coherence is G(phi^F_{s,t}) o phi^G_{Fs,Ft}.
inline Homomorphism compose(const Homomorphism& F, const Homomorphism& G) {
  if (!(F.dst == G.src))
    fail("cannot compose homomorphisms: ", F.dst.name(), " vs ", G.src.name());
  return Homomorphism{
      F.src, G.dst, [F, G](const Object& x) { return G.on_objects(F.on_objects(x)); },
      [F, G](Int p) { return G.on_phases(F.on_phases(p)); },
      [F, G](const Object& s, const Object& t) {
        return G.dst.phases().add(G.coherence(F.on_objects(s), F.on_objects(t)),
                                  G.on_phases(F.coherence(s, t)));
      }};
}

// Monoidal natural transformation eta: F => G with components eta_s: F(s) -> G(s).
struct NatTrans {
  Homomorphism from, to;
  std::function<Int(const Object&)> component;

  Morphism at(const Object& s) const {
    return to.dst.morphism(from.on_objects(s), to.on_objects(s), component(s));
  }
};

inline NatTrans validate(NatTrans eta, Int radius = 3) {
  const auto& A = eta.from.src;
  const auto& B = eta.from.dst;
  auto window = object_window(A, radius);
  Int m = A.is_lines() ? A.modulus() : 1;
  for (const auto& s : window) {
    if (!B.hom_nonempty(eta.from.on_objects(s), eta.to.on_objects(s)))
      fail("no component available at ", A.str(s));
    for (const auto& t : window) {
      if (!A.hom_nonempty(s, t)) continue;
      for (Int p = 0; p < m; ++p) {
        Int left = eta.to.on_phases(p) + eta.component(s);
        Int right = eta.component(t) + eta.from.on_phases(p);
        if (B.phases().norm(left) != B.phases().norm(right))
          fail("naturality fails on morphism ", A.str(s), " -> ", A.str(t), " phase ", p);
      }
      Int left = eta.component(A.tensor(s, t)) + eta.from.coherence(s, t);
      Int right = eta.to.coherence(s, t) + eta.component(s) + eta.component(t);
      if (B.phases().norm(left) != B.phases().norm(right))
        fail("monoidality fails for pair s=", A.str(s), " t=", A.str(t));
    }
  }
  return eta;
}

inline NatTrans identity_nat(const Homomorphism& F) {
  return NatTrans{F, F, [](const Object&) { return Int(0); }};
}

// theta after eta (vertical).
inline NatTrans vertical(const NatTrans& eta, const NatTrans& theta) {
  return NatTrans{eta.from, theta.to, [eta, theta](const Object& s) {
                    return eta.from.dst.phases().add(eta.component(s), theta.component(s));
                  }};
}

// eta: F => G on A -> B, theta: H => K on B -> C; result H∘F => K∘G with
// component K(eta_s) o theta_{F s}.
inline NatTrans horizontal(const NatTrans& eta, const NatTrans& theta) {
  return NatTrans{compose(eta.from, theta.from), compose(eta.to, theta.to),
                  [eta, theta](const Object& s) {
                    return theta.to.dst.phases().add(theta.component(eta.from.on_objects(s)),
                                                     theta.to.on_phases(eta.component(s)));
                  }};
}

inline bool equal_on_window(const Homomorphism& F, const Homomorphism& G, Int radius = 3) {
  if (!(F.src == G.src) || !(F.dst == G.dst)) return false;
  auto window = object_window(F.src, radius);
  const auto& P = F.dst.phases();
  for (Int p = 0; p < F.src.modulus(); ++p)
    if (P.norm(F.on_phases(p)) != P.norm(G.on_phases(p))) return false;
  for (const auto& s : window) {
    if (F.on_objects(s) != G.on_objects(s)) return false;
    for (const auto& t : window)
      if (P.norm(F.coherence(s, t)) != P.norm(G.coherence(s, t))) return false;
  }
  return true;
}

inline bool equal_on_window(const NatTrans& a, const NatTrans& b, Int radius = 3) {
  if (!equal_on_window(a.from, b.from, radius) || !equal_on_window(a.to, b.to, radius))
    return false;
  const auto& P = a.from.dst.phases();
  for (const auto& s : object_window(a.from.src, radius))
    if (P.norm(a.component(s)) != P.norm(b.component(s))) return false;
  return true;
}

}  // namespace dwcat
