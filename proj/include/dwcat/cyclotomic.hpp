#pragma once
// Exact elements of Q(zeta_M), stored in the power basis 1, zeta, ...,
// zeta^(phi(M)-1) after reduction by the M-th cyclotomic polynomial.
#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "error.hpp"

namespace dwcat {

using Rational = mpq_class;

inline std::string to_string(const Rational& q) {
  Rational r = q;
  r.canonicalize();
  return r.get_str();
}

namespace impl {

using IntPoly = std::vector<long long>;  // coefficients, lowest degree first

inline IntPoly poly_div_exact(IntPoly num, const IntPoly& den) {
  int dn = int(den.size()) - 1;
  if (int(num.size()) - 1 < dn) return {0};
  IntPoly q(num.size() - dn, 0);
  for (int i = int(num.size()) - 1; i >= dn; --i) {
    long long c = num[i] / den[dn];
    q[i - dn] = c;
    for (int j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (long long r : num)
    if (r != 0) fail("cyclotomic polynomial division left a remainder");
  return q;
}

inline IntPoly cyclotomic_poly(int m) {
  IntPoly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = poly_div_exact(p, cyclotomic_poly(d));
  return p;
}

// reduction[k] = coefficients of zeta^k in the power basis, k < M.
struct CyclotomicField {
  int M = 1, degree = 1;
  std::vector<IntPoly> reduction;

  explicit CyclotomicField(int m) : M(m) {
    IntPoly phi = cyclotomic_poly(m);
    degree = int(phi.size()) - 1;
    reduction.assign(m, IntPoly(degree, 0));
    IntPoly cur(degree, 0);
    cur[0] = 1;
    for (int k = 0; k < m; ++k) {
      reduction[k] = cur;
      // multiply by zeta and rewrite zeta^degree with the monic phi.
      IntPoly next(degree, 0);
      long long top = cur[degree - 1];
      for (int i = degree - 1; i >= 1; --i) next[i] = cur[i - 1];
      for (int i = 0; i < degree; ++i) next[i] -= top * phi[i];
      cur = next;
    }
  }
};

inline const CyclotomicField& field(int m) {
  static std::map<int, std::unique_ptr<CyclotomicField>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<CyclotomicField>(m);
  return *slot;
}

}  // namespace impl

class Cyclo {
public:
  explicit Cyclo(int M = 1) : M_(M), c_(impl::field(M).degree, Rational(0)) {
    if (M < 1) fail("cyclotomic order must be positive");
  }
  static Cyclo rational(int M, const Rational& q) {
    Cyclo z(M);
    z.c_[0] = q;
    z.c_[0].canonicalize();
    return z;
  }
  static Cyclo root(int M, long long k, const Rational& coeff = 1) {
    Cyclo z(M);
    z.add_root(k, coeff);
    return z;
  }
  // From an unreduced expansion sum_k counts[k] zeta^k, scaled.
  static Cyclo from_counts(int M, const std::vector<Rational>& counts) {
    Cyclo z(M);
    for (int k = 0; k < int(counts.size()); ++k)
      if (counts[k] != 0) z.add_root(k, counts[k]);
    return z;
  }

  int order() const { return M_; }
  void add_root(long long k, const Rational& coeff) {
    const auto& red = impl::field(M_).reduction[size_t(mod(k, M_))];
    for (size_t i = 0; i < c_.size(); ++i)
      if (red[i] != 0) c_[i] += coeff * Rational(long(red[i]));
  }
  Cyclo operator+(const Cyclo& o) const {
    check(o);
    Cyclo r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  Cyclo operator-(const Cyclo& o) const {
    check(o);
    Cyclo r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  Cyclo operator*(const Cyclo& o) const {
    check(o);
    std::vector<Rational> full(M_, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (size_t j = 0; j < o.c_.size(); ++j)
        if (o.c_[j] != 0) full[(i + j) % M_] += c_[i] * o.c_[j];
    }
    return from_counts(M_, full);
  }
  Cyclo operator*(const Rational& q) const {
    Cyclo r = *this;
    for (auto& x : r.c_) x *= q;
    return r;
  }
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  bool operator==(const Cyclo& o) const { return M_ == o.M_ && c_ == o.c_; }
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  Rational rational_part() const { return c_[0]; }
  const std::vector<Rational>& coefficients() const { return c_; }

  // "p/q" for rationals, otherwise a sum of "c*zeta_M^k" terms.
  std::string str() const {
    if (is_rational()) return to_string(c_[0]);
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      if (i == 0)
        s += to_string(c_[i]);
      else
        s += to_string(c_[i]) + "*zeta_" + std::to_string(M_) + "^" + std::to_string(i);
    }
    return s;
  }

private:
  void check(const Cyclo& o) const {
    if (o.M_ != M_) fail("mixing cyclotomic orders ", M_, " and ", o.M_);
  }
  int M_;
  std::vector<Rational> c_;
};

inline std::string phase_string(long long k, long long m) {
  return "zeta_" + std::to_string(m) + "^" + std::to_string(mod(k, m));
}

}  // namespace dwcat
