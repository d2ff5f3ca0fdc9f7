#pragma once
// Finite groups given by multiplication tables.
#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"

namespace dwcat {

class FiniteGroup {
public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<int>>{{0}}) {}

  // Validates closure, associativity, identity and inverses.
  explicit FiniteGroup(std::vector<std::vector<int>> table, std::string name = "")
      : table_(std::move(table)), name_(std::move(name)) {
    int n = int(table_.size());
    if (n == 0)
      fail("group table is empty");
    for (const auto& row : table_) {
      if (int(row.size()) != n)
        fail("group table is not square");
      for (int x : row)
        if (x < 0 || x >= n) fail("group table entry ", x, " out of range");
    }
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e) {
      bool ok = true;
      for (int a = 0; a < n && ok; ++a)
        ok = table_[e][a] == a && table_[a][e] == a;
      if (ok) identity_ = e;
    }
    if (identity_ < 0)
      fail("group table has no identity element");
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (table_[a][b] == identity_) inverse_[a] = b;
    for (int a = 0; a < n; ++a)
      if (inverse_[a] < 0 || table_[inverse_[a]][a] != identity_)
        fail("element ", a, " has no inverse");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            fail("group table is not associative at (", a, ",", b, ",", c, ")");
  }

  int order() const { return int(table_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  int conj(int h, int g) const { return mul(inv(h), mul(g, h)); }  // h^-1 g h
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::string& name() const { return name_; }
  bool abelian() const {
    for (int a = 0; a < order(); ++a)
      for (int b = 0; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  static FiniteGroup cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup(t, "z" + std::to_string(n));
  }
  static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h) {
    int n = g.order(), m = h.order();
    std::vector<std::vector<int>> t(n * m, std::vector<int>(n * m));
    for (int a = 0; a < n * m; ++a)
      for (int b = 0; b < n * m; ++b)
        t[a][b] = g.mul(a / m, b / m) * m + h.mul(a % m, b % m);
    return FiniteGroup(t, g.name() + "x" + h.name());
  }
  // Group of permutations generated by the given ones, elements sorted
  // lexicographically so the identity comes first.
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens, std::string name) {
    int deg = int(gens.at(0).size());
    std::vector<int> id(deg);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> elems{id};
    for (size_t i = 0; i < elems.size(); ++i)
      for (const auto& g : gens) {
        std::vector<int> p(deg);
        for (int k = 0; k < deg; ++k) p[k] = g[elems[i][k]];
        if (std::find(elems.begin(), elems.end(), p) == elems.end()) elems.push_back(p);
      }
    std::sort(elems.begin(), elems.end());
    int n = int(elems.size());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        // (a*b)(k) = a(b(k))
        std::vector<int> p(deg);
        for (int k = 0; k < deg; ++k) p[k] = elems[a][elems[b][k]];
        t[a][b] = int(std::find(elems.begin(), elems.end(), p) - elems.begin());
      }
    return FiniteGroup(t, std::move(name));
  }
  static FiniteGroup symmetric3() { return from_permutations({{1, 0, 2}, {1, 2, 0}}, "s3"); }
  static FiniteGroup dihedral4() { return from_permutations({{1, 2, 3, 0}, {3, 2, 1, 0}}, "d4"); }
  static FiniteGroup quaternion() {
    // Left regular action of Q8 on {±1, ±i, ±j, ±k} encoded as 0..7:
    // 0=1 1=-1 2=i 3=-i 4=j 5=-j 6=k 7=-k.
    auto q = [](int x, int y) {
      static const int base[4][4] = {{0, 2, 4, 6}, {2, 1, 6, 5}, {4, 7, 1, 2}, {6, 4, 3, 1}};
      int r = base[x / 2][y / 2];
      bool neg = ((x % 2) ^ (y % 2)) != 0;
      return neg ? (r ^ 1) : r;
    };
    std::vector<int> li(8), lj(8);
    for (int k = 0; k < 8; ++k) {
      li[k] = q(2, k);
      lj[k] = q(4, k);
    }
    return from_permutations({li, lj}, "q8");
  }

private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::string name_;
};

}  // namespace dwcat
