#pragma once
// Integer matrices, Smith normal form with transforms, and the lattice
// computations built on it (integer solving, kernels, subquotients).
#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <vector>

#include "error.hpp"

namespace dwcat {

using Int = long long;

namespace impl {
inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    fail("integer overflow in matrix arithmetic");
  return r;
}
inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    fail("integer overflow in matrix arithmetic");
  return r;
}
inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}
}  // namespace impl

struct Matrix {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c, 0) {}
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }
  Int& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
  Int operator()(int i, int j) const { return a[size_t(i) * cols + j]; }

  std::vector<Int> column(int j) const {
    std::vector<Int> v(rows);
    for (int i = 0; i < rows; ++i)
      v[i] = (*this)(i, j);
    return v;
  }
  void add_row(int dst, int src, Int k) {
    if (k == 0) return;
    for (int j = 0; j < cols; ++j)
      (*this)(dst, j) = impl::checked_add((*this)(dst, j), impl::checked_mul(k, (*this)(src, j)));
  }
  void add_col(int dst, int src, Int k) {
    if (k == 0) return;
    for (int i = 0; i < rows; ++i)
      (*this)(i, dst) = impl::checked_add((*this)(i, dst), impl::checked_mul(k, (*this)(i, src)));
  }
  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols; ++c)
      std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows; ++r)
      std::swap((*this)(r, i), (*this)(r, j));
  }
  void negate_row(int i) {
    for (int c = 0; c < cols; ++c)
      (*this)(i, c) = -(*this)(i, c);
  }
  void negate_col(int j) {
    for (int r = 0; r < rows; ++r)
      (*this)(r, j) = -(*this)(r, j);
  }
  bool operator==(const Matrix&) const = default;
};

inline Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows)
    fail("matrix shape mismatch ", x.rows, "x", x.cols, " * ", y.rows, "x", y.cols);
  Matrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      Int v = x(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        r(i, j) = impl::checked_add(r(i, j), impl::checked_mul(v, y(k, j)));
    }
  return r;
}

inline Matrix operator+(const Matrix& x, const Matrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) fail("matrix shape mismatch in sum");
  Matrix r = x;
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r(i, j) = impl::checked_add(x(i, j), y(i, j));
  return r;
}

inline Matrix operator*(const Matrix& x, Int k) {
  Matrix r = x;
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r(i, j) = impl::checked_mul(x(i, j), k);
  return r;
}

inline std::vector<Int> operator*(const Matrix& x, const std::vector<Int>& v) {
  if (x.cols != int(v.size()))
    fail("matrix-vector shape mismatch");
  std::vector<Int> r(x.rows, 0);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k)
      if (x(i, k) != 0 && v[k] != 0)
        r[i] = impl::checked_add(r[i], impl::checked_mul(x(i, k), v[k]));
  return r;
}

// L * A * R = D with D diagonal, d_0 | d_1 | ... and all d_i >= 0.
// Linv = L^{-1} and Rinv = R^{-1} are maintained alongside.
struct Smith {
  Matrix D, L, Linv, R, Rinv;
  int rank = 0;
  std::vector<Int> diag() const {
    std::vector<Int> d;
    for (int i = 0; i < std::min(D.rows, D.cols); ++i)
      d.push_back(D(i, i));
    return d;
  }
};

inline Smith smith(const Matrix& A) {
  Smith s;
  s.D = A;
  s.L = Matrix::identity(A.rows);
  s.Linv = Matrix::identity(A.rows);
  s.R = Matrix::identity(A.cols);
  s.Rinv = Matrix::identity(A.cols);
  Matrix& D = s.D;
  // Row op r_i += k r_j on D is left multiplication by E; L <- E L and
  // Linv <- Linv E^{-1}, i.e. column op c_j -= k c_i on Linv.
  auto row_add = [&](int i, int j, Int k) {
    D.add_row(i, j, k);
    s.L.add_row(i, j, k);
    s.Linv.add_col(j, i, -k);
  };
  auto row_swap = [&](int i, int j) {
    D.swap_rows(i, j);
    s.L.swap_rows(i, j);
    s.Linv.swap_cols(i, j);
  };
  auto row_neg = [&](int i) {
    D.negate_row(i);
    s.L.negate_row(i);
    s.Linv.negate_col(i);
  };
  auto col_add = [&](int i, int j, Int k) {
    D.add_col(i, j, k);
    s.R.add_col(i, j, k);
    s.Rinv.add_row(j, i, -k);
  };
  auto col_swap = [&](int i, int j) {
    D.swap_cols(i, j);
    s.R.swap_cols(i, j);
    s.Rinv.swap_rows(i, j);
  };

  int n = std::min(D.rows, D.cols);
  for (int t = 0; t < n; ++t) {
    for (;;) {
      int pi = -1, pj = -1;
      Int best = 0;
      for (int i = t; i < D.rows; ++i)
        for (int j = t; j < D.cols; ++j) {
          Int v = std::llabs(D(i, j));
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        s.rank = t;
        return s;
      }
      row_swap(t, pi);
      col_swap(t, pj);
      if (D(t, t) < 0)
        row_neg(t);
      Int p = D(t, t);
      bool clean = true;
      for (int i = t + 1; i < D.rows; ++i)
        if (D(i, t) != 0) {
          row_add(i, t, -impl::floor_div(D(i, t), p));
          if (D(i, t) != 0) clean = false;
        }
      for (int j = t + 1; j < D.cols; ++j)
        if (D(t, j) != 0) {
          col_add(j, t, -impl::floor_div(D(t, j), p));
          if (D(t, j) != 0) clean = false;
        }
      if (!clean)
        continue;
      int bad = -1;
      for (int i = t + 1; i < D.rows && bad < 0; ++i)
        for (int j = t + 1; j < D.cols; ++j)
          if (D(i, j) % p != 0) {
            bad = i;
            break;
          }
      if (bad < 0)
        break;
      row_add(t, bad, 1);
    }
  }
  s.rank = n;
  for (int t = 0; t < n; ++t)
    if (D(t, t) == 0) {
      s.rank = t;
      break;
    }
  return s;
}

// Integer solution x of A x = b, or nullopt.
inline std::optional<std::vector<Int>> solve_integer(const Matrix& A, const std::vector<Int>& b) {
  if (int(b.size()) != A.rows)
    fail("solve_integer: rhs length ", b.size(), " != ", A.rows);
  Smith s = smith(A);
  std::vector<Int> c = s.L * b;
  std::vector<Int> y(A.cols, 0);
  for (int i = 0; i < A.rows; ++i) {
    if (i < s.rank) {
      Int d = s.D(i, i);
      if (c[i] % d != 0)
        return std::nullopt;
      y[i] = c[i] / d;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.R * y;
}

// Solution of A x = b (mod m) with 0 <= x_i < m, or nullopt. m = 0 means over Z.
inline std::optional<std::vector<Int>> solve_mod(const Matrix& A, const std::vector<Int>& b, Int m) {
  if (m == 0)
    return solve_integer(A, b);
  Matrix B(A.rows, A.cols + A.rows);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j)
      B(i, j) = mod(A(i, j), m);
    B(i, A.cols + i) = m;
  }
  std::vector<Int> rhs(b.size());
  for (size_t i = 0; i < b.size(); ++i)
    rhs[i] = mod(b[i], m);
  auto x = solve_integer(B, rhs);
  if (!x)
    return std::nullopt;
  std::vector<Int> r(x->begin(), x->begin() + A.cols);
  for (auto& v : r)
    v = mod(v, m);
  return r;
}

// Columns form a Z-basis of the lattice spanned by the columns of G.
inline Matrix lattice_basis(const Matrix& G) {
  Smith s = smith(G);
  Matrix B(G.rows, s.rank);
  for (int j = 0; j < s.rank; ++j)
    for (int i = 0; i < G.rows; ++i)
      B(i, j) = impl::checked_mul(s.Linv(i, j), s.D(j, j));
  return B;
}

// Basis of {x : A x = 0} as columns.
inline Matrix kernel_basis(const Matrix& A) {
  Smith s = smith(A);
  Matrix K(A.cols, A.cols - s.rank);
  for (int j = s.rank; j < A.cols; ++j)
    for (int i = 0; i < A.cols; ++i)
      K(i, j - s.rank) = s.R(i, j);
  return K;
}

inline Matrix hconcat(const Matrix& x, const Matrix& y) {
  if (x.rows != y.rows)
    fail("hconcat: row mismatch");
  Matrix r(x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) r(i, j) = x(i, j);
    for (int j = 0; j < y.cols; ++j) r(i, x.cols + j) = y(i, j);
  }
  return r;
}

inline Matrix scalar_identity(int n, Int k) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = k;
  return m;
}

// A finitely generated abelian group ⊕ Z/orders[i] (order 0 means Z),
// presented as a subquotient Z/B of lattices in Z^ambient with explicit
// generators. Orders equal to 1 are dropped.
struct Subquotient {
  std::vector<Int> orders;
  std::vector<std::vector<Int>> generators;
  Matrix zbasis;            // basis of the numerator lattice Z
  Matrix coord;             // rows of L restricted to kept generators
  std::vector<int> kept;    // index into SNF diagonal per kept generator

  // Coordinates of an element of Z with respect to the generators,
  // reduced modulo each order.
  std::vector<Int> coordinates(const std::vector<Int>& x) const {
    auto c = solve_integer(zbasis, x);
    if (!c)
      fail("element is not in the numerator lattice");
    std::vector<Int> r;
    for (size_t g = 0; g < kept.size(); ++g) {
      Int v = 0;
      for (int k = 0; k < coord.cols; ++k)
        v = impl::checked_add(v, impl::checked_mul(coord(kept[g], k), (*c)[k]));
      r.push_back(mod(v, orders[g]));
    }
    return r;
  }
  bool is_zero(const std::vector<Int>& x) const {
    for (Int v : coordinates(x))
      if (v != 0) return false;
    return true;
  }
};

// Z = span(zgen), B = span(bgen) with B ⊆ Z.
inline Subquotient subquotient(const Matrix& zgen, const Matrix& bgen) {
  Subquotient q;
  q.zbasis = lattice_basis(zgen);
  int z = q.zbasis.cols;
  Matrix C(z, bgen.cols);
  for (int j = 0; j < bgen.cols; ++j) {
    auto c = solve_integer(q.zbasis, bgen.column(j));
    if (!c)
      fail("subquotient: relation lattice not contained in numerator");
    for (int i = 0; i < z; ++i) C(i, j) = (*c)[i];
  }
  Smith s = smith(C);
  q.coord = s.L;
  Matrix gens = q.zbasis * s.Linv;
  for (int i = 0; i < z; ++i) {
    Int d = i < s.rank ? s.D(i, i) : 0;
    if (d == 1) continue;
    q.orders.push_back(d);
    q.generators.push_back(gens.column(i));
    q.kept.push_back(i);
  }
  return q;
}

inline std::vector<Int> nontrivial_invariants(std::vector<Int> orders) {
  // Free part (0) sorts last, torsion ascending.
  std::vector<Int> t, f;
  for (Int o : orders) {
    if (o == 1) continue;
    (o == 0 ? f : t).push_back(o);
  }
  std::sort(t.begin(), t.end());
  t.insert(t.end(), f.begin(), f.end());
  return t;
}

}  // namespace dwcat
