#pragma once

// Brute-force reference implementations used as test oracles. None of them
// calls the library's algorithms; they only read matrix entries.

#include <cstddef>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mmt/matrix.hpp"
#include "mmt/tensor.hpp"

namespace oracle {

using mmt::Matrix;
using mmt::Scalar;

inline Matrix random_rational(std::size_t rows, std::size_t cols, std::mt19937_64& rng, int bound = 7) {
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, bound);
  Matrix m(rows, cols);
  for (std::size_t i = 1; i <= rows; ++i)
    for (std::size_t j = 1; j <= cols; ++j) {
      Scalar s(num(rng), den(rng));
      s.canonicalize();
      m(i, j) = s;
    }
  return m;
}

inline Matrix random_rational(std::size_t n, std::mt19937_64& rng) { return random_rational(n, n, rng); }

// Laplace expansion along the first row.
inline Scalar laplace_det(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(1, 1);
  Scalar total = 0;
  for (std::size_t col = 1; col <= n; ++col) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t i = 2; i <= n; ++i)
      for (std::size_t j = 1, jj = 1; j <= n; ++j) {
        if (j == col) continue;
        minor(i - 1, jj++) = m(i, j);
      }
    const Scalar term = m(1, col) * laplace_det(minor);
    total += (col % 2 == 1) ? term : Scalar(-term);
  }
  return total;
}

// Largest k with a nonzero k x k minor.
inline std::size_t minor_rank(const Matrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  std::size_t best = 0;
  std::function<void(std::vector<std::size_t>&, std::size_t, std::size_t, std::vector<std::vector<std::size_t>>&)> subsets =
      [&](std::vector<std::size_t>& cur, std::size_t start, std::size_t limit, std::vector<std::vector<std::size_t>>& out) {
        out.push_back(cur);
        for (std::size_t x = start; x <= limit; ++x) {
          cur.push_back(x);
          subsets(cur, x + 1, limit, out);
          cur.pop_back();
        }
      };
  std::vector<std::vector<std::size_t>> rows_sets, col_sets;
  std::vector<std::size_t> tmp;
  subsets(tmp, 1, r, rows_sets);
  subsets(tmp, 1, c, col_sets);
  for (const auto& rs : rows_sets)
    for (const auto& cs : col_sets) {
      if (rs.empty() || rs.size() != cs.size() || rs.size() <= best) continue;
      Matrix sub(rs.size(), cs.size());
      for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) sub(i + 1, j + 1) = m(rs[i], cs[j]);
      if (laplace_det(sub) != 0) best = rs.size();
    }
  return best;
}

inline Matrix schoolbook(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 1; i <= a.rows(); ++i)
    for (std::size_t j = 1; j <= b.cols(); ++j) {
      Scalar s = 0;
      for (std::size_t k = 1; k <= a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 1; i <= m.rows(); ++i)
    for (std::size_t j = 1; j <= m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

// sum over all entries of t of T1[i][j] T2[k][l] T3[m][n] a[i][j] b[k][l] c[m][n]
inline Scalar full_contraction(const mmt::Tensor& t, const Matrix& a, const Matrix& b, const Matrix& c) {
  const std::size_t n = t.dim();
  Scalar total = 0;
  for (const auto& term : t.terms()) {
    Scalar sa = 0, sb = 0, sc = 0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) {
        sa += term.a(i, j) * a(i, j);
        sb += term.b(i, j) * b(i, j);
        sc += term.c(i, j) * c(i, j);
      }
    total += sa * sb * sc;
  }
  return total;
}

// Brent equations: sum_r A_r[i][j] B_r[k][l] C_r[m][p] = [j==k][l==m][p==i].
inline bool brent(const mmt::Tensor& t) {
  const std::size_t n = t.dim();
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t l = 1; l <= n; ++l)
          for (std::size_t m = 1; m <= n; ++m)
            for (std::size_t p = 1; p <= n; ++p) {
              Scalar s = 0;
              for (const auto& term : t.terms()) s += term.a(i, j) * term.b(k, l) * term.c(m, p);
              const Scalar expect = (j == k && l == m && p == i) ? 1 : 0;
              if (s != expect) return false;
            }
  return true;
}

// Trilinear forms agree iff their contractions agree on every unit triple.
inline bool same_form(const mmt::Tensor& x, const mmt::Tensor& y) {
  const std::size_t n = x.dim();
  if (y.dim() != n) return false;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t l = 1; l <= n; ++l)
          for (std::size_t m = 1; m <= n; ++m)
            for (std::size_t p = 1; p <= n; ++p) {
              const Matrix a = Matrix::unit(n, i, j), b = Matrix::unit(n, k, l), c = Matrix::unit(n, m, p);
              if (oracle::full_contraction(x, a, b, c) != oracle::full_contraction(y, a, b, c)) return false;
            }
  return true;
}

inline std::size_t nonzero_terms(const mmt::Tensor& t) {
  std::size_t count = 0;
  for (const auto& term : t.terms())
    if (!term.a.is_zero() && !term.b.is_zero() && !term.c.is_zero()) ++count;
  return count;
}

inline std::string read_file(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) return {};
  std::string s;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) s.append(buf, got);
  std::fclose(f);
  return s;
}

}  // namespace oracle
