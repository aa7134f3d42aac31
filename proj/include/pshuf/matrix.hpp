// Copyright 2026 The pshuf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pshuf/group.hpp"

namespace pshuf {

/// Bijection on {0, ..., n-1}; `p[i]` is the image of i.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> mapping) : map_(std::move(mapping)) {
    std::vector<bool> seen(map_.size(), false);
    for (auto v : map_) {
      if (v >= map_.size() || seen[v]) throw std::invalid_argument("mapping is not a bijection");
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i;
    return Permutation(std::move(m));
  }

  /// Uniform permutation (Fisher-Yates).
  template <std::uniform_random_bit_generator Rng>
  static Permutation random(Rng& rng, std::size_t n) {
    auto p = identity(n);
    for (std::size_t i = n; i > 1; --i) std::swap(p.map_[i - 1], p.map_[uniform_index(rng, i)]);
    return p;
  }

  std::size_t size() const { return map_.size(); }
  std::size_t operator[](std::size_t i) const { return map_.at(i); }
  const std::vector<std::size_t>& mapping() const { return map_; }

  Permutation inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
    return Permutation(std::move(inv));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

/// Dense row-major matrix over Z_q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(const Group& G, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = G.one();
    return m;
  }

  /// Builds a matrix whose j-th column is columns[j].
  static Matrix from_columns(const std::vector<ScalarVector>& columns) {
    if (columns.empty()) return {};
    Matrix m(columns.front().size(), columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ScalarVector column(std::size_t j) const {
    ScalarVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  ScalarVector row(std::size_t i) const {
    return ScalarVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  void set_column(std::size_t j, const ScalarVector& v) {
    if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  ScalarVector data_;
};

/// Raised by mat_inverse; callers are expected to retry with fresh inputs.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError() : std::runtime_error("matrix is singular over Z_q") {}
};

inline bool is_permutation_matrix(const Matrix& M) {
  if (!M.square()) return false;
  const std::size_t n = M.rows();
  std::vector<int> col_ones(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int row_ones = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& v = M(i, j).value();
      if (v == 1) {
        ++row_ones;
        ++col_ones[j];
      } else if (v != 0) {
        return false;
      }
    }
    if (row_ones != 1) return false;
  }
  for (int c : col_ones)
    if (c != 1) return false;
  return true;
}

/// M(i, p[i]) = 1, so that (M x)_i = x_{p[i]}.
inline Matrix perm_to_matrix(const Group& G, const Permutation& p) {
  Matrix M(p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) M(i, p[i]) = G.one();
  return M;
}

/// Inverse of perm_to_matrix. Throws std::invalid_argument on a non-permutation matrix.
inline Permutation matrix_to_perm(const Matrix& M) {
  if (!is_permutation_matrix(M)) throw std::invalid_argument("not a permutation matrix");
  std::vector<std::size_t> m(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (M(i, j).value() == 1) m[i] = j;
  return Permutation(std::move(m));
}

inline Scalar inner(const Group& G, const ScalarVector& a, const ScalarVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner: length mismatch");
  mpz_class acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].value() * b[i].value();
  return G.reduce(acc);
}

/// M x
inline ScalarVector mat_vec_mul(const Group& G, const Matrix& M, const ScalarVector& x) {
  if (M.cols() != x.size()) throw std::invalid_argument("mat_vec_mul: dimension mismatch");
  ScalarVector y(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i) {
    mpz_class acc = 0;
    for (std::size_t j = 0; j < M.cols(); ++j) acc += M(i, j).value() * x[j].value();
    y[i] = G.reduce(acc);
  }
  return y;
}

/// x M
inline ScalarVector vec_mat_mul(const Group& G, const ScalarVector& x, const Matrix& M) {
  if (M.rows() != x.size()) throw std::invalid_argument("vec_mat_mul: dimension mismatch");
  ScalarVector y(M.cols());
  for (std::size_t j = 0; j < M.cols(); ++j) {
    mpz_class acc = 0;
    for (std::size_t i = 0; i < M.rows(); ++i) acc += x[i].value() * M(i, j).value();
    y[j] = G.reduce(acc);
  }
  return y;
}

inline Matrix mat_mul(const Group& G, const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
  Matrix C(A.rows(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) {
      mpz_class acc = 0;
      for (std::size_t k = 0; k < A.cols(); ++k) acc += A(i, k).value() * B(k, j).value();
      C(i, j) = G.reduce(acc);
    }
  return C;
}

/// Gauss-Jordan elimination over Z_q. Throws SingularMatrixError.
inline Matrix mat_inverse(const Group& G, const Matrix& U) {
  if (!U.square()) throw std::invalid_argument("mat_inverse: matrix is not square");
  const std::size_t n = U.rows();
  Matrix a = U;
  Matrix inv = Matrix::identity(G, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw SingularMatrixError();
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Scalar scale = G.inv(a(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = G.mul(a(col, j), scale);
      inv(col, j) = G.mul(inv(col, j), scale);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      const Scalar factor = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = G.sub(a(i, j), G.mul(factor, a(col, j)));
        inv(i, j) = G.sub(inv(i, j), G.mul(factor, inv(col, j)));
      }
    }
  }
  return inv;
}

/// prod_i <m_i, x> - prod_i x_i with m_i the i-th column of M.
///
/// Zero for every x when M is a permutation matrix; for a matrix with unit row
/// sums that is not a permutation matrix it is a nonzero polynomial in x.
inline Scalar perm_product_check(const Group& G, const Matrix& M, const ScalarVector& x) {
  if (!M.square() || M.rows() != x.size()) {
    throw std::invalid_argument("perm_product_check: dimension mismatch");
  }
  const ScalarVector forms = vec_mat_mul(G, x, M);
  return G.sub(product(G, forms), product(G, x));
}

}  // namespace pshuf
