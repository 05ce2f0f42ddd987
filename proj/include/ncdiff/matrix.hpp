#pragma once

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "ncdiff/scalar.hpp"

namespace ncdiff {

template <Field K>
using Vec = std::vector<K>;

/// Dense matrix over an exact field, row-major.
template <Field K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, K(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }

  static Matrix from_rows(int cols, const std::vector<Vec<K>>& rows) {
    Matrix m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows_; ++i) {
      if (static_cast<int>(rows[i].size()) != cols)
        throw std::invalid_argument("Matrix::from_rows: ragged rows");
      for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  K& operator()(int r, int c) { return e_[static_cast<std::size_t>(r) * cols_ + c]; }
  const K& operator()(int r, int c) const { return e_[static_cast<std::size_t>(r) * cols_ + c]; }

  Vec<K> row(int r) const {
    Vec<K> out(cols_);
    for (int j = 0; j < cols_; ++j) out[j] = (*this)(r, j);
    return out;
  }

  const std::vector<K>& entries() const { return e_; }

  bool is_zero() const {
    for (const K& x : e_)
      if (!ncdiff::is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = a.e_[i] + b.e_[i];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = a.e_[i] - b.e_[i];
    return out;
  }
  Matrix operator-() const {
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = -e_[i];
    return out;
  }
  friend Matrix operator*(const K& s, const Matrix& a) {
    Matrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = s * a.e_[i];
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const K& aik = a(i, k);
        if (ncdiff::is_zero(aik)) continue;
        for (int j = 0; j < b.cols_; ++j) out(i, j) = out(i, j) + aik * b(k, j);
      }
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Vec<K> apply(const Vec<K>& v) const {
    if (static_cast<int>(v.size()) != cols_)
      throw std::invalid_argument("Matrix::apply: dimension mismatch");
    Vec<K> out(rows_, K(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!ncdiff::is_zero((*this)(i, j))) out[i] = out[i] + (*this)(i, j) * v[j];
    return out;
  }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("Matrix arithmetic: shape mismatch");
  }

  int rows_ = 0, cols_ = 0;
  std::vector<K> e_;
};

template <Field K>
Matrix<K> vstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  Matrix<K> out(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

template <Field K>
Matrix<K> hstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  Matrix<K> out(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

/// Kronecker product; with row-major vectorisation, vec(U M V) = kron(U, V^T) vec(M).
template <Field K>
Matrix<K> kron(const Matrix<K>& a, const Matrix<K>& b) {
  Matrix<K> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (ncdiff::is_zero(a(i, j))) continue;
      for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c)
          out(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
    }
  return out;
}

// ---- vector helpers ----

template <Field K>
Vec<K> zero_vec(int n) {
  return Vec<K>(n, K(0));
}

template <Field K>
Vec<K> unit_vec(int n, int i) {
  Vec<K> v(n, K(0));
  v[i] = K(1);
  return v;
}

template <Field K>
bool is_zero_vec(const Vec<K>& v) {
  for (const K& x : v)
    if (!is_zero(x)) return false;
  return true;
}

template <Field K>
Vec<K> vec_add(const Vec<K>& a, const Vec<K>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_add: dimension mismatch");
  Vec<K> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

template <Field K>
Vec<K> vec_sub(const Vec<K>& a, const Vec<K>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_sub: dimension mismatch");
  Vec<K> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

template <Field K>
Vec<K> vec_scale(const K& s, const Vec<K>& a) {
  Vec<K> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

}  // namespace ncdiff
