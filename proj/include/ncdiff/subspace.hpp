#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ncdiff/matrix.hpp"

namespace ncdiff {

/// Reduced row-echelon form; shape and row space preserved (zero rows sink to
/// the bottom). The RREF is the unique canonical representative of a row
/// space, which is what makes Subspace equality purely syntactic.
template <Field K>
Matrix<K> rref(Matrix<K> m) {
  const int rows = m.rows(), cols = m.cols();
  int lead = 0;
  for (int r = 0; r < rows && lead < cols; ++r) {
    int pivot = -1;
    while (lead < cols) {
      for (int i = r; i < rows; ++i)
        if (!is_zero(m(i, lead))) {
          pivot = i;
          break;
        }
      if (pivot >= 0) break;
      ++lead;
    }
    if (pivot < 0) break;
    if (pivot != r)
      for (int j = 0; j < cols; ++j) std::swap(m(pivot, j), m(r, j));
    const K inv = K(1) / m(r, lead);
    for (int j = lead; j < cols; ++j) m(r, j) = inv * m(r, j);
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, lead))) continue;
      const K f = m(i, lead);
      for (int j = lead; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    ++lead;
  }
  return m;
}

/// Subspace of K^n held as a canonical RREF basis (rows). Two subspaces are
/// equal iff their representations are identical.
template <Field K>
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(int ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix<K>(0, ambient);
    return s;
  }

  static Subspace full(int ambient) { return from_basis_matrix(Matrix<K>::identity(ambient)); }

  static Subspace from_rows(int ambient, const std::vector<Vec<K>>& rows) {
    return from_basis_matrix(Matrix<K>::from_rows(ambient, rows));
  }

  /// Span of the rows of m.
  static Subspace from_basis_matrix(const Matrix<K>& m) {
    Matrix<K> r = rref(m);
    int rank = 0;
    for (int i = 0; i < r.rows(); ++i) {
      bool nonzero = false;
      for (int j = 0; j < r.cols(); ++j)
        if (!is_zero(r(i, j))) {
          nonzero = true;
          break;
        }
      if (nonzero) ++rank;
    }
    Subspace s;
    s.ambient_ = r.cols();
    s.basis_ = Matrix<K>(rank, r.cols());
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < r.cols(); ++j) s.basis_(i, j) = r(i, j);
    return s;
  }

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Matrix<K>& basis() const { return basis_; }
  Vec<K> basis_vector(int i) const { return basis_.row(i); }

  bool contains(const Vec<K>& v) const { return coordinates(v).has_value(); }

  /// Coordinates of v in the RREF basis, or nullopt if v is outside.
  std::optional<Vec<K>> coordinates(const Vec<K>& v) const {
    if (static_cast<int>(v.size()) != ambient_)
      throw std::invalid_argument("Subspace::coordinates: dimension mismatch");
    Vec<K> residual = v;
    Vec<K> coeffs(dim(), K(0));
    for (int i = 0; i < dim(); ++i) {
      const int p = pivot_col(i);
      const K c = residual[p];
      if (is_zero(c)) continue;
      coeffs[i] = c;
      for (int j = 0; j < ambient_; ++j) residual[j] = residual[j] - c * basis_(i, j);
    }
    if (!is_zero_vec(residual)) return std::nullopt;
    return coeffs;
  }

  bool contains_subspace(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("Subspace: ambient mismatch");
    for (int i = 0; i < other.dim(); ++i)
      if (!coordinates(other.basis_vector(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  int pivot_col(int row) const {
    for (int j = 0; j < ambient_; ++j)
      if (!is_zero(basis_(row, j))) return j;
    throw std::logic_error("Subspace: zero basis row");
  }

  int ambient_ = 0;
  Matrix<K> basis_;
};

/// Kernel {v : m v = 0} as a canonical subspace of K^cols.
template <Field K>
Subspace<K> kernel(const Matrix<K>& m) {
  const Matrix<K> r = rref(m);
  const int cols = m.cols();
  std::vector<int> pivot_of_col(cols, -1);
  {
    int row = 0;
    for (int j = 0; j < cols && row < r.rows(); ++j) {
      if (!is_zero(r(row, j))) {
        pivot_of_col[j] = row;
        ++row;
      }
    }
  }
  std::vector<Vec<K>> basis_rows;
  for (int j = 0; j < cols; ++j) {
    if (pivot_of_col[j] >= 0) continue;  // pivot column
    Vec<K> v(cols, K(0));
    v[j] = K(1);
    for (int c = 0; c < cols; ++c)
      if (pivot_of_col[c] >= 0) v[c] = -r(pivot_of_col[c], j);
    basis_rows.push_back(std::move(v));
  }
  return Subspace<K>::from_rows(cols, basis_rows);
}

template <Field K>
Subspace<K> span_sum(const Subspace<K>& u, const Subspace<K>& v) {
  if (u.ambient() != v.ambient()) throw std::invalid_argument("span_sum: ambient mismatch");
  return Subspace<K>::from_basis_matrix(vstack(u.basis(), v.basis()));
}

template <Field K>
Subspace<K> intersect(const Subspace<K>& u, const Subspace<K>& v) {
  if (u.ambient() != v.ambient()) throw std::invalid_argument("intersect: ambient mismatch");
  // Solve sum_i a_i u_i = sum_j b_j v_j; columns are u basis then -v basis.
  const Matrix<K> m = hstack(u.basis().transpose(), -(v.basis().transpose()));
  const Subspace<K> coeffs = kernel(m);
  std::vector<Vec<K>> rows;
  for (int i = 0; i < coeffs.dim(); ++i) {
    const Vec<K> c = coeffs.basis_vector(i);
    Vec<K> w(u.ambient(), K(0));
    for (int k = 0; k < u.dim(); ++k)
      for (int j = 0; j < u.ambient(); ++j) w[j] = w[j] + c[k] * u.basis()(k, j);
    rows.push_back(std::move(w));
  }
  return Subspace<K>::from_rows(u.ambient(), rows);
}

/// Matrix whose kernel is exactly v (rows span the annihilator of v in the
/// dual space). Works over any field, no inner-product degeneracy involved.
template <Field K>
Matrix<K> annihilator_matrix(const Subspace<K>& v) {
  return kernel(v.basis()).basis();
}

/// preimage(m, v) = {x : m x in v}.
template <Field K>
Subspace<K> preimage(const Matrix<K>& m, const Subspace<K>& v) {
  if (m.rows() != v.ambient()) throw std::invalid_argument("preimage: dimension mismatch");
  const Matrix<K> ann = annihilator_matrix(v);
  if (ann.rows() == 0) return Subspace<K>::full(m.cols());
  return kernel(ann * m);
}

}  // namespace ncdiff
