#pragma once

#include <vector>

#include "ncdiff/homspace.hpp"

namespace ncdiff {

/// Leibniz check for a candidate derivation u : A -> Q (matrix dimQ x dimA),
/// on all basis pairs: u(ab) = u(a).b + a.u(b) with the bimodule actions.
template <Field K>
bool is_derivation(const Algebra<K>& a, const Bimodule<K>& q, const Matrix<K>& u) {
  if (u.rows() != q.dim || u.cols() != a.dim) return false;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      const Vec<K> lhs = u.apply(a.mul[i][j]);
      const Vec<K> rhs = vec_add(q.act(a.basis_element(j), u.apply(a.basis_element(i)), Side::right),
                                 q.act(a.basis_element(i), u.apply(a.basis_element(j)), Side::left));
      if (lhs != rhs) return false;
    }
  return true;
}

/// Q-valued derivations of A: kernel of the Leibniz system stacked over
/// basis pairs, together with the span of the inner derivations a -> aq - qa.
template <Field K>
struct DerivationSpace {
  const Algebra<K>* alg = nullptr;
  const Bimodule<K>* target = nullptr;
  Subspace<K> space;  // in vec coordinates of dimQ x dimA matrices
  Subspace<K> inner;
};

/// Inner derivation a -> a.q - q.a as a matrix A -> Q.
template <Field K>
Matrix<K> inner_derivation_matrix(const Bimodule<K>& q, const Vec<K>& qv) {
  const Algebra<K>& a = *q.alg;
  Matrix<K> u(q.dim, a.dim);
  for (int j = 0; j < a.dim; ++j) {
    const Vec<K> col = vec_sub(q.act(a.basis_element(j), qv, Side::left),
                               q.act(a.basis_element(j), qv, Side::right));
    for (int i = 0; i < q.dim; ++i) u(i, j) = col[i];
  }
  return u;
}

template <Field K>
DerivationSpace<K> derivation_space(const Algebra<K>& a, const Bimodule<K>& q) {
  const int m = q.dim, n = a.dim;
  const Matrix<K> im = Matrix<K>::identity(m);
  // Condition per basis pair (i,j):  U c_ij - R_q(e_j) U delta_i - L_q(e_i) U delta_j = 0,
  // written on vec(U) with vec(X M Y) = kron(X, Y^T) vec(M).
  Matrix<K> stacked(0, m * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix<K> cij(n, 1);
      for (int k = 0; k < n; ++k) cij(k, 0) = a.mul[i][j][k];
      Matrix<K> di(n, 1), dj(n, 1);
      di(i, 0) = K(1);
      dj(j, 0) = K(1);
      // vec(U) -> U c_ij - R_Q(e_j) U d_i - L_Q(e_i) U d_j in K^m
      const Matrix<K> cond = kron(im, cij.transpose()) - kron(q.right[j], di.transpose()) -
                             kron(q.left[i], dj.transpose());
      stacked = vstack(stacked, cond);
    }
  DerivationSpace<K> d;
  d.alg = &a;
  d.target = &q;
  d.space = kernel(stacked);
  std::vector<Vec<K>> inner_rows;
  for (int i = 0; i < q.dim; ++i)
    inner_rows.push_back(inner_derivation_matrix(q, unit_vec<K>(q.dim, i)).entries());
  d.inner = Subspace<K>::from_rows(m * n, inner_rows);
  return d;
}

/// The Lie algebra of A-valued derivations of A: a basis of matrices plus
/// bracket structure constants [u_i, u_j] = sum_k bracket[i][j][k] u_k.
template <Field K>
struct DerLie {
  const Algebra<K>* alg = nullptr;
  std::vector<Matrix<K>> basis;            // dimA x dimA matrices
  std::vector<std::vector<Vec<K>>> bracket;
  Subspace<K> space;                       // same span as basis, vec coordinates

  int dim() const { return static_cast<int>(basis.size()); }

  Matrix<K> bracket_matrix(int i, int j) const { return basis[i] * basis[j] - basis[j] * basis[i]; }

  /// Coordinates of an arbitrary derivation matrix in this basis.
  Vec<K> coordinates(const Matrix<K>& u) const {
    auto c = space.coordinates(u.entries());
    if (!c) throw std::invalid_argument("DerLie::coordinates: not a derivation in the span");
    return *c;
  }

  Matrix<K> from_coordinates(const Vec<K>& c) const {
    Matrix<K> out(alg->dim, alg->dim);
    for (int i = 0; i < dim(); ++i)
      if (!is_zero(c[i])) out = out + c[i] * basis[i];
    return out;
  }
};

template <Field K>
DerLie<K> derivation_lie_algebra(const Algebra<K>& a, const Bimodule<K>& reg) {
  const DerivationSpace<K> ds = derivation_space(a, reg);
  DerLie<K> lie;
  lie.alg = &a;
  lie.space = ds.space;
  for (int i = 0; i < ds.space.dim(); ++i) {
    const Vec<K> v = ds.space.basis_vector(i);
    Matrix<K> u(a.dim, a.dim);
    for (int r = 0; r < a.dim; ++r)
      for (int c = 0; c < a.dim; ++c) u(r, c) = v[static_cast<std::size_t>(r) * a.dim + c];
    lie.basis.push_back(std::move(u));
  }
  const int d = lie.dim();
  lie.bracket.assign(d, std::vector<Vec<K>>(d, zero_vec<K>(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Matrix<K> br = lie.bracket_matrix(i, j);
      const auto coords = ds.space.coordinates(br.entries());
      if (!coords)
        throw std::logic_error("derivation bracket fell outside the derivation space");
      lie.bracket[i][j] = *coords;
    }
  return lie;
}

}  // namespace ncdiff
