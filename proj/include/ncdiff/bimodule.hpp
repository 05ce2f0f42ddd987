#pragma once

#include <vector>

#include "ncdiff/algebra.hpp"

namespace ncdiff {

enum class Side { left, right };

/// Two-sided A-module, central over the center of A. Stored as one left and
/// one right action matrix per algebra basis element.
template <Field K>
class Bimodule {
 public:
  const Algebra<K>* alg = nullptr;
  int dim = 0;
  std::vector<Matrix<K>> left;   // left[i] acts as e_i . p
  std::vector<Matrix<K>> right;  // right[i] acts as p . e_i

  Matrix<K> left_action(const Vec<K>& a) const { return combine(left, a); }
  Matrix<K> right_action(const Vec<K>& a) const { return combine(right, a); }

  Vec<K> act(const Vec<K>& a, const Vec<K>& p, Side side) const {
    if (static_cast<int>(p.size()) != dim)
      throw std::invalid_argument("Bimodule::act: dimension mismatch");
    return (side == Side::left ? left_action(a) : right_action(a)).apply(p);
  }

  /// Homomorphism axioms for both actions, commutation of the actions, and
  /// centrality (the center of A acts identically from both sides).
  ValidationReport validate() const {
    const int d = alg->dim;
    if (static_cast<int>(left.size()) != d || static_cast<int>(right.size()) != d)
      return ValidationReport::fail("action list length != algebra dimension");
    for (int i = 0; i < d; ++i)
      if (left[i].rows() != dim || left[i].cols() != dim || right[i].rows() != dim ||
          right[i].cols() != dim)
        return ValidationReport::fail("action matrix shape mismatch");
    if (left_action(alg->unit) != Matrix<K>::identity(dim))
      return ValidationReport::fail("left action of the unit is not the identity");
    if (right_action(alg->unit) != Matrix<K>::identity(dim))
      return ValidationReport::fail("right action of the unit is not the identity");
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        // L(e_i e_j) = L_i L_j and R(e_i e_j) = R_j R_i
        const Vec<K> prod = alg->mul[i][j];
        if (left_action(prod) != left[i] * left[j])
          return ValidationReport::fail("left action is not a homomorphism at (" +
                                        alg->label(i) + "," + alg->label(j) + ")");
        if (right_action(prod) != right[j] * right[i])
          return ValidationReport::fail("right action is not an anti-homomorphism at (" +
                                        alg->label(i) + "," + alg->label(j) + ")");
        if (left[i] * right[j] != right[j] * left[i])
          return ValidationReport::fail("left/right actions do not commute at (" +
                                        alg->label(i) + "," + alg->label(j) + ")");
      }
    const Subspace<K> z = alg->center();
    for (int i = 0; i < z.dim(); ++i) {
      const Vec<K> zi = z.basis_vector(i);
      if (left_action(zi) != right_action(zi))
        return ValidationReport::fail("centrality fails for a central element (index " +
                                      std::to_string(i) + " of the center basis)");
    }
    return ValidationReport::pass();
  }

 private:
  Matrix<K> combine(const std::vector<Matrix<K>>& mats, const Vec<K>& a) const {
    if (static_cast<int>(a.size()) != alg->dim)
      throw std::invalid_argument("Bimodule: element dimension mismatch");
    Matrix<K> out(dim, dim);
    for (int i = 0; i < alg->dim; ++i)
      if (!is_zero(a[i])) out = out + a[i] * mats[i];
    return out;
  }
};

/// P = A with left/right multiplication actions.
template <Field K>
Bimodule<K> regular(const Algebra<K>& a) {
  Bimodule<K> m;
  m.alg = &a;
  m.dim = a.dim;
  for (int i = 0; i < a.dim; ++i) {
    m.left.push_back(a.left_mult_matrix(a.basis_element(i)));
    m.right.push_back(a.right_mult_matrix(a.basis_element(i)));
  }
  return m;
}

template <Field K>
Bimodule<K> direct_sum(const Bimodule<K>& x, const Bimodule<K>& y) {
  if (x.alg != y.alg) throw std::invalid_argument("direct_sum: different algebras");
  Bimodule<K> m;
  m.alg = x.alg;
  m.dim = x.dim + y.dim;
  auto block = [&](const Matrix<K>& a, const Matrix<K>& b) {
    Matrix<K> out(m.dim, m.dim);
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) out(x.dim + i, x.dim + j) = b(i, j);
    return out;
  };
  for (int i = 0; i < x.alg->dim; ++i) {
    m.left.push_back(block(x.left[i], y.left[i]));
    m.right.push_back(block(x.right[i], y.right[i]));
  }
  return m;
}

/// Regular bimodule with the right action twisted through an algebra
/// automorphism sigma (given as its matrix on basis coordinates):
/// p . a := p sigma(a). Central only when sigma fixes the center pointwise;
/// validate() decides.
template <Field K>
Bimodule<K> twisted_regular(const Algebra<K>& a, const Matrix<K>& sigma) {
  if (sigma.rows() != a.dim || sigma.cols() != a.dim)
    throw std::invalid_argument("twisted_regular: automorphism matrix shape mismatch");
  // sigma must be an automorphism: unital and multiplicative.
  if (sigma.apply(a.unit) != a.unit)
    throw std::invalid_argument("twisted_regular: sigma does not fix the unit");
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      const Vec<K> lhs = sigma.apply(a.mul[i][j]);
      const Vec<K> rhs =
          a.multiply(sigma.apply(a.basis_element(i)), sigma.apply(a.basis_element(j)));
      if (lhs != rhs) throw std::invalid_argument("twisted_regular: sigma is not multiplicative");
    }
  Bimodule<K> m;
  m.alg = &a;
  m.dim = a.dim;
  for (int i = 0; i < a.dim; ++i) {
    m.left.push_back(a.left_mult_matrix(a.basis_element(i)));
    m.right.push_back(a.right_mult_matrix(sigma.apply(a.basis_element(i))));
  }
  return m;
}

/// Inner automorphism x -> g x g^{-1}; throws when g is not invertible.
template <Field K>
Matrix<K> conjugation_automorphism(const Algebra<K>& a, const Vec<K>& g) {
  const Matrix<K> lg = a.left_mult_matrix(g);
  // solve g * x = 1 for x, then check x * g = 1
  const Subspace<K> ker = kernel(lg);
  if (ker.dim() != 0) throw std::invalid_argument("conjugation_automorphism: g is not invertible");
  // invert L(g) by elimination on [L(g) | I]
  Matrix<K> aug = hstack(lg, Matrix<K>::identity(a.dim));
  aug = rref(aug);
  Matrix<K> inv(a.dim, a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) inv(i, j) = aug(i, a.dim + j);
  const Vec<K> ginv = inv.apply(a.unit);
  if (a.multiply(ginv, g) != a.unit || a.multiply(g, ginv) != a.unit)
    throw std::invalid_argument("conjugation_automorphism: inverse check failed");
  Matrix<K> sigma(a.dim, a.dim);
  for (int j = 0; j < a.dim; ++j) {
    const Vec<K> col = a.multiply(a.multiply(g, a.basis_element(j)), ginv);
    for (int i = 0; i < a.dim; ++i) sigma(i, j) = col[i];
  }
  return sigma;
}

}  // namespace ncdiff
