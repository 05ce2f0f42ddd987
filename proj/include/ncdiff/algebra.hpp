#pragma once

#include <string>
#include <vector>

#include "ncdiff/subspace.hpp"

namespace ncdiff {

/// Outcome of a structural validation; `message` names the first violated
/// axiom (basis indices spelled out with their labels).
struct ValidationReport {
  bool ok = true;
  std::string message;

  static ValidationReport pass() { return {}; }
  static ValidationReport fail(std::string msg) { return {false, std::move(msg)}; }
};

/// Finite-dimensional unital associative algebra over an exact field, given
/// by structure constants: e_i * e_j = sum_k mul[i][j][k] e_k.
template <Field K>
class Algebra {
 public:
  std::string name;
  int dim = 0;
  std::vector<std::string> basis_labels;
  Vec<K> unit;
  std::vector<std::vector<Vec<K>>> mul;  // mul[i][j] = coordinates of e_i e_j

  Vec<K> basis_element(int i) const { return unit_vec<K>(dim, i); }

  const std::string& label(int i) const { return basis_labels[i]; }

  Vec<K> multiply(const Vec<K>& a, const Vec<K>& b) const {
    if (static_cast<int>(a.size()) != dim || static_cast<int>(b.size()) != dim)
      throw std::invalid_argument("Algebra::multiply: dimension mismatch");
    Vec<K> out(dim, K(0));
    for (int i = 0; i < dim; ++i) {
      if (is_zero(a[i])) continue;
      for (int j = 0; j < dim; ++j) {
        if (is_zero(b[j])) continue;
        const K f = a[i] * b[j];
        for (int k = 0; k < dim; ++k) out[k] = out[k] + f * mul[i][j][k];
      }
    }
    return out;
  }

  /// Matrix of x -> a*x in the basis coordinates.
  Matrix<K> left_mult_matrix(const Vec<K>& a) const {
    Matrix<K> m(dim, dim);
    for (int j = 0; j < dim; ++j) {
      const Vec<K> col = multiply(a, basis_element(j));
      for (int k = 0; k < dim; ++k) m(k, j) = col[k];
    }
    return m;
  }

  /// Matrix of x -> x*a.
  Matrix<K> right_mult_matrix(const Vec<K>& a) const {
    Matrix<K> m(dim, dim);
    for (int j = 0; j < dim; ++j) {
      const Vec<K> col = multiply(basis_element(j), a);
      for (int k = 0; k < dim; ++k) m(k, j) = col[k];
    }
    return m;
  }

  bool is_commutative() const {
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        if (mul[i][j] != mul[j][i]) return false;
    return true;
  }

  /// Associativity on all basis triples, unit laws, unit != 0.
  ValidationReport validate() const {
    if (dim <= 0) return ValidationReport::fail("algebra has dimension 0");
    if (static_cast<int>(unit.size()) != dim ||
        static_cast<int>(basis_labels.size()) != dim ||
        static_cast<int>(mul.size()) != dim)
      return ValidationReport::fail("inconsistent dimensions in algebra data");
    for (int i = 0; i < dim; ++i) {
      if (static_cast<int>(mul[i].size()) != dim)
        return ValidationReport::fail("inconsistent mul table shape");
      for (int j = 0; j < dim; ++j)
        if (static_cast<int>(mul[i][j].size()) != dim)
          return ValidationReport::fail("inconsistent mul table shape");
    }
    if (is_zero_vec(unit)) return ValidationReport::fail("unit element is zero");
    for (int i = 0; i < dim; ++i) {
      const Vec<K> e = basis_element(i);
      if (multiply(unit, e) != e)
        return ValidationReport::fail("unit law fails: 1*" + label(i) + " != " + label(i));
      if (multiply(e, unit) != e)
        return ValidationReport::fail("unit law fails: " + label(i) + "*1 != " + label(i));
    }
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) {
          const Vec<K> lhs = multiply(multiply(basis_element(i), basis_element(j)), basis_element(k));
          const Vec<K> rhs = multiply(basis_element(i), multiply(basis_element(j), basis_element(k)));
          if (lhs != rhs)
            return ValidationReport::fail("associativity fails at (" + label(i) + "," + label(j) +
                                          "," + label(k) + ")");
        }
    return ValidationReport::pass();
  }

  /// Center {z : z e_i = e_i z for all i}, as the kernel of the stacked
  /// commutator system. Always contains the unit for a valid algebra.
  Subspace<K> center() const {
    Matrix<K> stacked(0, dim);
    for (int i = 0; i < dim; ++i) {
      const Vec<K> e = basis_element(i);
      stacked = vstack(stacked, right_mult_matrix(e) - left_mult_matrix(e));
    }
    return kernel(stacked);
  }
};

}  // namespace ncdiff
