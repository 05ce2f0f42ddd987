#pragma once

#include <vector>

#include "ncdiff/bimodule.hpp"

namespace ncdiff {

/// K-linear map P -> Q between bimodules over the same algebra, stored as a
/// dim(Q) x dim(P) matrix in the fixed bases.
template <Field K>
struct LinearMap {
  const Bimodule<K>* source = nullptr;
  const Bimodule<K>* target = nullptr;
  Matrix<K> mat;

  LinearMap() = default;
  LinearMap(const Bimodule<K>* src, const Bimodule<K>* tgt, Matrix<K> m)
      : source(src), target(tgt), mat(std::move(m)) {
    if (mat.rows() != tgt->dim || mat.cols() != src->dim)
      throw std::invalid_argument("LinearMap: matrix shape does not match modules");
    if (src->alg != tgt->alg) throw std::invalid_argument("LinearMap: different algebras");
  }

  Vec<K> apply(const Vec<K>& p) const { return mat.apply(p); }
  bool is_zero() const { return mat.is_zero(); }

  friend LinearMap operator+(const LinearMap& a, const LinearMap& b) {
    require_same_space(a, b);
    return LinearMap(a.source, a.target, a.mat + b.mat);
  }
  friend LinearMap operator-(const LinearMap& a, const LinearMap& b) {
    require_same_space(a, b);
    return LinearMap(a.source, a.target, a.mat - b.mat);
  }
  friend LinearMap operator*(const K& s, const LinearMap& a) {
    return LinearMap(a.source, a.target, s * a.mat);
  }
  friend bool operator==(const LinearMap& a, const LinearMap& b) {
    return a.source == b.source && a.target == b.target && a.mat == b.mat;
  }

  static void require_same_space(const LinearMap& a, const LinearMap& b) {
    if (a.source != b.source || a.target != b.target)
      throw std::invalid_argument("LinearMap arithmetic: different hom spaces");
  }
};

/// Composition f . g (apply g first).
template <Field K>
LinearMap<K> compose(const LinearMap<K>& f, const LinearMap<K>& g) {
  if (g.target != f.source) throw std::invalid_argument("compose: shapes do not chain");
  return LinearMap<K>(g.source, f.target, f.mat * g.mat);
}

/// The four module actions of A on Hom_K(P,Q):
///   a_phi:        (a phi)(p)   = a phi(p)
///   phi_bullet_a: (phi . a)(p) = phi(a p)
///   phi_a:        (phi a)(p)   = phi(p) a
///   a_bullet_phi: (a . phi)(p) = phi(p a)
enum class HomAction { a_phi, phi_bullet_a, phi_a, a_bullet_phi };

template <Field K>
LinearMap<K> act(const Vec<K>& a, const LinearMap<K>& phi, HomAction which) {
  const Bimodule<K>& P = *phi.source;
  const Bimodule<K>& Q = *phi.target;
  switch (which) {
    case HomAction::a_phi:
      return LinearMap<K>(phi.source, phi.target, Q.left_action(a) * phi.mat);
    case HomAction::phi_bullet_a:
      return LinearMap<K>(phi.source, phi.target, phi.mat * P.left_action(a));
    case HomAction::phi_a:
      return LinearMap<K>(phi.source, phi.target, Q.right_action(a) * phi.mat);
    case HomAction::a_bullet_phi:
      return LinearMap<K>(phi.source, phi.target, phi.mat * P.right_action(a));
  }
  throw std::logic_error("unreachable");
}

/// delta_a phi = a phi - phi . a
template <Field K>
LinearMap<K> delta(const Vec<K>& a, const LinearMap<K>& phi) {
  return act(a, phi, HomAction::a_phi) - act(a, phi, HomAction::phi_bullet_a);
}

/// delta_bar_a phi = phi a - a . phi
template <Field K>
LinearMap<K> delta_bar(const Vec<K>& a, const LinearMap<K>& phi) {
  return act(a, phi, HomAction::phi_a) - act(a, phi, HomAction::a_bullet_phi);
}

/// Hom_K(P,Q) with the per-basis action operators cached as matrices on the
/// row-major vectorisation of the map matrices. Everything downstream
/// (orders, filtrations, first-order conditions) is linear algebra on these.
template <Field K>
class HomSpace {
 public:
  const Bimodule<K>* P = nullptr;
  const Bimodule<K>* Q = nullptr;

  HomSpace(const Bimodule<K>& p, const Bimodule<K>& q) : P(&p), Q(&q) {
    if (p.alg != q.alg) throw std::invalid_argument("HomSpace: different algebras");
    const int m = q.dim, n = p.dim;
    const Matrix<K> im = Matrix<K>::identity(m);
    const Matrix<K> in = Matrix<K>::identity(n);
    const int d = p.alg->dim;
    for (int i = 0; i < d; ++i) {
      op_a_phi.push_back(kron(q.left[i], in));
      op_phi_bullet_a.push_back(kron(im, p.left[i].transpose()));
      op_phi_a.push_back(kron(q.right[i], in));
      op_a_bullet_phi.push_back(kron(im, p.right[i].transpose()));
      op_delta.push_back(op_a_phi.back() - op_phi_bullet_a.back());
      op_delta_bar.push_back(op_phi_a.back() - op_a_bullet_phi.back());
    }
  }

  const Algebra<K>& algebra() const { return *P->alg; }
  int dim() const { return P->dim * Q->dim; }

  LinearMap<K> map_from_vec(const Vec<K>& v) const {
    Matrix<K> m(Q->dim, P->dim);
    for (int i = 0; i < Q->dim; ++i)
      for (int j = 0; j < P->dim; ++j) m(i, j) = v[static_cast<std::size_t>(i) * P->dim + j];
    return LinearMap<K>(P, Q, std::move(m));
  }

  LinearMap<K> map_from_matrix(Matrix<K> m) const { return LinearMap<K>(P, Q, std::move(m)); }

  LinearMap<K> zero_map() const { return LinearMap<K>(P, Q, Matrix<K>(Q->dim, P->dim)); }

  // per-basis action operators on hom coordinates
  std::vector<Matrix<K>> op_a_phi, op_phi_bullet_a, op_phi_a, op_a_bullet_phi;
  std::vector<Matrix<K>> op_delta, op_delta_bar;

  const std::vector<Matrix<K>>& ops(HomAction which) const {
    switch (which) {
      case HomAction::a_phi: return op_a_phi;
      case HomAction::phi_bullet_a: return op_phi_bullet_a;
      case HomAction::phi_a: return op_phi_a;
      case HomAction::a_bullet_phi: return op_a_bullet_phi;
    }
    throw std::logic_error("unreachable");
  }

  /// Stacked matrix of all basis delta (or delta-bar) operators.
  Matrix<K> stacked(const std::vector<Matrix<K>>& operators) const {
    Matrix<K> out(0, dim());
    for (const auto& op : operators) out = vstack(out, op);
    return out;
  }
};

}  // namespace ncdiff
