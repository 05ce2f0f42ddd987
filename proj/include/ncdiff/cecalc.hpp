#pragma once

#include <vector>

#include "ncdiff/derivations.hpp"

namespace ncdiff {

namespace detail {

inline long long int_pow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// mixed-radix decode of a k-tuple of indices < d
inline std::vector<int> decode_tuple(long long idx, int d, int k) {
  std::vector<int> t(k);
  for (int i = k - 1; i >= 0; --i) {
    t[i] = static_cast<int>(idx % d);
    idx /= d;
  }
  return t;
}

inline long long encode_tuple(const std::vector<int>& t, int d) {
  long long idx = 0;
  for (int x : t) idx = idx * d + x;
  return idx;
}

inline int permutation_sign(const std::vector<int>& positions) {
  int inv = 0;
  for (std::size_t i = 0; i < positions.size(); ++i)
    for (std::size_t j = i + 1; j < positions.size(); ++j)
      if (positions[i] > positions[j]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

inline void increasing_tuples_rec(int d, int k, int start, std::vector<int>& cur,
                                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < d; ++i) {
    cur.push_back(i);
    increasing_tuples_rec(d, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> increasing_tuples(int d, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  increasing_tuples_rec(d, k, 0, cur, out);
  return out;
}

}  // namespace detail

/// Degree-k element of the graded calculus: an A-valued function on all
/// k-tuples of derivation basis indices. Valid cochains are alternating and
/// Z_A-multilinear; degree 0 is identified with elements of A.
template <Field K>
struct Cochain {
  const Algebra<K>* alg = nullptr;
  const DerLie<K>* der = nullptr;
  int degree = 0;
  std::vector<Vec<K>> values;  // size dim(der)^degree, each of length dim(A)

  long long tuple_count() const { return detail::int_pow(der->dim(), degree); }

  const Vec<K>& value(const std::vector<int>& tuple) const {
    return values[detail::encode_tuple(tuple, der->dim())];
  }

  /// Flat coordinates (concatenation of all values), the ambient space used
  /// by cochain_space and the graded subspaces.
  Vec<K> flatten() const {
    Vec<K> out;
    out.reserve(values.size() * alg->dim);
    for (const auto& v : values) out.insert(out.end(), v.begin(), v.end());
    return out;
  }
};

template <Field K>
Cochain<K> cochain_zero(const Algebra<K>& alg, const DerLie<K>& der, int degree) {
  Cochain<K> c;
  c.alg = &alg;
  c.der = &der;
  c.degree = degree;
  c.values.assign(detail::int_pow(der.dim(), degree), zero_vec<K>(alg.dim));
  return c;
}

template <Field K>
Cochain<K> cochain_from_flat(const Algebra<K>& alg, const DerLie<K>& der, int degree,
                             const Vec<K>& flat) {
  Cochain<K> c = cochain_zero(alg, der, degree);
  if (flat.size() != c.values.size() * static_cast<std::size_t>(alg.dim))
    throw std::invalid_argument("cochain_from_flat: wrong coordinate length");
  for (std::size_t t = 0; t < c.values.size(); ++t)
    for (int i = 0; i < alg.dim; ++i) c.values[t][i] = flat[t * alg.dim + i];
  return c;
}

/// Degree-0 cochain holding an algebra element.
template <Field K>
Cochain<K> cochain_of_element(const Algebra<K>& alg, const DerLie<K>& der, const Vec<K>& a) {
  Cochain<K> c = cochain_zero(alg, der, 0);
  c.values[0] = a;
  return c;
}

namespace detail {

/// Coordinates of z.u_i in the derivation basis, for every center basis
/// element z and derivation basis index i.
template <Field K>
std::vector<std::vector<Vec<K>>> center_action_table(const Algebra<K>& alg, const DerLie<K>& der,
                                                     const Subspace<K>& center) {
  std::vector<std::vector<Vec<K>>> w(center.dim(), std::vector<Vec<K>>(der.dim()));
  for (int zi = 0; zi < center.dim(); ++zi) {
    const Matrix<K> lz = alg.left_mult_matrix(center.basis_vector(zi));
    for (int i = 0; i < der.dim(); ++i) w[zi][i] = der.coordinates(lz * der.basis[i]);
  }
  return w;
}

}  // namespace detail

/// Alternation plus Z_A-multilinearity check.
template <Field K>
bool is_valid_cochain(const Cochain<K>& c) {
  const Algebra<K>& alg = *c.alg;
  const DerLie<K>& der = *c.der;
  const int d = der.dim(), k = c.degree;
  for (long long ti = 0; ti < c.tuple_count(); ++ti) {
    const auto t = detail::decode_tuple(ti, d, k);
    bool repeated = false;
    for (int i = 0; i < k && !repeated; ++i)
      for (int j = i + 1; j < k; ++j)
        if (t[i] == t[j]) {
          repeated = true;
          break;
        }
    if (repeated && !is_zero_vec(c.values[ti])) return false;
    for (int s = 0; s + 1 < k; ++s) {
      auto sw = t;
      std::swap(sw[s], sw[s + 1]);
      if (c.value(sw) != vec_scale(K(-1), c.values[ti])) return false;
    }
  }
  if (k == 0) return true;
  const Subspace<K> center = alg.center();
  const auto w = detail::center_action_table(alg, der, center);
  for (int zi = 0; zi < center.dim(); ++zi) {
    const Matrix<K> lz = alg.left_mult_matrix(center.basis_vector(zi));
    for (long long ti = 0; ti < c.tuple_count(); ++ti) {
      const auto t = detail::decode_tuple(ti, d, k);
      for (int s = 0; s < k; ++s) {
        Vec<K> lhs = zero_vec<K>(alg.dim);
        for (int j = 0; j < d; ++j) {
          const K coeff = w[zi][t[s]][j];
          if (is_zero(coeff)) continue;
          auto tj = t;
          tj[s] = j;
          lhs = vec_add(lhs, vec_scale(coeff, c.value(tj)));
        }
        if (lhs != lz.apply(c.values[ti])) return false;
      }
    }
  }
  return true;
}

/// O^k[dA]: the subspace of valid degree-k cochains inside the full
/// tuple-indexed coordinate space. Internally the alternating part is built
/// structurally and only the multilinearity constraints go through the
/// kernel computation.
template <Field K>
Subspace<K> cochain_space(const Algebra<K>& alg, const DerLie<K>& der, int k) {
  const int d = der.dim();
  const long long ambient = detail::int_pow(d, k) * alg.dim;
  if (k == 0) return Subspace<K>::full(alg.dim);
  if (k > d) return Subspace<K>::zero(static_cast<int>(ambient));

  // structural alternating basis: one generator per (increasing tuple, coordinate)
  std::vector<Vec<K>> alt_rows;
  for (const auto& base : detail::increasing_tuples(d, k)) {
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    std::vector<std::pair<long long, int>> orbit;  // (tuple index, sign)
    do {
      std::vector<int> t(k);
      for (int i = 0; i < k; ++i) t[i] = base[perm[i]];
      orbit.emplace_back(detail::encode_tuple(t, d), detail::permutation_sign(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int c = 0; c < alg.dim; ++c) {
      Vec<K> row(ambient, K(0));
      for (const auto& [ti, sign] : orbit) row[ti * alg.dim + c] = K(sign);
      alt_rows.push_back(std::move(row));
    }
  }
  if (alt_rows.empty()) return Subspace<K>::zero(static_cast<int>(ambient));

  const Subspace<K> center = alg.center();
  const auto w = detail::center_action_table(alg, der, center);

  // multilinearity constraints applied to the alternating generators
  const int n_alt = static_cast<int>(alt_rows.size());
  std::vector<Matrix<K>> images;  // constraint image per generator, as one long column
  const long long tuples = detail::int_pow(d, k);
  const long long out_dim = center.dim() * k * tuples * alg.dim;
  Matrix<K> constraint(static_cast<int>(out_dim), n_alt);
  for (int g = 0; g < n_alt; ++g) {
    const Cochain<K> phi = cochain_from_flat(alg, der, k, alt_rows[g]);
    long long row0 = 0;
    for (int zi = 0; zi < center.dim(); ++zi) {
      const Matrix<K> lz = alg.left_mult_matrix(center.basis_vector(zi));
      for (int s = 0; s < k; ++s) {
        for (long long ti = 0; ti < tuples; ++ti) {
          const auto t = detail::decode_tuple(ti, d, k);
          Vec<K> lhs = zero_vec<K>(alg.dim);
          for (int j = 0; j < d; ++j) {
            const K coeff = w[zi][t[s]][j];
            if (is_zero(coeff)) continue;
            auto tj = t;
            tj[s] = j;
            lhs = vec_add(lhs, vec_scale(coeff, phi.value(tj)));
          }
          const Vec<K> rhs = lz.apply(phi.values[ti]);
          for (int i = 0; i < alg.dim; ++i) constraint(static_cast<int>(row0 + i), g) = lhs[i] - rhs[i];
          row0 += alg.dim;
        }
      }
    }
  }
  const Subspace<K> sol = kernel(constraint);
  std::vector<Vec<K>> rows;
  for (int i = 0; i < sol.dim(); ++i) {
    const Vec<K> y = sol.basis_vector(i);
    Vec<K> v(ambient, K(0));
    for (int g = 0; g < n_alt; ++g)
      if (!is_zero(y[g])) v = vec_add(v, vec_scale(y[g], alt_rows[g]));
    rows.push_back(std::move(v));
  }
  return Subspace<K>::from_rows(static_cast<int>(ambient), rows);
}

/// Chevalley-Eilenberg coboundary. Validates its input and asserts the
/// result stays a valid cochain.
template <Field K>
Cochain<K> ce_d(const Cochain<K>& phi) {
  const Algebra<K>& alg = *phi.alg;
  const DerLie<K>& der = *phi.der;
  const int d = der.dim(), k = phi.degree;
  if (!is_valid_cochain(phi)) throw std::invalid_argument("ce_d: input violates cochain invariants");
  Cochain<K> out = cochain_zero(alg, der, k + 1);
  for (long long ti = 0; ti < out.tuple_count(); ++ti) {
    const auto t = detail::decode_tuple(ti, d, k + 1);
    Vec<K> val = zero_vec<K>(alg.dim);
    for (int i = 0; i <= k; ++i) {
      std::vector<int> rest;
      for (int j = 0; j <= k; ++j)
        if (j != i) rest.push_back(t[j]);
      const Vec<K> term = der.basis[t[i]].apply(phi.value(rest));
      val = (i % 2 == 0) ? vec_add(val, term) : vec_sub(val, term);
    }
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        std::vector<int> rest;
        for (int l = 0; l <= k; ++l)
          if (l != i && l != j) rest.push_back(t[l]);
        const Vec<K>& br = der.bracket[t[i]][t[j]];
        Vec<K> term = zero_vec<K>(alg.dim);
        for (int m = 0; m < d; ++m) {
          if (is_zero(br[m])) continue;
          std::vector<int> tup{m};
          tup.insert(tup.end(), rest.begin(), rest.end());
          term = vec_add(term, vec_scale(br[m], phi.value(tup)));
        }
        val = ((i + j) % 2 == 0) ? vec_add(val, term) : vec_sub(val, term);
      }
    out.values[ti] = std::move(val);
  }
  if (!is_valid_cochain(out)) throw std::logic_error("ce_d: output violates cochain invariants");
  return out;
}

/// Exterior-style product: shuffle sum with signs, values multiplied in A in
/// the written order (no symmetrisation).
template <Field K>
Cochain<K> wedge(const Cochain<K>& phi, const Cochain<K>& psi) {
  const Algebra<K>& alg = *phi.alg;
  const DerLie<K>& der = *phi.der;
  const int d = der.dim(), r = phi.degree, s = psi.degree;
  Cochain<K> out = cochain_zero(alg, der, r + s);
  const auto shuffles = detail::increasing_tuples(r + s, r);
  for (long long ti = 0; ti < out.tuple_count(); ++ti) {
    const auto t = detail::decode_tuple(ti, d, r + s);
    Vec<K> val = zero_vec<K>(alg.dim);
    for (const auto& ipos : shuffles) {
      std::vector<int> jpos;
      {
        std::vector<bool> used(r + s, false);
        for (int p : ipos) used[p] = true;
        for (int p = 0; p < r + s; ++p)
          if (!used[p]) jpos.push_back(p);
      }
      std::vector<int> perm = ipos;
      perm.insert(perm.end(), jpos.begin(), jpos.end());
      const int sign = detail::permutation_sign(perm);
      std::vector<int> ta, tb;
      for (int p : ipos) ta.push_back(t[p]);
      for (int p : jpos) tb.push_back(t[p]);
      const Vec<K> prod = alg.multiply(phi.value(ta), psi.value(tb));
      val = (sign > 0) ? vec_add(val, prod) : vec_sub(val, prod);
    }
    out.values[ti] = std::move(val);
  }
  return out;
}

/// da as a degree-1 cochain: (da)(u) = u(a).
template <Field K>
Cochain<K> universal_differential(const Algebra<K>& alg, const DerLie<K>& der, const Vec<K>& a) {
  Cochain<K> c = cochain_zero(alg, der, 1);
  for (int t = 0; t < der.dim(); ++t) c.values[t] = der.basis[t].apply(a);
  return c;
}

/// Left/right A-action on cochains: act on each value.
template <Field K>
Cochain<K> cochain_act(const Vec<K>& a, const Cochain<K>& phi, Side side) {
  const Algebra<K>& alg = *phi.alg;
  Cochain<K> out = phi;
  const Matrix<K> m = (side == Side::left) ? alg.left_mult_matrix(a) : alg.right_mult_matrix(a);
  for (auto& v : out.values) v = m.apply(v);
  return out;
}

/// Per-degree spaces O^k[dA] (full) and O^k A (generated by exact one-forms).
template <Field K>
struct GradedSpace {
  std::vector<Subspace<K>> full;
  std::vector<Subspace<K>> generated;
};

template <Field K>
GradedSpace<K> generated_subalgebra(const Algebra<K>& alg, const DerLie<K>& der, int k_max) {
  GradedSpace<K> g;
  const int d = der.dim();
  for (int k = 0; k <= k_max; ++k) g.full.push_back(cochain_space(alg, der, k));
  g.generated.push_back(Subspace<K>::full(alg.dim));
  if (k_max >= 1) {
    std::vector<Vec<K>> rows;
    for (int i = 0; i < alg.dim; ++i)
      for (int j = 0; j < alg.dim; ++j)
        rows.push_back(cochain_act(alg.basis_element(i),
                                   universal_differential(alg, der, alg.basis_element(j)),
                                   Side::left)
                           .flatten());
    g.generated.push_back(Subspace<K>::from_rows(d * alg.dim, rows));
  }
  for (int k = 2; k <= k_max; ++k) {
    std::vector<Vec<K>> rows;
    const long long ambient = detail::int_pow(d, k) * alg.dim;
    if (k <= d) {
      for (int i = 0; i < g.generated[1].dim(); ++i) {
        const Cochain<K> omega = cochain_from_flat(alg, der, 1, g.generated[1].basis_vector(i));
        for (int j = 0; j < g.generated[k - 1].dim(); ++j) {
          const Cochain<K> beta =
              cochain_from_flat(alg, der, k - 1, g.generated[k - 1].basis_vector(j));
          rows.push_back(wedge(omega, beta).flatten());
        }
      }
    }
    g.generated.push_back(Subspace<K>::from_rows(static_cast<int>(ambient), rows));
  }
  return g;
}

/// Evaluation pairing of derivations against exact one-forms,
/// ev(u) : O^1 A -> A, omega -> omega(u). The hom-space target is computed in
/// three readings (left-linear, right-linear, two-sided); the evaluation
/// always lands in the two-sided homs, and bijectivity is reported against
/// that reading. The one-sided dimensions are recorded alongside.
struct DualityReport {
  int dim_derivations = 0;
  int dim_one_forms = 0;
  int dim_left_linear_homs = 0;
  int dim_right_linear_homs = 0;
  int dim_two_sided_homs = 0;
  bool evaluation_lands_two_sided = false;
  bool injective = false;
  bool surjective = false;
  bool bijective() const { return injective && surjective; }
};

template <Field K>
DualityReport vector_field_duality(const Algebra<K>& alg, const DerLie<K>& der,
                                   const Subspace<K>& one_forms) {
  DualityReport rep;
  const int d = der.dim();
  const int t = one_forms.dim();
  rep.dim_derivations = d;
  rep.dim_one_forms = t;
  // actions of basis elements on the one-form space, in its own basis
  std::vector<Matrix<K>> lact(alg.dim, Matrix<K>(t, t)), ract(alg.dim, Matrix<K>(t, t));
  for (int j = 0; j < alg.dim; ++j)
    for (int i = 0; i < t; ++i) {
      const Cochain<K> omega = cochain_from_flat(alg, der, 1, one_forms.basis_vector(i));
      const auto lc =
          one_forms.coordinates(cochain_act(alg.basis_element(j), omega, Side::left).flatten());
      const auto rc =
          one_forms.coordinates(cochain_act(alg.basis_element(j), omega, Side::right).flatten());
      if (!lc || !rc) throw std::logic_error("O^1 A is not closed under the bimodule actions");
      for (int r = 0; r < t; ++r) {
        lact[j](r, i) = (*lc)[r];
        ract[j](r, i) = (*rc)[r];
      }
    }
  // F(a w) = a F(w) resp. F(w a) = F(w) a on the matrix F : one-forms -> A
  Matrix<K> lcond(0, alg.dim * t), rcond(0, alg.dim * t);
  for (int j = 0; j < alg.dim; ++j) {
    lcond = vstack(lcond, kron(Matrix<K>::identity(alg.dim), lact[j].transpose()) -
                              kron(alg.left_mult_matrix(alg.basis_element(j)),
                                   Matrix<K>::identity(t)));
    rcond = vstack(rcond, kron(Matrix<K>::identity(alg.dim), ract[j].transpose()) -
                              kron(alg.right_mult_matrix(alg.basis_element(j)),
                                   Matrix<K>::identity(t)));
  }
  const Subspace<K> lhoms = kernel(lcond);
  const Subspace<K> rhoms = kernel(rcond);
  const Subspace<K> homs = intersect(lhoms, rhoms);
  rep.dim_left_linear_homs = lhoms.dim();
  rep.dim_right_linear_homs = rhoms.dim();
  rep.dim_two_sided_homs = homs.dim();
  // evaluation matrices
  std::vector<Vec<K>> eval_rows;
  bool lands = true;
  for (int s = 0; s < d; ++s) {
    Matrix<K> e(alg.dim, t);
    for (int i = 0; i < t; ++i) {
      const Cochain<K> omega = cochain_from_flat(alg, der, 1, one_forms.basis_vector(i));
      const Vec<K> v = omega.value(std::vector<int>{s});
      for (int r = 0; r < alg.dim; ++r) e(r, i) = v[r];
    }
    if (!homs.contains(e.entries())) lands = false;
    eval_rows.push_back(e.entries());
  }
  rep.evaluation_lands_two_sided = lands;
  const Subspace<K> image = Subspace<K>::from_rows(alg.dim * t, eval_rows);
  rep.injective = (image.dim() == d);
  rep.surjective = lands && (image.dim() == homs.dim());
  return rep;
}

/// O^1 A packaged as a bimodule, together with the universal differential
/// d : A -> O^1 A in its basis. This is the default first-degree calculus fed
/// to the Cartan pair construction.
template <Field K>
struct OneFormModule {
  Bimodule<K> module;
  Matrix<K> d;  // dim(O^1 A) x dim(A)
};

template <Field K>
OneFormModule<K> one_form_module(const Algebra<K>& alg, const DerLie<K>& der,
                                 const Subspace<K>& one_forms) {
  const int t = one_forms.dim();
  OneFormModule<K> out;
  out.module.alg = &alg;
  out.module.dim = t;
  for (int j = 0; j < alg.dim; ++j) {
    Matrix<K> lm(t, t), rm(t, t);
    for (int i = 0; i < t; ++i) {
      const Cochain<K> omega = cochain_from_flat(alg, der, 1, one_forms.basis_vector(i));
      const auto lc =
          one_forms.coordinates(cochain_act(alg.basis_element(j), omega, Side::left).flatten());
      const auto rc =
          one_forms.coordinates(cochain_act(alg.basis_element(j), omega, Side::right).flatten());
      if (!lc || !rc) throw std::logic_error("O^1 A is not closed under the bimodule actions");
      for (int r = 0; r < t; ++r) {
        lm(r, i) = (*lc)[r];
        rm(r, i) = (*rc)[r];
      }
    }
    out.module.left.push_back(std::move(lm));
    out.module.right.push_back(std::move(rm));
  }
  out.d = Matrix<K>(t, alg.dim);
  for (int j = 0; j < alg.dim; ++j) {
    const auto coords =
        one_forms.coordinates(universal_differential(alg, der, alg.basis_element(j)).flatten());
    if (!coords) throw std::logic_error("d(basis element) fell outside O^1 A");
    for (int r = 0; r < t; ++r) out.d(r, j) = (*coords)[r];
  }
  return out;
}

}  // namespace ncdiff
