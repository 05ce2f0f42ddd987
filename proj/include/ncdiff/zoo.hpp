#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncdiff/algebra.hpp"

namespace ncdiff {

/// Built-in example algebras with fixed bases, so that values in tests and
/// docs are reproducible.
inline const std::vector<std::string>& zoo_names() {
  static const std::vector<std::string> names = {"Q",  "dual", "trunc3", "trunc4",
                                                 "m2", "quat", "ut2",    "gs3"};
  return names;
}

namespace detail {

template <Field K>
Algebra<K> make_algebra(std::string name, std::vector<std::string> labels,
                        std::vector<int> unit_coeffs,
                        const std::vector<std::vector<std::vector<int>>>& table) {
  Algebra<K> a;
  a.name = std::move(name);
  a.dim = static_cast<int>(labels.size());
  a.basis_labels = std::move(labels);
  a.unit.assign(a.dim, K(0));
  for (int i = 0; i < a.dim; ++i) a.unit[i] = K(unit_coeffs[i]);
  a.mul.assign(a.dim, std::vector<Vec<K>>(a.dim, zero_vec<K>(a.dim)));
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      for (int k = 0; k < a.dim; ++k) a.mul[i][j][k] = K(table[i][j][k]);
  return a;
}

/// Truncated polynomial ring K[x]/x^n with basis 1, x, ..., x^{n-1}.
template <Field K>
Algebra<K> truncated_poly(const std::string& name, int n) {
  Algebra<K> a;
  a.name = name;
  a.dim = n;
  for (int i = 0; i < n; ++i) a.basis_labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x" + std::to_string(i)));
  a.unit = unit_vec<K>(n, 0);
  a.mul.assign(n, std::vector<Vec<K>>(n, zero_vec<K>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j < n) a.mul[i][j][i + j] = K(1);
  return a;
}

/// Matrix units E11, E12, E21, E22.
template <Field K>
Algebra<K> m2() {
  Algebra<K> a;
  a.name = "m2";
  a.dim = 4;
  a.basis_labels = {"E11", "E12", "E21", "E22"};
  a.unit = zero_vec<K>(4);
  a.unit[0] = K(1);
  a.unit[3] = K(1);
  a.mul.assign(4, std::vector<Vec<K>>(4, zero_vec<K>(4)));
  auto idx = [](int r, int c) { return 2 * r + c; };
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
          if (q == r) a.mul[idx(p, q)][idx(r, s)][idx(p, s)] = K(1);
  return a;
}

template <Field K>
Algebra<K> quaternions() {
  // 1, i, j, k with i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j.
  Algebra<K> a;
  a.name = "quat";
  a.dim = 4;
  a.basis_labels = {"1", "i", "j", "k"};
  a.unit = unit_vec<K>(4, 0);
  a.mul.assign(4, std::vector<Vec<K>>(4, zero_vec<K>(4)));
  auto set = [&](int i, int j, int k, int sign) { a.mul[i][j][k] = K(sign); };
  for (int i = 0; i < 4; ++i) {
    set(0, i, i, 1);
    if (i != 0) set(i, 0, i, 1);
  }
  set(1, 1, 0, -1);
  set(2, 2, 0, -1);
  set(3, 3, 0, -1);
  set(1, 2, 3, 1);
  set(2, 1, 3, -1);
  set(2, 3, 1, 1);
  set(3, 2, 1, -1);
  set(3, 1, 2, 1);
  set(1, 3, 2, -1);
  return a;
}

template <Field K>
Algebra<K> upper_triangular2() {
  // E11, E12, E22.
  Algebra<K> a;
  a.name = "ut2";
  a.dim = 3;
  a.basis_labels = {"E11", "E12", "E22"};
  a.unit = zero_vec<K>(3);
  a.unit[0] = K(1);
  a.unit[2] = K(1);
  a.mul.assign(3, std::vector<Vec<K>>(3, zero_vec<K>(3)));
  a.mul[0][0][0] = K(1);  // E11 E11
  a.mul[0][1][1] = K(1);  // E11 E12
  a.mul[1][2][1] = K(1);  // E12 E22
  a.mul[2][2][2] = K(1);  // E22 E22
  return a;
}

/// Group algebra of S3; basis ordered e, (12), (13), (23), (123), (132),
/// composition acting left-to-right on points: (s*t)(x) = s(t(x)).
template <Field K>
Algebra<K> group_algebra_s3() {
  // one-line notation sigma(1) sigma(2) sigma(3)
  const std::array<std::array<int, 3>, 6> perms = {{{1, 2, 3},
                                                    {2, 1, 3},    // (12)
                                                    {3, 2, 1},    // (13)
                                                    {1, 3, 2},    // (23)
                                                    {2, 3, 1},    // (123)
                                                    {3, 1, 2}}};  // (132)
  const std::array<std::string, 6> labels = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
  auto compose = [&](int s, int t) {
    std::array<int, 3> st{};
    for (int x = 0; x < 3; ++x) st[x] = perms[s][perms[t][x] - 1];
    for (int g = 0; g < 6; ++g)
      if (perms[g] == st) return g;
    throw std::logic_error("S3 composition table broken");
  };
  Algebra<K> a;
  a.name = "gs3";
  a.dim = 6;
  a.basis_labels.assign(labels.begin(), labels.end());
  a.unit = unit_vec<K>(6, 0);
  a.mul.assign(6, std::vector<Vec<K>>(6, zero_vec<K>(6)));
  for (int s = 0; s < 6; ++s)
    for (int t = 0; t < 6; ++t) a.mul[s][t][compose(s, t)] = K(1);
  return a;
}

}  // namespace detail

template <Field K>
Algebra<K> zoo(const std::string& name) {
  Algebra<K> a;
  if (name == "Q") {
    a = detail::make_algebra<K>("Q", {"1"}, {1}, {{{1}}});
  } else if (name == "dual") {
    a = detail::make_algebra<K>("dual", {"1", "eps"}, {1, 0},
                                {{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}});
  } else if (name == "trunc3") {
    a = detail::truncated_poly<K>("trunc3", 3);
  } else if (name == "trunc4") {
    a = detail::truncated_poly<K>("trunc4", 4);
  } else if (name == "m2") {
    a = detail::m2<K>();
  } else if (name == "quat") {
    a = detail::quaternions<K>();
  } else if (name == "ut2") {
    a = detail::upper_triangular2<K>();
  } else if (name == "gs3") {
    a = detail::group_algebra_s3<K>();
  } else {
    throw std::invalid_argument("unknown zoo algebra '" + name + "'");
  }
  const ValidationReport r = a.validate();
  if (!r.ok) throw std::logic_error("zoo algebra '" + name + "' is invalid: " + r.message);
  return a;
}

}  // namespace ncdiff
