#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"

using namespace ncdiff;
using K = Rational;

TEST_CASE("defining products") {
  const Algebra<K> quat = zoo<K>("quat");
  // i * j = k
  CHECK(quat.multiply(unit_vec<K>(4, 1), unit_vec<K>(4, 2)) == unit_vec<K>(4, 3));
  // j * i = -k
  CHECK(quat.multiply(unit_vec<K>(4, 2), unit_vec<K>(4, 1)) == vec_scale(K(-1), unit_vec<K>(4, 3)));
  const Algebra<K> dual = zoo<K>("dual");
  CHECK(is_zero_vec(dual.multiply(unit_vec<K>(2, 1), unit_vec<K>(2, 1))));
  const Algebra<K> m2 = zoo<K>("m2");
  CHECK(m2.multiply(unit_vec<K>(4, 0), unit_vec<K>(4, 1)) == unit_vec<K>(4, 1));  // E11 E12 = E12
  CHECK(is_zero_vec(m2.multiply(unit_vec<K>(4, 1), unit_vec<K>(4, 1))));          // E12 E12 = 0
}

TEST_CASE("every zoo algebra validates") {
  for (const auto& name : zoo_names()) {
    const Algebra<K> a = zoo<K>(name);
    const auto r = a.validate();
    INFO(name << ": " << r.message);
    CHECK(r.ok);
  }
}

TEST_CASE("commutativity flags") {
  for (const auto& name : zoo_names()) {
    const bool expected = name == "Q" || name == "dual" || name == "trunc3" || name == "trunc4";
    CHECK(zoo<K>(name).is_commutative() == expected);
  }
}

TEST_CASE("center dimensions") {
  CHECK(zoo<K>("dual").center().dim() == 2);
  CHECK(zoo<K>("m2").center().dim() == 1);
  CHECK(zoo<K>("quat").center().dim() == 1);
  CHECK(zoo<K>("gs3").center().dim() == 3);
  CHECK(zoo<K>("ut2").center().dim() == 1);
}

TEST_CASE("center contains the unit and is closed under multiplication") {
  for (const auto& name : zoo_names()) {
    const Algebra<K> a = zoo<K>(name);
    const Subspace<K> z = a.center();
    CHECK(z.contains(a.unit));
    for (int i = 0; i < z.dim(); ++i)
      for (int j = 0; j < z.dim(); ++j)
        CHECK(z.contains(a.multiply(z.basis_vector(i), z.basis_vector(j))));
  }
}

TEST_CASE("gs3 center is spanned by class sums") {
  const Algebra<K> a = zoo<K>("gs3");
  const Subspace<K> z = a.center();
  Vec<K> transpositions = zero_vec<K>(6);
  transpositions[1] = transpositions[2] = transpositions[3] = K(1);
  Vec<K> threecycles = zero_vec<K>(6);
  threecycles[4] = threecycles[5] = K(1);
  CHECK(z.contains(a.basis_element(0)));
  CHECK(z.contains(transpositions));
  CHECK(z.contains(threecycles));
}

TEST_CASE("perturbed multiplication table fails validation with the triple named") {
  Algebra<K> a = zoo<K>("m2");
  a.mul[1][2][1] = a.mul[1][2][1] + K(1);  // E12 E21 := E11 + E12
  const auto r = a.validate();
  CHECK_FALSE(r.ok);
  CHECK(r.message.find("associativity") != std::string::npos);
}

TEST_CASE("one-dimensional algebra") {
  const Algebra<K> q = zoo<K>("Q");
  CHECK(q.validate().ok);
  CHECK(q.dim == 1);
  CHECK(q.center().dim() == 1);
}

TEST_CASE("unknown zoo name") { CHECK_THROWS_AS(zoo<K>("nope"), std::invalid_argument); }

TEST_CASE("left and right multiplication matrices") {
  const Algebra<K> a = zoo<K>("ut2");
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const Vec<K> x = rng.small_vec<K>(3), y = rng.small_vec<K>(3);
    CHECK(a.left_mult_matrix(x).apply(y) == a.multiply(x, y));
    CHECK(a.right_mult_matrix(x).apply(y) == a.multiply(y, x));
  }
}

TEST_CASE("zoo over a prime field") {
  FpContext ctx(7);
  const Algebra<Fp> m2 = zoo<Fp>("m2");
  CHECK(m2.validate().ok);
  CHECK(m2.center().dim() == 1);
  const Algebra<Fp> quat = zoo<Fp>("quat");
  CHECK(quat.validate().ok);
}
