#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"

using namespace ncdiff;
using K = Rational;

TEST_CASE("regular action examples") {
  const Algebra<K> dual = zoo<K>("dual");
  const Bimodule<K> reg = regular(dual);
  // act(eps, 1, left) = eps
  CHECK(reg.act(unit_vec<K>(2, 1), unit_vec<K>(2, 0), Side::left) == unit_vec<K>(2, 1));
  Rng rng(2);
  for (int t = 0; t < 5; ++t) {
    const Vec<K> p = rng.small_vec<K>(2);
    CHECK(reg.act(dual.unit, p, Side::left) == p);
    CHECK(reg.act(dual.unit, p, Side::right) == p);
  }
  const Algebra<K> m2 = zoo<K>("m2");
  const Bimodule<K> regm2 = regular(m2);
  // E11 . E22 = 0
  CHECK(is_zero_vec(regm2.act(unit_vec<K>(4, 0), unit_vec<K>(4, 3), Side::left)));
}

TEST_CASE("regular bimodules validate for every zoo algebra") {
  for (const auto& name : zoo_names()) {
    const Algebra<K> a = zoo<K>(name);
    const Bimodule<K> reg = regular(a);
    const auto r = reg.validate();
    INFO(name << ": " << r.message);
    CHECK(r.ok);
  }
}

TEST_CASE("unit of the regular bimodule") {
  const Algebra<K> a = zoo<K>("quat");
  const Bimodule<K> reg = regular(a);
  Rng rng(3);
  for (int t = 0; t < 8; ++t) {
    const Vec<K> x = rng.small_vec<K>(4);
    CHECK(reg.act(x, a.unit, Side::left) == x);
    CHECK(reg.act(x, a.unit, Side::right) == x);
  }
}

TEST_CASE("regular bimodule of the base field") {
  const Algebra<K> q = zoo<K>("Q");
  const Bimodule<K> reg = regular(q);
  CHECK(reg.dim == 1);
  CHECK(reg.left[0] == Matrix<K>::identity(1));
  CHECK(reg.right[0] == Matrix<K>::identity(1));
}

TEST_CASE("left and right multiplication differ on noncommutative algebras") {
  const Algebra<K> m2 = zoo<K>("m2");
  const Bimodule<K> reg = regular(m2);
  bool some_differ = false;
  for (int i = 0; i < 4; ++i)
    if (reg.left[i] != reg.right[i]) some_differ = true;
  CHECK(some_differ);
}

TEST_CASE("right action replaced by left action fails validation") {
  const Algebra<K> m2 = zoo<K>("m2");
  Bimodule<K> broken = regular(m2);
  broken.right = broken.left;
  const auto r = broken.validate();
  CHECK_FALSE(r.ok);
  CHECK(r.message.find("anti-homomorphism") != std::string::npos);
}

TEST_CASE("direct sums of valid bimodules are valid") {
  const Algebra<K> ut2 = zoo<K>("ut2");
  const Bimodule<K> reg = regular(ut2);
  const Bimodule<K> sum = direct_sum(reg, reg);
  CHECK(sum.dim == 6);
  CHECK(sum.validate().ok);
}

TEST_CASE("twisting by an inner automorphism keeps centrality") {
  const Algebra<K> m2 = zoo<K>("m2");
  Vec<K> g = zero_vec<K>(4);
  g[0] = K(1);
  g[3] = K(2);  // diag(1,2)
  const Matrix<K> sigma = conjugation_automorphism(m2, g);
  CHECK(sigma != Matrix<K>::identity(4));
  const Bimodule<K> tw = twisted_regular(m2, sigma);
  CHECK(tw.validate().ok);
}

TEST_CASE("twisting a commutative algebra breaks centrality") {
  const Algebra<K> dual = zoo<K>("dual");
  Matrix<K> sigma = Matrix<K>::identity(2);
  sigma(1, 1) = K(2);  // eps -> 2 eps, a genuine automorphism
  const Bimodule<K> tw = twisted_regular(dual, sigma);
  const auto r = tw.validate();
  CHECK_FALSE(r.ok);
  CHECK(r.message.find("centrality") != std::string::npos);
}

TEST_CASE("non-automorphism twists are rejected") {
  const Algebra<K> dual = zoo<K>("dual");
  Matrix<K> bad = Matrix<K>::identity(2);
  bad(0, 1) = K(1);  // eps -> 1 + eps does not fix the relation eps^2 = 0
  CHECK_THROWS_AS(twisted_regular(dual, bad), std::invalid_argument);
  Vec<K> eps = unit_vec<K>(2, 1);
  CHECK_THROWS_AS(conjugation_automorphism(dual, eps), std::invalid_argument);
}
