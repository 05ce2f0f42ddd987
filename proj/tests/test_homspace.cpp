#include <catch2/catch_amalgamated.hpp>

#include "ncdiff/verify.hpp"
#include "test_helpers.hpp"

using namespace ncdiff;
using K = Rational;
using ncdiff::testing::RegularFixture;

TEST_CASE("the unit acts as the identity in all four structures") {
  RegularFixture<K> f("m2");
  Rng rng(1);
  const LinearMap<K> phi = f.hs.map_from_vec(rng.small_vec<K>(f.hs.dim()));
  for (const HomAction w : {HomAction::a_phi, HomAction::phi_bullet_a, HomAction::phi_a,
                            HomAction::a_bullet_phi})
    CHECK(act(f.alg.unit, phi, w) == phi);
}

TEST_CASE("left action on the identity map is the left multiplication matrix") {
  RegularFixture<K> f("dual");
  const LinearMap<K> id = f.hs.map_from_matrix(Matrix<K>::identity(2));
  const Vec<K> eps = unit_vec<K>(2, 1);
  CHECK(act(eps, id, HomAction::a_phi).mat == f.alg.left_mult_matrix(eps));
}

TEST_CASE("left and right actions differ on m2") {
  RegularFixture<K> f("m2");
  const LinearMap<K> id = f.hs.map_from_matrix(Matrix<K>::identity(4));
  const Vec<K> e11 = unit_vec<K>(4, 0);
  CHECK_FALSE(act(e11, id, HomAction::a_phi) == act(e11, id, HomAction::phi_a));
}

TEST_CASE("delta examples") {
  RegularFixture<K> f("dual");
  Rng rng(4);
  const LinearMap<K> phi = f.hs.map_from_vec(rng.small_vec<K>(4));
  CHECK(delta(f.alg.unit, phi).is_zero());
  const LinearMap<K> id = f.hs.map_from_matrix(Matrix<K>::identity(2));
  for (int i = 0; i < 2; ++i) CHECK(delta(f.alg.basis_element(i), id).is_zero());
  // E : 1 -> 0, eps -> 1;   delta_eps E : 1 -> -1, eps -> eps
  Matrix<K> e(2, 2);
  e(0, 1) = K(1);
  Matrix<K> expected(2, 2);
  expected(0, 0) = K(-1);
  expected(1, 1) = K(1);
  CHECK(delta(unit_vec<K>(2, 1), f.hs.map_from_matrix(e)).mat == expected);
}

TEST_CASE("delta_bar examples") {
  RegularFixture<K> f("m2");
  Rng rng(9);
  const LinearMap<K> phi = f.hs.map_from_vec(rng.small_vec<K>(16));
  CHECK(delta_bar(f.alg.unit, phi).is_zero());
  const LinearMap<K> id = f.hs.map_from_matrix(Matrix<K>::identity(4));
  for (int i = 0; i < 4; ++i) CHECK(delta_bar(f.alg.basis_element(i), id).is_zero());
}

TEST_CASE("delta equals delta_bar over a commutative algebra") {
  RegularFixture<K> f("dual");
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    const LinearMap<K> phi = f.hs.map_from_vec(rng.small_vec<K>(4));
    const Vec<K> a = rng.small_vec<K>(2);
    CHECK(delta(a, phi) == delta_bar(a, phi));
  }
}

TEST_CASE("delta and delta_bar commute") {
  for (const auto& name : {"dual", "m2", "ut2"}) {
    RegularFixture<K> f(name);
    for (std::size_t i = 0; i < f.hs.op_delta.size(); ++i)
      for (std::size_t j = 0; j < f.hs.op_delta_bar.size(); ++j)
        CHECK(f.hs.op_delta[i] * f.hs.op_delta_bar[j] ==
              f.hs.op_delta_bar[j] * f.hs.op_delta[i]);
  }
}

TEST_CASE("module axioms of the four actions") {
  for (const auto& name : {"dual", "m2"}) {
    const Algebra<K> a = zoo<K>(name);
    const Bimodule<K> reg = regular(a);
    const VerifyContext<K> ctx(a, reg);
    Rng rng(0);
    CHECK(check_hom_module_axioms(ctx, rng).status == Check::Status::pass);
  }
}

TEST_CASE("composition chains shapes") {
  RegularFixture<K> f("ut2");
  Rng rng(8);
  const LinearMap<K> g = f.hs.map_from_vec(rng.small_vec<K>(9));
  const LinearMap<K> h = f.hs.map_from_vec(rng.small_vec<K>(9));
  const LinearMap<K> gh = compose(g, h);
  const Vec<K> p = rng.small_vec<K>(3);
  CHECK(gh.apply(p) == g.apply(h.apply(p)));
}
