#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "paraferm/algebra.hpp"

using namespace paraferm;

TEST_CASE("osp(1|2) has the expected shape") {
  auto A = LieSuperalgebra::build_osp(1);
  CHECK(A->dim() == 5);
  CHECK(A->rank() == 1);
  CHECK(A->super_dim() == 1);   // n(2n-1)
  CHECK(A->dual_coxeter() == rat(3, 2));
  const auto& rd = A->root_datum();
  CHECK(rd.count(RootClass::EvenLong) == 2);
  CHECK(rd.count(RootClass::EvenShort) == 0);
  CHECK(rd.count(RootClass::Odd) == 2);
  CHECK(rd.highest_root == RootVec{2});
}

TEST_CASE("osp(1|4) and osp(1|6) validate every relation") {
  for (int n : {2, 3}) {
    auto A = LieSuperalgebra::build_osp(n);
    CHECK(A->dim() == 2 * n * n + 3 * n);
    CHECK(A->super_dim() == n * (2 * n - 1));
    auto rep = A->validate();
    INFO(rep.summary());
    CHECK(rep.all_pass());
    const auto& rd = A->root_datum();
    CHECK(rd.count(RootClass::EvenLong) == 2 * n);
    CHECK(rd.count(RootClass::EvenShort) == 2 * n * (n - 1));
    CHECK(rd.count(RootClass::Odd) == 2 * n);
  }
}

TEST_CASE("rank-1 relations around the highest root") {
  auto A = LieSuperalgebra::build_osp(2);
  const auto& rd = A->root_datum();
  const auto& cd = A->root_generators(rd.highest_root);
  REQUIRE(cd.has_odd_pair);
  auto e = A->element(cd.e_plus);
  auto f = A->element(cd.e_minus);
  auto xp = A->element(cd.x_plus);
  auto xm = A->element(cd.x_minus);

  // [e,f] = h, [h,e] = 2e, [h,f] = -2f
  auto h = A->bracket(e, f);
  CHECK(h.coeff == cd.coroot.coeff);
  auto he = A->bracket(h, e);
  CHECK(he.coeff == e.scaled(2).coeff);
  CHECK(A->bracket(h, f).coeff == f.scaled(-2).coeff);

  // odd pair: {x,x} = 2e, {x,-x-} relations, [h,x] = x
  CHECK(A->bracket(xp, xp).coeff == e.scaled(2).coeff);
  CHECK(A->bracket(xm, xm).coeff == f.scaled(-2).coeff);
  CHECK(A->bracket(xp, xm).coeff == h.coeff);
  CHECK(A->bracket(h, xp).coeff == xp.coeff);
  CHECK(A->bracket(e, xp).is_zero());
  CHECK(A->bracket(f, xp).coeff == xm.scaled(-1).coeff);
  CHECK(A->bracket(e, xm).coeff == xp.scaled(-1).coeff);
  CHECK(A->bracket(f, xm).is_zero());

  // form normalization
  CHECK(A->form(e, f) == 1);
  CHECK(A->form(xp, xm) == 2);
  CHECK(A->form(xm, xp) == -2);
  CHECK(A->form(h, h) == 2);
}

TEST_CASE("short roots of osp(1|4) close correctly") {
  auto A = LieSuperalgebra::build_osp(2);
  RootVec beta{1, -1};
  const auto& cd = A->root_generators(beta);
  CHECK(!cd.has_odd_pair);
  auto e = A->element(cd.e_plus);
  auto f = A->element(cd.e_minus);
  auto h = A->bracket(e, f);
  CHECK(h.coeff == cd.coroot.coeff);
  CHECK(A->bracket(h, e).coeff == e.scaled(2).coeff);
  CHECK(A->form(e, f) == 2);   // <e_b, e_-b> = 2/<b,b>
}

TEST_CASE("eta flips root spaces") {
  auto A = LieSuperalgebra::build_osp(2);
  for (const auto& r : A->root_datum().roots) {
    auto [idx, c] = A->eta_basis(r.basis_index);
    CHECK(A->root_of(idx) == root_neg(r.coords));
    CHECK(!is_zero(c));
  }
  for (int hi : A->cartan()) {
    auto [idx, c] = A->eta_basis(hi);
    CHECK(idx == hi);
    CHECK(c == 1);
  }
}

TEST_CASE("classification recomputed from the Cartan action matches storage") {
  auto A = LieSuperalgebra::build_osp(2);
  auto rd = A->classify_roots();
  CHECK(rd.highest_root == A->root_datum().highest_root);
  CHECK(rd.space_of == A->root_datum().space_of);
}

TEST_CASE("sl2 reference algebra") {
  auto A = LieSuperalgebra::build_sl2();
  CHECK(A->dim() == 3);
  CHECK(A->rank() == 1);
  auto rep = A->validate();
  INFO(rep.summary());
  CHECK(rep.all_pass());
  const auto& cd = A->root_generators(A->root_datum().highest_root);
  CHECK(!cd.has_odd_pair);
  CHECK(A->form(A->element(cd.e_plus), A->element(cd.e_minus)) == 1);
}

TEST_CASE("validation report carries witnesses for injected faults") {
  auto A = LieSuperalgebra::build_osp(1);
  REQUIRE(A->validate().all_pass());
  const auto& cd = A->root_generators(A->root_datum().highest_root);
  A->debug_perturb_bracket(cd.e_plus, cd.e_minus, cd.e_plus, rat(1, 3));
  auto rep = A->validate();
  CHECK(!rep.all_pass());
  bool witnessed = false;
  for (const auto& c : rep.checks) witnessed |= (!c.pass && !c.witness.empty());
  CHECK(witnessed);
}

TEST_CASE("bad inputs are rejected") {
  CHECK_THROWS_AS(LieSuperalgebra::build_osp(0), std::invalid_argument);
  auto A = LieSuperalgebra::build_osp(1);
  auto B = LieSuperalgebra::build_sl2();
  CHECK_THROWS_AS(A->bracket(A->element(0), B->element(0)), std::invalid_argument);
  CHECK_THROWS_AS(A->element(99), std::invalid_argument);
}
