#include <doctest.h>

#include "qcurve/errors.hpp"
#include "qcurve/opercheck.hpp"

using namespace qcurve;

namespace {

PolyQ zpoly(std::vector<Rational> coeffs) {
  PolyQ p({"z"});
  for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term({static_cast<int>(k)}, coeffs[k]);
  return p;
}

}  // namespace

TEST_CASE("charts") {
  const MobiusChart id = MobiusChart::identity();
  CHECK(cocycle_check(id, id, 1).ok);
  MobiusChart bad{2, 0, 0, 1, 1};
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
  CHECK_THROWS_AS(cocycle_check(bad, id, 1), PreconditionError);
  for (std::uint64_t s = 0; s < 30; ++s) {
    const MobiusChart c = random_chart(derive_seed(42, s));
    CHECK(c.a * c.d - c.b * c.c == 1);
    // xi^2 = dz_beta/dz_alpha
    const RatFuncQ xi = spin_xi(c);
    CHECK(ratfunc_equal(xi * xi, mobius_map(c).derivative("z").inverse()));
    const auto g = transition_hbar(c, Rational(Integer(3), Integer(7)));
    CHECK((g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)) == RatFuncQ::constant({"z"}, Rational(1)));
    CHECK(transition_hbar(c, 0)(0, 1).is_zero());
  }
}

TEST_CASE("cocycle with every consistent sign and one inconsistent") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    MobiusChart ab = random_chart(derive_seed(7, 2 * s));
    MobiusChart bg = random_chart(derive_seed(7, 2 * s + 1));
    for (int e1 : {1, -1})
      for (int e2 : {1, -1}) {
        ab.eps = e1;
        bg.eps = e2;
        CHECK(cocycle_check(ab, bg, Rational(Integer(2), Integer(5))).ok);
        CHECK(cocycle_check(ab, bg, 1).ok);
      }
    ab.eps = 1;
    bg.eps = -1;
    CHECK_FALSE(cocycle_check(ab, bg, 1, 1).ok);
  }
}

TEST_CASE("gauge law") {
  const MobiusChart id = MobiusChart::identity();
  CHECK(gauge_law_check(id, zpoly({0, 0, 0, 1}), 1).ok);
  CHECK_THROWS_AS(gauge_law_check(id, zpoly({1}), 0), UsageError);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const MobiusChart c = random_chart(derive_seed(11, s));
    CHECK(gauge_law_check(c, zpoly({0, 0, 0, 1}), 1).ok);
    CHECK(gauge_law_check(c, random_poly(derive_seed(12, s), 4), Rational(Integer(-3), Integer(2))).ok);
    GaugeOptions fault;
    fault.second_derivative_fault = 1;
    CHECK_FALSE(gauge_law_check(c, zpoly({0, 0, 0, 1}), 1, fault).ok);
  }
}

TEST_CASE("hitchin transition") {
  CHECK(hitchin_transition_check(MobiusChart::identity(), zpoly({1, 0, 1})).ok);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const MobiusChart c = random_chart(derive_seed(13, s));
    CHECK(hitchin_transition_check(c, PolyQ({"z"})).ok);
    CHECK(hitchin_transition_check(c, zpoly({1, 0, 1})).ok);
  }
}

TEST_CASE("scaling limit and flat family") {
  for (const PolyQ& q : {zpoly({}), zpoly({0, 1}), zpoly({0, 0, 1})}) {
    CHECK(gaiotto_limit_check(q).ok);
    GaiottoOptions wrong;
    wrong.square_metric = true;
    CHECK_FALSE(gaiotto_limit_check(q, wrong).ok);
    CHECK(flat_family_check(q).ok);
  }
  const PolyQ zero({"z"});
  FlatOptions doubled;
  doubled.scale = 2;
  CHECK_FALSE(flat_family_check(zero, doubled).ok);
  FlatOptions slice;
  slice.specialize = true;
  CHECK(flat_family_check(zero, slice).ok);
}

TEST_CASE("kostant triple") {
  const TdsResult r2 = kostant_tds(2);
  CHECK(r2.report.ok);
  const SqrtRingElem one(2, 1), zero(2, 0);
  CHECK(r2.triple.x_plus(0, 1) == one);
  CHECK(r2.triple.x_plus(1, 0) == zero);
  CHECK(r2.triple.x_minus(1, 0) == one);
  CHECK(r2.triple.h(0, 0) == one);
  CHECK(r2.triple.h(1, 1) == SqrtRingElem(2, -1));
  const TdsResult r3 = kostant_tds(3);
  CHECK(r3.report.ok);
  CHECK(r3.triple.h(0, 0) == SqrtRingElem(3, 2));
  CHECK(r3.triple.h(1, 1) == SqrtRingElem(3, 0));
  CHECK(r3.triple.h(2, 2) == SqrtRingElem(3, -2));
  for (int r = 2; r <= 8; ++r) {
    const TdsResult t = kostant_tds(r);
    CHECK(t.report.ok);
    CHECK(t.triple.x_minus == t.triple.x_plus.transpose());
  }
  CHECK_THROWS_AS(kostant_tds(1), UsageError);
}

TEST_CASE("suite is deterministic in the seed") {
  OperSuiteOptions o;
  o.trials = 6;
  o.max_rank = 4;
  const auto a = run_oper_suite(o), b = run_oper_suite(o);
  CHECK(a.ok);
  CHECK(a.tallies == b.tallies);
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
}
