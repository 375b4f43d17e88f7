#include <doctest.h>

#include "qcurve/errors.hpp"
#include "qcurve/wkb.hpp"

using namespace qcurve;

namespace {

Rational at(const RatFuncQ& f, const Rational& t) { return f.substitute("t", t).constant_value(); }

}  // namespace

TEST_CASE("spectral curve and blow-up identities") {
  const SpectralReport r = spectral_param_check();
  CHECK(r.ok);
  CHECK(r.identities.size() == 2);
  CHECK(at(x_of_t(), 2) == Rational(Integer(10), Integer(3)));
  CHECK(at(z_of_t(), 2) == 3);
  CHECK(at(u_of_t(), 1) == 0);
  CHECK(at(w1_of_t(), 1) == 0);
  const RatFuncQ z = z_of_t(), x = x_of_t();
  CHECK((z * z - x * z + RatFuncQ::constant({"t"}, Rational(1))).is_zero());
}

TEST_CASE("principal specialization") {
  const DiagonalLevel f11 = principal_specialization(1, 1);
  REQUIRE(f11.value);
  CHECK(at(*f11.value, 1) == Rational(Integer(1), Integer(12)));
  const DiagonalLevel f01 = principal_specialization(0, 1);
  CHECK_FALSE(f01.value);
  CHECK(ratfunc_equal(f01.dx, -z_of_t()));
  CHECK_FALSE(principal_specialization(0, 2).value);
  const DiagonalLevel f03 = principal_specialization(0, 3);
  REQUIRE(f03.value);
  CHECK(at(*f03.value, 1) == -1);
  CHECK_THROWS_AS(principal_specialization(0, 0), DependencyError);
}

TEST_CASE("semiclassical level") {
  const auto s = wkb_derivatives(1);
  CHECK(ratfunc_equal(s[0], -z_of_t()));
  CHECK(wkb_verify(0).ok);
}

TEST_CASE("riccati residual vanishes identically") {
  const auto res = wkb_residual(4);
  REQUIRE(res.size() == 5);
  for (const auto& r : res) CHECK(r.is_zero());
  const WkbReport rep = wkb_verify(3);
  CHECK(rep.ok);
  CHECK(rep.orders.size() == 4);
}

TEST_CASE("fault injection has teeth") {
  WkbOptions fault;
  fault.f11_scale = 2;
  const auto res = wkb_residual(3, fault);
  // F11 sits at level 2, so orders 0 and 1 stay clean
  CHECK(res[0].is_zero());
  CHECK(res[1].is_zero());
  CHECK_FALSE(res[2].is_zero());
  CHECK_FALSE(wkb_verify(2, fault).ok);
}

TEST_CASE("constant shift of the stable levels cancels") {
  WkbOptions shift;
  shift.constant_shift = Rational(Integer(7), Integer(5));
  for (const auto& r : wkb_residual(3, shift)) CHECK(r.is_zero());
}
