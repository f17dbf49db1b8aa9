#include <doctest.h>

#include "stieltjes/odecheck.hpp"

using namespace stieltjes;

namespace {

std::vector<Rational> rats(std::initializer_list<Rational> xs) { return xs; }

}  // namespace

TEST_CASE("residual of simple functions") {
  const Precision P = 256;
  auto one = [](const BigFloat& x) { return Jet::constant(BigFloat(1L, x.precision())); };
  const De3Residual r = de3_residual(one, BigFloat(1L, P));
  CHECK(r.residual == -4L);

  // u = x: residual = (7x^2 - 112x + 1) + (x - 5) x
  auto ident = [](const BigFloat& x) { return Jet::variable(x); };
  const De3Residual s = de3_residual(ident, BigFloat(2L, P));
  CHECK(s.residual == (28L - 224L + 1L + (2L - 5L) * 2L));

  CHECK_THROWS_AS(de3_residual(one, BigFloat(0L, P)), OdeError);
}

TEST_CASE("operator coefficients") {
  const auto p = de3_coefficients();
  // The leading coefficient vanishes at 0, c0 and c.
  CHECK(p[3](QSqrt2(0)).is_zero());
  CHECK(p[3](constants::c0()).is_zero());
  CHECK(p[3](constants::c()).is_zero());
  CHECK(p[3].degree() == 4);
  CHECK(p[0].degree() == 1);
}

TEST_CASE("coefficient recurrence at 0 is the Apery recurrence") {
  const LocalOperator op = local_operator(SingularPoint::zero);
  CHECK(op.d0 == -1);
  for (long e = -5; e <= 5; ++e) {
    const QSqrt2 E(e);
    CHECK(op.at(-1)(E) == QSqrt2(e * e * e));
    CHECK(op.at(0)(E) == QSqrt2(-(34 * e * e * e + 51 * e * e + 27 * e + 5)));
    CHECK(op.at(1)(E) == QSqrt2((e + 1) * (e + 1) * (e + 1)));
  }
  CHECK(apery_streams_satisfy_operator(40));
}

TEST_CASE("indicial exponents at the singular points") {
  const IndicialData z = indicial_exponents(SingularPoint::zero);
  CHECK(z.exponents == rats({0, 0, 0}));
  CHECK(z.log_rank == 2);

  for (SingularPoint p : {SingularPoint::c0, SingularPoint::c}) {
    const IndicialData d = indicial_exponents(p);
    CHECK(d.exponents == rats({0, Rational(1, 2), 1}));
    CHECK(d.log_rank == 0);
    Rational sum = 0;
    for (const auto& r : d.exponents) sum += r;
    CHECK(sum == Rational(3, 2));
  }

  const IndicialData inf = indicial_exponents(SingularPoint::infinity);
  CHECK(inf.exponents == rats({1, 1, 1}));
  CHECK(inf.log_rank == 2);
}

TEST_CASE("local series solve the operator") {
  for (const Rational& rho : rats({0, Rational(1, 2), 1})) {
    const auto c = frobenius_series(SingularPoint::c0, rho, 15);
    for (std::size_t m = 0; m < 15; ++m) {
      CHECK(frobenius_residual(SingularPoint::c0, rho, c, m).is_zero());
    }
  }
  // At 0 the exponent 0 is a triple root: the power series part is A_n.
  const auto a = frobenius_series(SingularPoint::zero, Rational(0), 6);
  CHECK(a[1] == QSqrt2(5));
  CHECK(a[4] == QSqrt2(33001));
}

TEST_CASE("slope of the exponent-0 solution") {
  for (SingularPoint p : {SingularPoint::c0, SingularPoint::c}) {
    const SlopeCheck chk = frobenius_slope_check(p);
    // The order-1 equation degenerates, so the slope is not determined by
    // the operator: the published value and any other value are admissible.
    CHECK(chk.resonant);
    CHECK(chk.expected_admissible);
    CHECK(chk.perturbed_admissible);
    // The generic-exponent limit is exactly twice the published constant.
    CHECK(chk.computed == chk.expected * QSqrt2(2));
    CHECK_FALSE(chk.matches());
  }
  CHECK(frobenius_slope_check(SingularPoint::c0).computed ==
        -(QSqrt2(240) + QSqrt2::sqrt2() * QSqrt2(169)) / QSqrt2(24));
}
