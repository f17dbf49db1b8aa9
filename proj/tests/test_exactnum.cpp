#include <doctest.h>

#include "stieltjes/jet.hpp"
#include "stieltjes/polynomial.hpp"
#include "stieltjes/power_series.hpp"
#include "stieltjes/qsqrt2.hpp"

#include <random>

using namespace stieltjes;

namespace {

QSqrt2 random_qsqrt2(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-60, 60);
  std::uniform_int_distribution<long> den(1, 25);
  return {make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng))};
}

}  // namespace

TEST_CASE("qsqrt2 sign on the documented examples") {
  CHECK(qsqrt2_sign(constants::c()) == 1);
  CHECK(qsqrt2_sign(constants::c() * constants::c0() - QSqrt2(1)) == 0);
  CHECK(qsqrt2_sign(QSqrt2(577, -408)) == 1);
  CHECK(qsqrt2_sign(QSqrt2(-577, 408)) == -1);
  CHECK(qsqrt2_sign(QSqrt2(0, -3)) == -1);
}

TEST_CASE("constants satisfy their defining relations") {
  using namespace constants;
  CHECK(c() * c0() == QSqrt2(1));
  CHECK(a1() == QSqrt2(1) - c0() * c0());
  CHECK(a2() == c() * c());
  CHECK(q4() == c() * QSqrt2(make_rational(5, 2)));
  CHECK(pow(silver(), 4) == c());
  CHECK(c().conjugate() == c0());
}

TEST_CASE("qsqrt2 field axioms on random samples") {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 500; ++i) {
    const QSqrt2 x = random_qsqrt2(rng);
    const QSqrt2 y = random_qsqrt2(rng);
    if (x.is_zero()) continue;
    CHECK((x * y) * x.inverse() == y);
    CHECK((x + y) - y == x);
    CHECK(x / x == QSqrt2(1));
  }
}

TEST_CASE("qsqrt2 sign agrees with 200-bit floating evaluation") {
  std::mt19937_64 rng(777);
  int checked = 0;
  while (checked < 1000) {
    const QSqrt2 x = random_qsqrt2(rng);
    if (x.is_zero()) continue;
    const BigFloat v = x.to_bigfloat(200);
    CHECK(qsqrt2_sign(x) == v.sign());
    ++checked;
  }
  // A near-cancelling case where low precision would be fooled.
  CHECK(qsqrt2_sign(QSqrt2(Integer("1572584048032918633353217"), Integer("-1111984844349868137938112"))) == 1);
}

TEST_CASE("conversion to BigFloat meets the relative error contract") {
  std::mt19937_64 rng(99);
  for (Precision p : {53L, 64L, 128L, 256L}) {
    for (int i = 0; i < 200; ++i) {
      const QSqrt2 x = random_qsqrt2(rng);
      if (x.is_zero()) continue;
      const BigFloat lo = x.to_bigfloat(p);
      const BigFloat hi = x.to_bigfloat(p + 64);
      const BigFloat err = abs(BigFloat(lo, p + 64) - hi);
      CHECK(err <= ldexp(abs(hi), 1 - static_cast<long>(p)));
    }
    // c0 = 17 - 12 sqrt2 cancels heavily in the naive formula.
    const QSqrt2 c0p = pow(constants::c0(), 6);
    const BigFloat lo = c0p.to_bigfloat(p);
    const BigFloat hi = c0p.to_bigfloat(p + 64);
    CHECK(abs(BigFloat(lo, p + 64) - hi) <= ldexp(abs(hi), 1 - static_cast<long>(p)));
  }
}

TEST_CASE("power series arithmetic") {
  const std::size_t n = 20;
  using S = PowerSeries<Rational>;
  S one_minus_q = S::one(n) - S::monomial(1, n);
  S geom(n);
  for (std::size_t k = 0; k < n; ++k) geom[k] = 1;
  CHECK(one_minus_q * geom == S::one(n));
  CHECK(S::one(n) / one_minus_q == geom);

  SUBCASE("cube root follows the binomial series") {
    S f = S::one(n) + S::monomial(1, n, Rational(15));
    S r = f.nth_root(3);
    CHECK(r[0] == 1);
    CHECK(r[1] == 5);
    // (1+15q)^(1/3): second coefficient is C(1/3,2)*225 = -25.
    CHECK(r[2] == -25);
    CHECK(r * r * r == f);
  }

  SUBCASE("root of a perfect-power constant term") {
    S f = S::one(n) * Rational(8);
    f[1] = 12;
    S r = f.nth_root(3);
    CHECK(r[0] == 2);
    CHECK(r * r * r == f);
    S bad = S::one(n) * Rational(2);
    CHECK_THROWS_AS(bad.nth_root(2), SeriesError);
  }

  SUBCASE("division round trip") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-9, 9);
    S f(n), g(n);
    for (std::size_t k = 0; k < n; ++k) {
      f[k] = make_rational(d(rng), 1 + std::abs(d(rng)));
      g[k] = make_rational(d(rng), 1 + std::abs(d(rng)));
    }
    g[0] = 3;
    CHECK((f * g) / g == f);
    S zero_const = g;
    zero_const[0] = 0;
    CHECK_THROWS_AS(f / zero_const, SeriesError);
  }

  SUBCASE("composition") {
    S inner = S::monomial(1, n, Rational(27));
    S outer = geom;
    S comp = outer.compose(inner);
    CHECK(comp[0] == 1);
    CHECK(comp[3] == 27 * 27 * 27);
    CHECK_THROWS_AS(outer.compose(S::one(n)), SeriesError);
  }

  SUBCASE("theta is a derivation") {
    S f = geom;
    S g = one_minus_q * S::monomial(0, n, Rational(3)) + S::monomial(4, n);
    CHECK((f * g).theta() == f.theta() * g + f * g.theta());
  }
}

TEST_CASE("power series over Q(sqrt 2)") {
  using S = PowerSeries<QSqrt2>;
  const std::size_t n = 12;
  S f = S::one(n);
  f[1] = constants::c();
  f[2] = constants::a1();
  S g = S::one(n);
  g[1] = QSqrt2::sqrt2();
  CHECK((f * g) / g == f);
  S sq = f.nth_root(2);
  CHECK(sq * sq == f);
}

TEST_CASE("polynomial taylor shift") {
  using P = Polynomial<Rational>;
  P p{Rational(1), Rational(-3), Rational(0), Rational(2)};
  P shifted = p.taylor_shift(Rational(5));
  for (long t = -3; t <= 3; ++t) {
    CHECK(shifted(Rational(t)) == p(Rational(t + 5)));
  }
  P q = p * p - p;
  CHECK(q(Rational(2)) == p(Rational(2)) * p(Rational(2)) - p(Rational(2)));
  CHECK(p.derivative()(Rational(1)) == 3);
}

TEST_CASE("jets carry derivatives through closed forms") {
  const Precision prec = 256;
  const BigFloat x0(0.3, prec);
  Jet x = Jet::variable(x0);
  // f = sqrt(1 + x) / (2 - x), check against the analytic derivative.
  Jet f = sqrt(x + BigFloat(1L, prec)) / (BigFloat(2L, prec) - x);
  const BigFloat s = sqrt(x0 + 1L);
  const BigFloat d = 2L - x0;
  const BigFloat expected1 = (1L / (s * 2L)) / d + s / (d * d);
  CHECK(abs(f.derivative(1) - expected1) < BigFloat(1e-70, prec));

  Jet l = log(x * x + BigFloat(1L, prec));
  // third derivative of log(1+x^2) is 4x(x^2-3)/(1+x^2)^3
  const BigFloat x2 = x0 * x0;
  const BigFloat expected3 = x0 * 4L * (x2 - 3L) / pow(x2 + 1L, 3L);
  CHECK(abs(l.derivative(3) - expected3) < BigFloat(1e-70, prec));

  Jet p = pow(x, mpq_class(-1, 3));
  Jet back = p * p * p * x;
  CHECK(abs(back.coeff(0) - 1L) < BigFloat(1e-70, prec));
  CHECK(abs(back.coeff(3)) < BigFloat(1e-70, prec));
}
