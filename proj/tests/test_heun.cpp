#include <doctest.h>

#include "stieltjes/apery.hpp"
#include "stieltjes/heun.hpp"

using namespace stieltjes;

TEST_CASE("exact coefficients start correctly") {
  const HeunParams hp = heun_cases::u0_root();
  const HeunSeries s = heun_coeffs(hp, 10);
  CHECK(s.coeffs[0] == QSqrt2(1));
  CHECK(s.coeffs[1] == constants::q4() / constants::a2());
  for (std::size_t n = 1; n < 10; ++n) CHECK(s.residual(n).is_zero());
  CHECK(hp.epsilon() == QSqrt2(make_rational(1, 2)));
}

TEST_CASE("squared Heun series reproduces the Apery numbers") {
  const std::size_t N = 30;
  const HeunSeries s = heun_coeffs(heun_cases::u0_root(), N);
  std::vector<QSqrt2> scaled(N + 1);
  QSqrt2 cp(1);
  for (std::size_t n = 0; n <= N; ++n) {
    scaled[n] = s.coeffs[n] * cp;
    cp *= constants::c();
  }
  const AperySequence a = apery_recurrence(N);
  for (std::size_t n = 0; n <= N; ++n) {
    QSqrt2 acc(0);
    for (std::size_t j = 0; j <= n; ++j) acc += scaled[j] * scaled[n - j];
    CHECK(acc.is_rational());
    CHECK(acc == QSqrt2(Rational(a.values[n])));
  }
}

TEST_CASE("invalid parameters are rejected") {
  HeunParams hp = heun_cases::first_factor();
  hp.gamma = QSqrt2(-2);
  CHECK_THROWS_AS(heun_coeffs(hp, 4), HeunError);
  hp = heun_cases::first_factor();
  hp.a = QSqrt2(0);
  CHECK_THROWS_AS(hp.validate(), HeunError);
}

TEST_CASE("positivity certificate for the first factor") {
  const HeunParams hp = heun_cases::first_factor();
  const PositivityCertificate cert = certify_positive(hp, 45, Rational(10));
  CHECK(cert.base_checked);
  CHECK(cert.induction_checked);
  CHECK(cert.valid());
  REQUIRE(cert.witnesses.size() == 4);
  for (const auto& w : cert.witnesses) CHECK(w.certified);
  CHECK_FALSE(scan_ratio_bracket(hp, 45, Rational(10), 545).has_value());
}

TEST_CASE("positivity certificate for the second factor") {
  const HeunParams hp = heun_cases::second_factor();
  const PositivityCertificate cert = certify_positive(hp, 18, Rational(4));
  CHECK(cert.valid());
  CHECK_FALSE(scan_ratio_bracket(hp, 18, Rational(4), 518).has_value());
}

TEST_CASE("certifier reports failures") {
  HeunParams hp = heun_cases::first_factor();
  hp.q = -hp.q;
  const PositivityCertificate cert = certify_positive(hp, 45, Rational(10));
  CHECK_FALSE(cert.valid());
  REQUIRE(cert.failure.has_value());
  CHECK(cert.failure->check == "base positivity");
  CHECK(cert.failure->counterexample == 1);

  // Too small a threshold: the base bracket or an inequality must fail.
  const PositivityCertificate early = certify_positive(heun_cases::first_factor(), 2, Rational(10));
  CHECK_FALSE(early.valid());
  CHECK(early.failure.has_value());
}

TEST_CASE("numeric evaluation") {
  const HeunParams hp = heun_cases::first_factor();
  HeunEvaluator ev(hp);
  ev.attach_certificate(certify_positive(hp, 45, Rational(10)));

  const HeunEval at0 = ev.eval(BigFloat(0L, 256));
  CHECK(at0.converged);
  CHECK(at0.value[0] == 1L);

  HeunEvalOptions opt;
  opt.derivatives = 3;
  const HeunEval half = ev.eval(BigFloat(0.5, 256), opt);
  REQUIRE(half.converged);
  CHECK(half.rigorous_tail);
  CHECK(half.value[0] > 1L);

  // Compare with an exact partial sum at z = 1/2.
  const HeunSeries exact = heun_coeffs(hp, 400);
  Rational zr(1, 2);
  QSqrt2 partial(0);
  QSqrt2 zp(1);
  for (std::size_t n = 0; n <= 400; ++n) {
    partial += exact.coeffs[n] * zp;
    zp *= QSqrt2(zr);
  }
  const BigFloat diff = abs(half.value[0] - partial.to_bigfloat(256));
  CHECK(diff <= half.error_bound[0] + BigFloat(1e-60, 256));

  // Positive, increasing and convex on a grid.
  BigFloat prev(0L, 256);
  for (int i = 1; i <= 9; ++i) {
    const HeunEval e = ev.eval(BigFloat(0.1 * i, 256), opt);
    REQUIRE(e.converged);
    CHECK(e.value[0] > 0L);
    CHECK(e.value[1] > 0L);
    CHECK(e.value[2] > 0L);
    CHECK(e.value[0] > prev);
    prev = e.value[0];
  }

  // Derivative agrees with a difference quotient.
  const BigFloat h = ldexp(BigFloat(1L, 256), -80);
  const BigFloat zc(0.3, 256);
  const BigFloat fd = (ev.eval(zc + h).value[0] - ev.eval(zc - h).value[0]) / (h * 2L);
  CHECK(abs(fd - ev.eval(zc, opt).value[1]) < BigFloat(1e-40, 256));
}

TEST_CASE("evaluation near the radius reports non-convergence") {
  HeunEvalOptions opt;
  opt.max_terms = 2000;
  const BigFloat z = constants::a1().to_bigfloat(256) - BigFloat(1e-6, 256);
  const HeunEval e = heun_eval(heun_cases::first_factor(), z, opt);
  CHECK_FALSE(e.converged);
  CHECK(e.terms == 2000);
  CHECK_THROWS_AS(heun_eval(heun_cases::first_factor(), BigFloat(0.9995, 256)), HeunError);
}
