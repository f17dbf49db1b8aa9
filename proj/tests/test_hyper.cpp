#include <doctest.h>

#include "stieltjes/hyper.hpp"

using namespace stieltjes;

namespace {

const Precision P = 256;

BigFloat bf(const char* s) { return BigFloat::parse(s, P); }

bool close(const BigFloat& a, const BigFloat& b, double tol) {
  return abs(a - b) <= BigFloat(tol, P);
}

}  // namespace

TEST_CASE("value at zero and at z0") {
  const HyperEval e0 = f21_eval(BigFloat(0L, P), P);
  CHECK(e0.value == 1L);
  const BigFloat z0 = bf("0.5") - sqrt(BigFloat(2L, P)) / 4L;
  const HyperEval e = f21_eval(z0, P);
  CHECK(e.branch == HyperBranch::series);
  CHECK(close(e.value, bf("1.0354935370745241071293414132920143483"), 1e-35));
  CHECK(e.error_bound < BigFloat(1e-70, P));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(f21_eval(BigFloat(1L, P), P), HyperError);
  CHECK_THROWS_AS(f21_eval(BigFloat(-0.1, P), P), HyperError);
  CHECK_THROWS_AS(f21_deriv(BigFloat(0.95, P), P), HyperError);
}

TEST_CASE("logarithmic behaviour at z = 1") {
  const BigFloat pi = const_pi(P);
  const BigFloat s3 = sqrt(BigFloat(3L, P));
  const BigFloat limit = s3 * 3L * log(BigFloat(3L, P)) / (pi * 2L);
  BigFloat prev_err(1L, P);
  for (const char* d : {"1e-4", "1e-6", "1e-8"}) {
    const BigFloat delta = bf(d);
    const HyperEval e = f21_eval(1L - delta, P);
    CHECK(e.branch == HyperBranch::connection);
    const BigFloat err = abs(e.value + s3 / (pi * 2L) * log(delta) - limit);
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < BigFloat(1e-6, P));
}

TEST_CASE("derivative") {
  CHECK(close(f21_deriv(BigFloat(0L, P), P), BigFloat(2L, P) / 9L, 1e-70));
  const BigFloat K = constant_K(P).value;
  const BigFloat pi = const_pi(P);
  const BigFloat z0 = bf("0.5") - sqrt(BigFloat(2L, P)) / 4L;
  const BigFloat s1 = sqrt(BigFloat(6L, P)) / (pi * K) - sqrt(BigFloat(2L, P)) * K / 3L;
  CHECK(close(f21_deriv(z0, P), s1, 1e-12));

  const BigFloat z = bf("0.3");
  const BigFloat h = bf("1e-20");
  const BigFloat fd = (f21_eval(z + h, P).value - f21_eval(z - h, P).value) / (h * 2L);
  CHECK(close(fd, f21_deriv(z, P), 1e-30));
}

TEST_CASE("digamma at rationals") {
  const BigFloat g = const_euler(P);
  CHECK(close(digamma_rational(1, 1, P), -g, 1e-70));
  CHECK(close(digamma_rational(1, 2, P), -g - log(BigFloat(2L, P)) * 2L, 1e-70));
  CHECK(close(digamma_rational(2, 4, P), digamma_rational(1, 2, P), 1e-70));
  CHECK(close(digamma_rational(1, 3, P) + digamma_rational(2, 3, P),
              -g * 2L - log(BigFloat(3L, P)) * 3L, 1e-70));
  // psi(1/4) = -gamma - pi/2 - 3 log 2
  CHECK(close(digamma_rational(1, 4, P),
              -g - const_pi(P) / 2L - log(BigFloat(2L, P)) * 3L, 1e-70));
  CHECK_THROWS_AS(digamma_rational(3, 2, P), HyperError);
}

TEST_CASE("constant K") {
  const HyperEval k64 = constant_K(64);
  CHECK(abs(k64.value - BigFloat(1.0354935, 64)) < BigFloat(1e-7, 64));
  const HyperEval k = constant_K(P);
  CHECK(close(k.value, constant_K_gamma_product(P), 1e-60));
}

TEST_CASE("quadratic identity for S0 and S1") {
  const SpecialConstants sc = special_constants(P);
  const BigFloat lhs = sc.S0 * (sc.S1 * 3L + sqrt(BigFloat(2L, P)) * sc.S0);
  const BigFloat rhs = sqrt(BigFloat(6L, P)) * 3L / const_pi(P);
  CHECK(close(lhs, rhs, 1e-60));
  CHECK(close(sc.S0, sc.K, 1e-60));
}

TEST_CASE("series and connection branches agree") {
  const GaussF21 f(P);
  for (int i = 0; i <= 10; ++i) {
    const BigFloat z = bf("0.7") + bf("0.02") * static_cast<long>(i);
    const HyperJetEval s = f.series(z, 3);
    const HyperJetEval c = f.connection(1L - z, 3);
    for (int k = 0; k <= 3; ++k) {
      const BigFloat allowed = s.error_bound[k] + c.error_bound[k] + BigFloat(1e-60, P);
      CHECK(abs(s.d[k] - c.d[k]) <= allowed);
    }
  }
}

TEST_CASE("F exceeds one on (0,1)") {
  for (int i = 1; i < 100; ++i) {
    const BigFloat z = BigFloat(static_cast<long>(i), P) / 100L;
    CHECK(f21_eval(z, P).value > 1L);
  }
}

TEST_CASE("coefficient ratio is exact") {
  const GaussF21 f(P);
  const mpq_class third(1, 3);
  const mpq_class two_thirds(2, 3);
  mpq_class poch_a(1), poch_b(1), fact(1);
  mpq_class prev(1);
  for (long n = 0; n < 40; ++n) {
    // (1/3)_n (2/3)_n / (n!)^2 built from Pochhammer products.
    const mpq_class fn = poch_a * poch_b / (fact * fact);
    if (n > 0) {
      const mpq_class m(n - 1);
      CHECK(fn / prev == (m + third) * (m + two_thirds) / ((m + 1) * (m + 1)));
    }
    CHECK(close(f.coefficient(n), BigFloat(fn, P), 1e-70));
    prev = fn;
    poch_a *= third + n;
    poch_b *= two_thirds + n;
    fact *= n + 1;
  }
}
