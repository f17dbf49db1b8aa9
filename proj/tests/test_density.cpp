#include "doctest.h"

#include "stieltjes/apery.hpp"
#include "stieltjes/density.hpp"
#include "stieltjes/odecheck.hpp"
#include "stieltjes/qsqrt2.hpp"

using namespace stieltjes;

namespace {

constexpr Precision kP = 256;

DensityEvaluator& shared() {
  static DensityEvaluator ev;
  return ev;
}

BigFloat bf(double v) { return BigFloat(v, kP); }
BigFloat c0() { return constants::c0().to_bigfloat(kP); }
BigFloat cc() { return constants::c().to_bigfloat(kP); }

bool close(const BigFloat& a, const BigFloat& b, double tol) {
  return abs(a - b) <= BigFloat(tol, kP) * max(abs(b), BigFloat(1L, kP));
}

}  // namespace

TEST_CASE("algebraic maps at the special points") {
  const AlgebraicMaps at0 = algebraic_maps(BigFloat(0L, kP), kP);
  CHECK(at0.mu == 1L);
  CHECK(at0.lambda.is_zero());
  CHECK(close(at0.mu2, sqrt(bf(2)), 1e-70));
  CHECK(close(at0.lambda2, bf(1), 1e-70));

  const AlgebraicMaps atc0 = algebraic_maps(c0(), kP);
  const BigFloat z0 = 1L / (pow(bf(2), mpq_class(3, 2)) * (sqrt(bf(2)) + 1L));
  CHECK(close(atc0.lambda, z0, 1e-30));
  CHECK(close(atc0.lambda2, z0, 1e-30));

  CHECK_THROWS_AS(algebraic_maps(bf(1), kP), DensityError);
  CHECK_THROWS_AS(algebraic_maps(bf(-1), kP), DensityError);
  CHECK_THROWS_AS(algebraic_maps(bf(40), kP), DensityError);
}

TEST_CASE("algebraic maps: invariants on the real domain") {
  for (double x : {-0.9, -0.5, 0.001, 0.01, 0.02, 0.029}) {
    CAPTURE(x);
    const BigFloat X = bf(x);
    const AlgebraicMaps m = algebraic_maps(X, kP);
    CHECK(close(m.mu * m.mu2 * (X + 1L), sqrt(bf(2)), 1e-60));
    // Sum and product of lambda and lambda2 are free of the radical.
    const BigFloat x1 = X + 1L;
    const BigFloat P = ((X + 30L) * X - 24L) * X + 1L;
    CHECK(close(m.lambda + m.lambda2, P / (x1 * x1 * x1), 1e-30));
    CHECK(close(m.lambda * m.lambda2, X * X * 27L / (x1 * x1 * x1), 1e-30));
    if (x > 0 && x < 0.0294) {
      CHECK(m.mu > 1L);
      CHECK(m.mu2 > 1L);
      CHECK(m.lambda.sign() > 0);
      CHECK(m.lambda < 1L);
      CHECK(m.lambda2.sign() > 0);
      CHECK(m.lambda2 < 1L);
    }
  }
}

TEST_CASE("u0 closed form: exact Taylor coefficients are the Apery numbers") {
  const std::vector<Rational> u = u0_coeffs(12);
  const AperySequence a = apery_recurrence(12);
  REQUIRE(u.size() == 13);
  CHECK(u[3] == Rational(1445));
  for (std::size_t n = 0; n <= 12; ++n) CHECK(u[n] == Rational(a.values[n]));
}

TEST_CASE("u0 closed form against the partial sum at c0/2") {
  const BigFloat x = c0() / 2L;
  const AperySequence a = apery_recurrence(400);
  BigFloat sum(0L, kP), xp(1L, kP);
  for (std::size_t n = 0; n <= 400; ++n) {
    sum += BigFloat(a.values[n], kP) * xp;
    xp *= x;
  }
  const DensityPoint d = shared().u0(x);
  CHECK(abs(d.value - sum) <= bf(1e-20));
  CHECK(d.error_bound < bf(1e-60));
  CHECK(close(shared().u0(bf(1e-30)).value, bf(1), 1e-25));
}

TEST_CASE("mu F(lambda) has slope 5/2 at the origin") {
  const GaussF21 f(kP);
  auto g = [&](const BigFloat& x) {
    const AlgebraicMaps m = algebraic_maps(x, kP);
    return m.mu * f.eval(m.lambda).d[0];
  };
  const BigFloat h = bf(1e-6);
  const BigFloat slope = (g(h) - g(BigFloat(0L, kP))) / h;
  CHECK(abs(slope - bf(2.5)) <= bf(1e-4));
}

TEST_CASE("v0 behaves like log x at the origin and is negative") {
  for (double x : {1e-6, 1e-8}) {
    CAPTURE(x);
    const BigFloat v = shared().v0(bf(x)).value;
    CHECK(abs(v - log(bf(x))) <= bf(1e-3));
  }
  for (int i = 1; i < 20; ++i) {
    CAPTURE(i);
    CHECK(shared().v0(c0() * i / 20L).value.sign() < 0);
  }
  const BigFloat x = c0() * bf(0.9);
  const DensityPoint d = shared().v0(x);
  CHECK(d.value.is_finite());
  CHECK(d.value.sign() < 0);
  CHECK(abs(d.value) < abs(log(x)) + 10L);
  CHECK_THROWS_AS(shared().v0(bf(0.5)), DensityError);
}

TEST_CASE("v2 is positive and vanishes like sqrt(c - x)") {
  for (double x : {0.04, 0.1, 1.0, 5.0, 10.0, 20.0, 30.0, 33.9}) {
    CAPTURE(x);
    const DensityPoint d = shared().v2(bf(x));
    CHECK(d.converged);
    CHECK(d.value.sign() > 0);
    CHECK(d.error_bound < abs(d.value) * bf(1e-25));
  }
  CHECK(shared().v2(cc()).value.is_zero());
  for (double delta : {1e-4, 1e-6}) {
    CAPTURE(delta);
    const BigFloat r = shared().v2(cc() - bf(delta)).value / sqrt(bf(delta));
    CHECK(abs(r - 1L) <= bf(1e-2));
  }
  CHECK_THROWS_AS(shared().v2_jet(bf(0.01)), DensityError);
}

TEST_CASE("local expansion at c0 agrees with the Heun product") {
  DensityEvaluator& ev = shared();
  const BigFloat x = c0() * bf(1.6);
  bool local = false;
  BigFloat err(kP);
  const Jet via_local = ev.v2_jet(x, &err, &local);
  CHECK(local);
  const Jet via_heun = ev.v2_heun_jet(x);
  for (std::size_t k = 0; k < 4; ++k) {
    CAPTURE(k);
    CHECK(close(via_local.derivative(k), via_heun.derivative(k), 1e-25));
  }
  CHECK(err < abs(via_local.value()) * bf(1e-25));
}

TEST_CASE("exact Frobenius series at c0 solve the operator") {
  // The local basis behind v2 near c0 is t^rho (1 + ...) with rho in
  // {0, 1/2, 1}; each exact partial sum must annihilate the operator.
  DensityEvaluator& ev = shared();
  const BigFloat t = c0() / 4L;
  for (const Rational& rho : {Rational(0), Rational(1, 2), Rational(1)}) {
    CAPTURE(rho.get_str());
    const std::vector<QSqrt2> exact = frobenius_series(SingularPoint::c0, rho, 400);
    auto fn = [&](const BigFloat& x) {
      const BigFloat tt = x - c0();
      BigFloat d[4] = {BigFloat(0L, kP), BigFloat(0L, kP), BigFloat(0L, kP), BigFloat(0L, kP)};
      for (std::size_t k = 0; k < exact.size(); ++k) {
        const BigFloat e = BigFloat(Rational(rho + static_cast<long>(k)), kP);
        const BigFloat ck = exact[k].to_bigfloat(kP);
        BigFloat fall(1L, kP);
        for (int j = 0; j < 4; ++j) {
          d[j] += ck * fall * pow(tt, e - j);
          fall *= (e - j);
        }
      }
      return Jet::from_derivatives(d[0], d[1], d[2], d[3]);
    };
    const De3Residual r = de3_residual(fn, c0() + t);
    CHECK(abs(r.residual) <= r.scale * bf(1e-50));
  }
  // The matched combination reproduces v2 through third order at the
  // matching point, so the right limit at c0 is the coefficient of t^0.
  const auto& A = ev.local_coefficients();
  CHECK(close(ev.phi_right_limit_at_c0(), A[0] * endpoint_constants(kP).scale_right, 1e-40));
}

TEST_CASE("DE3 residuals of the closed forms") {
  DensityEvaluator& ev = shared();
  auto check = [](auto&& fn, std::initializer_list<double> xs) {
    for (double x : xs) {
      CAPTURE(x);
      const De3Residual r = de3_residual(fn, BigFloat(x, kP));
      CHECK(abs(r.residual) <= bf(1e-15));
    }
  };
  check([&](const BigFloat& x) { return ev.u0_jet(x); }, {0.002, 0.008, 0.014, 0.02, 0.027});
  check([&](const BigFloat& x) { return ev.v0_jet(x); }, {0.002, 0.008, 0.014, 0.02, 0.027});
  check([&](const BigFloat& x) { return ev.v2_jet(x); }, {0.04, 1.0, 10.0, 20.0, 30.0});
  check([&](const BigFloat& x) { return ev.uinf_jet(x); }, {-1.0, -0.2, -7.0, 67.97, 150.0});
}

TEST_CASE("u_inf: Laurent expansion and endpoint behaviour") {
  DensityEvaluator& ev = shared();
  const BigFloat X = bf(1e6);
  const BigFloat lead = 1L / X + 5L / (X * X);
  CHECK(abs(ev.uinf(X).value / lead - 1L) <= bf(1e-10));

  const AperySequence a = apery_recurrence(2000);
  for (double f : {2.0, 3.5, 6.0, 9.9}) {
    CAPTURE(f);
    const BigFloat x = cc() * bf(f);
    BigFloat sum(0L, kP), xp = 1L / x;
    for (const Integer& an : a.values) {
      sum += BigFloat(an, kP) * xp;
      xp /= x;
    }
    CHECK(abs(ev.uinf(x).value / sum - 1L) <= bf(1e-10));
  }

  const EndpointConstants k = endpoint_constants(kP);
  const BigFloat uc = ev.uinf(cc()).value;
  BigFloat prev(1L, kP);
  for (double delta : {1e-4, 1e-6, 1e-8, 1e-10}) {
    CAPTURE(delta);
    const BigFloat d = bf(delta);
    const BigFloat B = (ev.uinf(cc() + d).value - uc) / sqrt(d);
    const BigFloat e = abs(B / k.B_right - 1L);
    CHECK(e < prev);
    prev = e;
  }
  CHECK(prev <= bf(1e-4));

  prev = BigFloat(1L, kP);
  for (double delta : {1e-2, 1e-4, 1e-8, 1e-16}) {
    CAPTURE(delta);
    const BigFloat d = bf(delta);
    const BigFloat L = log(d);
    const BigFloat e = abs(ev.uinf(-d).value / (L * L) / k.C_left - 1L);
    CHECK(e < prev);
    prev = e;
  }
  CHECK(prev <= bf(1e-3));
  CHECK_THROWS_AS(ev.uinf(bf(1)), DensityError);
}

TEST_CASE("endpoint constants are consistent") {
  const EndpointConstants k = endpoint_constants(kP);
  const BigFloat pi = const_pi(kP);
  CHECK(close(k.scale_right, -k.B_right / pi, 1e-70));
  CHECK(close(k.scale_left, k.C_left * 2L, 1e-70));
  CHECK(close(k.scale_right, bf(0.0012540360), 1e-7));
}

TEST_CASE("phi: positivity, branches and endpoint asymptotics") {
  DensityEvaluator& ev = shared();
  for (const BigFloat& x : {c0() / 2L, bf(1), bf(10), bf(30)}) {
    const DensityPoint d = ev.phi(x);
    CHECK(d.value.sign() > 0);
    CHECK(d.error_bound < abs(d.value) * bf(1e-20));
  }
  CHECK(ev.phi(c0() / 2L).branch == DensityBranch::left);
  CHECK(ev.phi(bf(1)).branch == DensityBranch::right);
  const DensityPoint at_c0 = ev.phi(c0());
  CHECK(at_c0.branch == DensityBranch::right);
  CHECK(at_c0.local_expansion);

  const EndpointConstants k = endpoint_constants(kP);
  const BigFloat six_over_pi2 = -k.scale_left;
  BigFloat prev(1L, kP);
  for (double delta : {1e-4, 1e-8, 1e-16, 1e-32}) {
    CAPTURE(delta);
    const BigFloat d = bf(delta);
    const BigFloat e = abs(ev.phi(d).value / (-log(d)) / six_over_pi2 - 1L);
    CHECK(e < prev);
    prev = e;
  }
  CHECK(prev <= bf(1e-2));

  prev = BigFloat(1L, kP);
  for (double delta : {1e-2, 1e-4, 1e-6, 1e-8}) {
    CAPTURE(delta);
    const BigFloat d = bf(delta);
    const BigFloat e = abs(ev.phi(cc() - d).value / sqrt(d) / k.scale_right - 1L);
    CHECK(e < prev);
    prev = e;
  }
  CHECK(prev <= bf(1e-2));

  CHECK_THROWS_AS(ev.phi(bf(-1)), DensityError);
  CHECK_THROWS_AS(ev.phi(bf(40)), DensityError);
}

TEST_CASE("left and right limits of phi at c0 are measured") {
  DensityEvaluator& ev = shared();
  const BigFloat left = ev.phi_left_limit_at_c0();
  const BigFloat right = ev.phi_right_limit_at_c0();
  CHECK(left.sign() > 0);
  CHECK(right.sign() > 0);
  MESSAGE("phi(c0-) = " << left.str(25) << ", phi(c0+) = " << right.str(25)
                        << ", gap = " << (right - left).str(3));
}

TEST_CASE("one-shot evaluators") {
  CHECK(close(phi(bf(1), 128).value, shared().phi(bf(1)).value, 1e-30));
  CHECK(close(u0_eval(bf(0.01), 128).value, shared().u0(bf(0.01)).value, 1e-30));
  CHECK(close(uinf_eval(bf(-1), 128).value, shared().uinf(bf(-1)).value, 1e-30));
}

TEST_CASE("continued v2 agrees with the Heun product") {
  DensityEvaluator& ev = shared();
  DensityOptions direct;
  direct.use_continuation = false;
  DensityEvaluator ref(direct);
  CHECK(ev.continuation_discrepancy() < bf(1e-28));
  for (double x : {0.06, 0.3, 1.2}) {
    CAPTURE(x);
    const DensityPoint a = ev.v2(bf(x));
    const DensityPoint b = ref.v2(bf(x));
    CHECK(a.route == "continuation");
    CHECK(b.route == "heun");
    CHECK(close(a.value, b.value, 1e-28));
    CHECK(abs(a.value - b.value) <= a.error_bound + b.error_bound);
  }
  CHECK(ev.v2(bf(5)).route == "heun");
  CHECK(ev.v2(c0() * bf(1.2)).route == "frobenius at c0");
  CHECK(ev.u0(bf(0.01)).route == "closed form");
}
