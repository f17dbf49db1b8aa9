#include "doctest.h"

#include "stieltjes/field.hpp"
#include "stieltjes/hyper.hpp"
#include "stieltjes/modular.hpp"

#include <random>

using namespace stieltjes;

namespace {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("divisor sums") {
  CHECK(divisor_sigma(1) == 1);
  CHECK(divisor_sigma(6) == 12);
  CHECK(divisor_sigma(12) == 28);
  CHECK(divisor_sigma(36) == 91);
  for (unsigned long p = 2; p < 1000; ++p)
    if (is_prime(p)) CHECK(divisor_sigma(p) == p + 1);
  // multiplicativity on coprime pairs
  CHECK(divisor_sigma(8 * 9 * 5) == divisor_sigma(8) * divisor_sigma(9) * divisor_sigma(5));
}

TEST_CASE("theta obeys the Leibniz rule on q-expansions") {
  std::mt19937 rng(20261019);
  std::uniform_int_distribution<int> coeff(-9, 9);
  const std::size_t n = 15;
  for (int trial = 0; trial < 5; ++trial) {
    PowerSeries<Rational> a(n), b(n);
    a[0] = 1;
    b[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
      a[k] = make_rational(coeff(rng), 1 + trial);
      b[k] = Rational(coeff(rng));
    }
    const QExpansion f{make_rational(trial - 2, 3), a};
    const QExpansion g{Rational(1, 8), b};
    const QExpansion lhs = theta(f * g);
    const QExpansion rhs_a = theta(f) * g;
    const QExpansion rhs_b = f * theta(g);
    CHECK(lhs.leading_exponent == rhs_a.leading_exponent);
    CHECK(lhs.unit == rhs_a.unit + rhs_b.unit);
  }
}

TEST_CASE("pentagonal and product forms of eta agree") {
  const std::size_t N = 50;
  const QExpansion eta = eta_expansion(N);
  CHECK(eta.leading_exponent == Rational(1, 24));
  CHECK(eta.unit == eta_unit_by_product(N));
  // 1 - q - q^2 + q^5 + q^7 - q^12 - q^15 ...
  CHECK(eta.unit[1] == -1);
  CHECK(eta.unit[2] == -1);
  CHECK(eta.unit[3] == 0);
  CHECK(eta.unit[5] == 1);
  CHECK(eta.unit[7] == 1);
  CHECK(eta.unit[12] == -1);
  CHECK(eta.coefficient(Rational(1, 24) + 15) == -1);
  CHECK(eta.coefficient(Rational(1, 2)) == 0);
}

TEST_CASE("E2 and j3B expansions") {
  const QExpansion e2 = e2_expansion(6);
  CHECK(e2.unit[0] == 1);
  CHECK(e2.unit[1] == -24);
  CHECK(e2.unit[2] == -72);
  CHECK(e2.unit[6] == -288);

  const QExpansion j = j3b_expansion(10);
  CHECK(j.leading_exponent == -1);
  const long expected[] = {1, -12, 54, -76, -243, 1188};
  for (std::size_t k = 0; k < 6; ++k) CHECK(j.unit[k] == expected[k]);
}

TEST_CASE("logarithmic derivative identity for j3B") {
  const IdentityCheck good = theta_logderiv_identity(60);
  CHECK(good.passed);
  CHECK_FALSE(good.mismatch_index.has_value());

  // A wrong coefficient in front of E2(3 tau) is caught at the constant term.
  const IdentityCheck bad = theta_logderiv_identity(60, Rational(1));
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.mismatch_index.has_value());
  CHECK(*bad.mismatch_index == 0);
}

TEST_CASE("hypergeometric parameterization by eta quotients") {
  const IdentityCheck r = parameterization_check(40);
  CHECK(r.passed);
  CHECK(r.order == 40);
}

TEST_CASE("numeric q-series at t = sqrt(6)/3") {
  const Precision p = 256;
  const BigFloat t = special_t(p);
  const BigFloat q = nome(t, p);
  CHECK(q.to_double() == doctest::Approx(0.005898).epsilon(1e-3));
  // q^40 sits far below 2^-256, so 40 terms of any of these series suffice.
  CHECK(pow(q, 40L) < ldexp(BigFloat(1L, p), -256));

  CHECK(eta_value(t, p).to_double() == doctest::Approx(0.80273835534934990863));
  CHECK(eta_value(t * 3L, p).to_double() == doctest::Approx(0.52662049032536685587));

  // Raising the working precision only changes digits beyond the first one.
  const BigFloat lo = j3b_theta_value(t, 256);
  const BigFloat hi = j3b_theta_value(special_t(512), 512);
  CHECK(abs(BigFloat(lo, 512) - hi) < ldexp(abs(hi), -240));

  // The theta series of j3B agrees with a centred difference of j3B in t:
  // d/dt = -2 pi theta.
  const BigFloat h = ldexp(BigFloat(1L, p), -40);
  const BigFloat dj = (j3b_value(t + h, p) - j3b_value(t - h, p)) / (h * 2L);
  const BigFloat fd = -dj / (const_pi(p) * 2L);
  CHECK(abs(fd - lo) < ldexp(abs(lo), -60));
}

TEST_CASE("tabulated special values") {
  const auto table = special_values(256, 1e-20);
  REQUIRE(table.size() == 8);
  std::size_t failures = 0;
  for (const auto& v : table) {
    INFO(v.name);
    if (!v.passed) {
      ++failures;
      // Every entry that fails must come with a closed form that does hold.
      REQUIRE(v.corrected.has_value());
      CHECK(abs(*v.corrected - v.computed) < ldexp(BigFloat(1L, 256), -200) * max(abs(v.computed), BigFloat(1L, 256)));
      MESSAGE(v.name << ": printed " << v.printed_formula << " fails; " << *v.corrected_formula << " holds");
    }
  }
  // The two eta values, E2(3 tau), j3B, z0 and S0 all hold as printed.
  for (const char* name : {"eta(tau)", "eta(3tau)", "E2(3tau)", "j3B(tau)", "27/(j3B(tau)+27)", "S0 = F(z0)"}) {
    bool found = false;
    for (const auto& v : table)
      if (v.name == name) {
        found = true;
        CHECK_MESSAGE(v.passed, name);
      }
    CHECK(found);
  }
  CHECK(failures == 2);
}

TEST_CASE("S0 and S1 from the modular parameterization") {
  const Precision p = 256;
  const ModularS s = s0_s1_from_modular(p);
  const SpecialConstants sc = special_constants(p);
  CHECK(abs(s.S0 - sc.K) < BigFloat(1e-20, p));
  CHECK(abs(s.S1 - sc.S1) < BigFloat(1e-15, p));
  CHECK(abs(s.S1 - s.S1_printed) < BigFloat(1e-15, p));

  // S0 (3 S1 + sqrt2 S0) = 3 sqrt6 / pi
  const BigFloat lhs = s.S0 * (s.S1 * 3L + sqrt(BigFloat(2L, p)) * s.S0);
  const BigFloat rhs = sqrt(BigFloat(6L, p)) * 3L / const_pi(p);
  CHECK(abs(lhs - rhs) < BigFloat(1e-15, p));
}
