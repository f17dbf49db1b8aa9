#include "stieltjes/modular.hpp"

#include "stieltjes/field.hpp"
#include "stieltjes/hyper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stieltjes {

namespace {

using Series = PowerSeries<Rational>;

Series truncate_to(const Series& s, std::size_t n) {
  return s.order() == n ? s : s.truncated(n);
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace

Rational QExpansion::coefficient(const Rational& e) const {
  const Rational idx = e - leading_exponent;
  if (!is_integer(idx) || idx < 0 || idx >= static_cast<long>(order())) return Rational(0);
  return unit[idx.get_num().get_ui()];
}

QExpansion operator*(const QExpansion& a, const QExpansion& b) {
  const std::size_t n = std::min(a.order(), b.order());
  return {a.leading_exponent + b.leading_exponent, truncate_to(a.unit, n) * truncate_to(b.unit, n)};
}

QExpansion operator/(const QExpansion& a, const QExpansion& b) {
  const std::size_t n = std::min(a.order(), b.order());
  return {a.leading_exponent - b.leading_exponent, truncate_to(a.unit, n) / truncate_to(b.unit, n)};
}

QExpansion QExpansion::pow(const Rational& alpha) const {
  return {leading_exponent * alpha, unit.pow_unit(alpha)};
}

QExpansion QExpansion::dilate(unsigned m) const {
  return {leading_exponent * m, unit.dilate(m)};
}

QExpansion theta(const QExpansion& f) {
  return {f.leading_exponent, f.unit * f.leading_exponent + f.unit.theta()};
}

Integer divisor_sigma(unsigned long k) {
  if (k == 0) return 0;
  Integer s = 0;
  for (unsigned long d = 1; d * d <= k; ++d) {
    if (k % d != 0) continue;
    s += d;
    if (d * d != k) s += k / d;
  }
  return s;
}

QExpansion eta_expansion(std::size_t N) {
  // Euler's pentagonal number theorem:
  // prod (1 - q^n) = sum_k (-1)^k q^(k(3k-1)/2) over all integers k.
  Series u(N + 1);
  for (long k = 0;; ++k) {
    bool any = false;
    for (long kk : {k, -k}) {
      if (k == 0 && any) break;  // k = 0 contributes once
      const long e = kk * (3 * kk - 1) / 2;
      if (e < static_cast<long>(N + 1)) {
        u[static_cast<std::size_t>(e)] += Rational(k % 2 == 0 ? 1 : -1);
        any = true;
      }
    }
    if (!any) break;
  }
  return {Rational(1, 24), u};
}

Series eta_unit_by_product(std::size_t N) {
  Series u = Series::one(N + 1);
  for (std::size_t n = 1; n <= N; ++n) {
    u = u * (Series::one(N + 1) - Series::monomial(n, N + 1));
  }
  return u;
}

QExpansion e2_expansion(std::size_t N) {
  Series u = Series::one(N + 1);
  for (std::size_t k = 1; k <= N; ++k) u[k] = Rational(divisor_sigma(k) * -24);
  return {Rational(0), u};
}

QExpansion j3b_expansion(std::size_t N) {
  const QExpansion eta = eta_expansion(N);
  return (eta / eta.dilate(3)).pow(Rational(12));
}

namespace {

IdentityCheck compare_units(const Series& lhs, const Series& rhs, std::size_t N) {
  IdentityCheck r;
  r.order = N;
  for (std::size_t k = 0; k <= N; ++k) {
    if (lhs[k] != rhs[k]) {
      r.mismatch_index = k;
      r.message = "coefficient of q^" + std::to_string(k) + " differs: " + lhs[k].get_str() + " vs " +
                  rhs[k].get_str();
      return r;
    }
  }
  r.passed = true;
  return r;
}

}  // namespace

IdentityCheck theta_logderiv_identity(std::size_t N, const Rational& factor) {
  const QExpansion j = j3b_expansion(N);
  const QExpansion lhs = theta(j) / j;
  const QExpansion e2 = e2_expansion(N);
  const Series rhs = e2.unit * Rational(1, 2) - e2.dilate(3).unit * factor;
  if (lhs.leading_exponent != 0) {
    IdentityCheck r;
    r.order = N;
    r.message = "theta(j)/j has leading exponent " + lhs.leading_exponent.get_str();
    return r;
  }
  return compare_units(lhs.unit, rhs, N);
}

IdentityCheck parameterization_check(std::size_t N) {
  const std::size_t n = N + 1;
  const QExpansion j = j3b_expansion(N);
  // j + 27 = q^(-1) (W + 27 q) with W the unit of j.
  const Series V = j.unit + Series::monomial(1, n, Rational(27));
  const QExpansion j27{Rational(-1), V};

  // Left side: F composed with 27 / (j + 27) = 27 q / V.
  const Series z = Series::monomial(1, n, Rational(27)) / V;
  Series f(n);
  f[0] = Rational(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const long kl = static_cast<long>(k);
    f[k + 1] = f[k] * make_rational((3 * kl + 1) * (3 * kl + 2), 9 * (kl + 1) * (kl + 1));
  }
  const Series lhs = f.compose(z);

  // Right side: the fractional powers of q must cancel exactly.
  const QExpansion eta = eta_expansion(N);
  const QExpansion rhs = eta.dilate(3).pow(Rational(3)) / eta * j27.pow(Rational(1, 3));
  if (rhs.leading_exponent != 0) {
    IdentityCheck r;
    r.order = N;
    r.message = "fractional monomials do not cancel: leading exponent " + rhs.leading_exponent.get_str();
    return r;
  }
  return compare_units(lhs, rhs.unit, N);
}

// ---------------------------------------------------------------------------
// Numerics on tau = i t.

BigFloat nome(const BigFloat& t, Precision prec) {
  const Precision w = prec + 32;
  return BigFloat(exp(-(const_pi(w) * 2L) * BigFloat(t, w)), prec);
}

namespace {

BigFloat eps_for(Precision w) { return ldexp(BigFloat(1L, w), -static_cast<long>(w)); }

void require_positive(const BigFloat& t) {
  if (!(t.sign() > 0)) throw std::domain_error("modular values need t > 0");
}

}  // namespace

BigFloat eta_value(const BigFloat& t, Precision prec) {
  require_positive(t);
  const Precision w = prec + 32;
  const BigFloat q = nome(t, w);
  const BigFloat eps = eps_for(w);
  BigFloat prod(1L, w), qn = q;
  while (qn > eps) {
    prod *= 1L - qn;
    qn *= q;
  }
  return BigFloat(exp(-(const_pi(w) * 2L) * BigFloat(t, w) / 24L) * prod, prec);
}

BigFloat e2_value(const BigFloat& t, Precision prec) {
  require_positive(t);
  const Precision w = prec + 32;
  const BigFloat q = nome(t, w);
  const BigFloat eps = eps_for(w);
  BigFloat sum(0L, w), qk = q;
  for (unsigned long k = 1;; ++k) {
    const BigFloat term = BigFloat(divisor_sigma(k), w) * qk;
    sum += term;
    // sigma(k) <= k^2, so the remaining terms are dominated by a geometric tail.
    if (term < eps && BigFloat(static_cast<long>(k * k), w) * qk < eps) break;
    qk *= q;
  }
  return BigFloat(1L - sum * 24L, prec);
}

BigFloat j3b_value(const BigFloat& t, Precision prec) {
  const Precision w = prec + 32;
  const BigFloat r = eta_value(t, w) / eta_value(BigFloat(t, w) * 3L, w);
  return BigFloat(pow(r, 12L), prec);
}

BigFloat j3b_theta_value(const BigFloat& t, Precision prec) {
  require_positive(t);
  const Precision w = prec + 32;
  const BigFloat q = nome(t, w);
  // Each term gains about -log2(q) bits; the coefficients grow only like
  // exp(C sqrt(n)), so this many terms leaves a wide margin.
  const double bits_per_term = -std::log2(q.to_double());
  const std::size_t N = static_cast<std::size_t>(1.5 * static_cast<double>(w) / bits_per_term) + 40;
  const QExpansion th = theta(j3b_expansion(N));
  BigFloat sum(0L, w);
  BigFloat qk = 1L / q;  // q^(leading exponent) = q^(-1)
  for (std::size_t k = 0; k < th.order(); ++k) {
    sum += BigFloat(th.unit[k], w) * qk;
    qk *= q;
  }
  return BigFloat(sum, prec);
}

BigFloat special_t(Precision prec) { return sqrt(BigFloat(6L, prec)) / 3L; }

std::vector<SpecialValue> special_values(Precision prec, double tolerance) {
  const Precision w = prec + 32;
  const BigFloat t = special_t(w);
  const BigFloat K = constant_K(w).value;
  const BigFloat pi = const_pi(w);
  const BigFloat s2 = sqrt(BigFloat(2L, w));
  const BigFloat s6 = sqrt(BigFloat(6L, w));
  const BigFloat silver = s2 + 1L;
  const BigFloat K2 = K * K;

  const BigFloat j = j3b_value(t, w);
  std::vector<SpecialValue> out;
  auto add = [&](std::string name, std::string formula, const BigFloat& computed, const BigFloat& printed) {
    SpecialValue v;
    v.name = std::move(name);
    v.printed_formula = std::move(formula);
    v.computed = BigFloat(computed, prec);
    v.printed = BigFloat(printed, prec);
    v.error = BigFloat(abs(computed - printed), prec);
    v.passed = v.error <= BigFloat(tolerance, prec) * max(abs(v.printed), BigFloat(1L, prec));
    out.push_back(std::move(v));
  };

  add("eta(tau)", "2^(3/4) 3^(7/8) (1+sqrt2)^(1/12) K^(1/2) / 6", eta_value(t, w),
      pow(BigFloat(2L, w), mpq_class(3, 4)) * pow(BigFloat(3L, w), mpq_class(7, 8)) *
          pow(silver, mpq_class(1, 12)) * sqrt(K) / 6L);
  add("eta(3tau)", "2^(3/4) 3^(5/8) (sqrt2-1)^(1/12) K^(1/2) / 6", eta_value(t * 3L, w),
      pow(BigFloat(2L, w), mpq_class(3, 4)) * pow(BigFloat(3L, w), mpq_class(5, 8)) *
          pow(s2 - 1L, mpq_class(1, 12)) * sqrt(K) / 6L);
  add("E2(tau)", "3 sqrt6/(2 pi) + (sqrt2+1) K^2 / sqrt2", e2_value(t, w),
      s6 * 3L / (pi * 2L) + silver * K2 / s2);
  out.back().corrected_formula = "3 sqrt6/(2 pi) - (sqrt2-1) K^2 / sqrt2";
  out.back().corrected = BigFloat(s6 * 3L / (pi * 2L) - (s2 - 1L) * K2 / s2, prec);
  add("E2(3tau)", "sqrt6/(2 pi) + (sqrt2+1) K^2 / (3 sqrt2)", e2_value(t * 3L, w),
      s6 / (pi * 2L) + silver * K2 / (s2 * 3L));
  add("j3B(tau)", "27 (1+sqrt2)^2", j, silver * silver * 27L);
  add("27/(j3B(tau)+27)", "1/2 - sqrt2/4 = z0", BigFloat(27L, w) / (j + 27L),
      BigFloat(1L, w) / 2L - s2 / 4L);
  add("j3B^theta(tau)", "27 (1+sqrt2)^2 K^2", j3b_theta_value(t, w), silver * silver * K2 * 27L);
  out.back().corrected_formula = "-27 (1+sqrt2)^2 K^2";
  out.back().corrected = BigFloat(-(silver * silver * K2 * 27L), prec);
  add("S0 = F(z0)", "K", special_constants(w).S0, K);
  return out;
}

ModularS s0_s1_from_modular(Precision prec) {
  const Precision w = prec + 32;
  const BigFloat t = special_t(w);
  const BigFloat e1 = e2_value(t, w);
  const BigFloat e3 = e2_value(t * 3L, w);
  const BigFloat eta1 = eta_value(t, w);
  const BigFloat eta3 = eta_value(t * 3L, w);
  const BigFloat j = j3b_value(t, w);
  const BigFloat jt = j3b_theta_value(t, w);
  const BigFloat j27 = j + 27L;

  // G = eta(3 tau)^3 / eta(tau) * (j + 27)^(1/3) equals F(27 / (j + 27)).
  const BigFloat G = pow(eta3, 3L) / eta1 * cbrt(j27);
  // theta log G, using theta eta / eta = E2 / 24 and theta acting on q^3.
  const BigFloat dlogG = (e3 * 9L - e1) / 24L + jt / (j27 * 3L);
  const BigFloat theta_z = -(jt * 27L) / (j27 * j27);

  const BigFloat K = constant_K(w).value;
  const BigFloat pi = const_pi(w);
  ModularS s;
  s.S0 = BigFloat(G, prec);
  s.S1 = BigFloat(G * dlogG / theta_z, prec);
  s.S1_printed = BigFloat(sqrt(BigFloat(6L, w)) / (pi * K) - sqrt(BigFloat(2L, w)) * K / 3L, prec);
  return s;
}

}  // namespace stieltjes
