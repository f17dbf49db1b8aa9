#pragma once

// q-expansions of the Dedekind eta function, the Eisenstein series E2 and the
// Hauptmodul j3B = eta(tau)^12 / eta(3 tau)^12, exact formal identities among
// them, and their values on the imaginary axis tau = i t.

#include "stieltjes/bigfloat.hpp"
#include "stieltjes/power_series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stieltjes {

// q^leading_exponent * unit(q), with unit known through q^(order-1).
struct QExpansion {
  Rational leading_exponent;
  PowerSeries<Rational> unit;

  std::size_t order() const { return unit.order(); }
  // Coefficient of q^e; zero when e - leading_exponent is not a known index.
  Rational coefficient(const Rational& e) const;

  friend QExpansion operator*(const QExpansion& a, const QExpansion& b);
  friend QExpansion operator/(const QExpansion& a, const QExpansion& b);
  // Needs a unit with constant term 1.
  QExpansion pow(const Rational& alpha) const;
  // f(q) -> f(q^m), truncated to the same order.
  QExpansion dilate(unsigned m) const;
};

// theta = q d/dq on q^e u(q): q^e (e u + theta u).
QExpansion theta(const QExpansion& f);

Integer divisor_sigma(unsigned long k);

QExpansion eta_expansion(std::size_t N);      // pentagonal-number form
PowerSeries<Rational> eta_unit_by_product(std::size_t N);  // prod (1 - q^n), for cross-checks
QExpansion e2_expansion(std::size_t N);       // 1 - 24 sum sigma(k) q^k
QExpansion j3b_expansion(std::size_t N);

struct IdentityCheck {
  bool passed = false;
  std::size_t order = 0;
  std::optional<std::size_t> mismatch_index;  // first differing power of q
  std::string message;
};

// theta(j)/j = E2(tau)/2 - factor * E2(3 tau) through q^N; the true factor is 3/2.
IdentityCheck theta_logderiv_identity(std::size_t N, const Rational& factor = Rational(3, 2));

// F(27/(j + 27)) = eta(3 tau)^3 / eta(tau) * (j + 27)^(1/3) through q^N,
// where F = 2F1(1/3, 2/3; 1; .).
IdentityCheck parameterization_check(std::size_t N);

// Values at tau = i t, where q = exp(-2 pi t) is real.
BigFloat nome(const BigFloat& t, Precision prec);
BigFloat eta_value(const BigFloat& t, Precision prec);
BigFloat e2_value(const BigFloat& t, Precision prec);
BigFloat j3b_value(const BigFloat& t, Precision prec);
// theta(j3B) summed from the exact q-expansion.
BigFloat j3b_theta_value(const BigFloat& t, Precision prec);

// The point t = sqrt(6)/3 at which the special values are tabulated.
BigFloat special_t(Precision prec);

struct SpecialValue {
  std::string name;
  std::string printed_formula;
  BigFloat computed;   // from q-series (S0: from the hypergeometric series)
  BigFloat printed;    // the tabulated closed form
  BigFloat error;      // |computed - printed|
  bool passed = false;
  // For entries that disagree: a closed form the computed value does satisfy.
  std::optional<std::string> corrected_formula;
  std::optional<BigFloat> corrected;
};

std::vector<SpecialValue> special_values(Precision prec, double tolerance = 1e-20);

struct ModularS {
  BigFloat S0;
  BigFloat S1;
  BigFloat S1_printed;  // sqrt(6)/(pi K) - sqrt(2) K / 3
};

// S0 = F(z0) and S1 = F'(z0) from the parameterization and its logarithmic
// derivative at tau = i sqrt(6)/3, using q-series values only.
ModularS s0_s1_from_modular(Precision prec);

}  // namespace stieltjes
