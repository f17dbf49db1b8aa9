#pragma once

// The third-order operator
//   L u = x^2(x^2-34x+1) u''' + 3x(2x^2-51x+1) u'' + (7x^2-112x+1) u' + (x-5) u
// whose solutions carry the Apery generating function, together with a
// Frobenius engine at its regular singular points.

#include "stieltjes/jet.hpp"
#include "stieltjes/polynomial.hpp"
#include "stieltjes/qsqrt2.hpp"

#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace stieltjes {

class OdeError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// coefficient[i] multiplies the i-th derivative.
std::array<Polynomial<QSqrt2>, 4> de3_coefficients();

struct De3Residual {
  BigFloat residual;
  BigFloat scale;  // sum of |p_i(x) u^(i)(x)|, the size of the cancelling terms
};

// `fn` returns the order-3 Taylor jet of a function at x.
De3Residual de3_residual(const std::function<Jet(const BigFloat&)>& fn, const BigFloat& x);

enum class SingularPoint { zero, c0, c, infinity };

const char* to_string(SingularPoint p);

// L[t^e] = sum_d f_d(e) t^(e+d) for the local variable t = x - s at a finite
// point s, or t = x at infinity.  f[j] holds f_{d0+j} as a polynomial in e.
struct LocalOperator {
  SingularPoint point;
  int d0;
  std::vector<Polynomial<QSqrt2>> f;

  const Polynomial<QSqrt2>& at(int d) const;  // zero polynomial outside range
};

LocalOperator local_operator(SingularPoint point);

struct IndicialData {
  SingularPoint point;
  Polynomial<QSqrt2> indicial;      // monic, in the local exponent
  std::vector<Rational> exponents;  // with multiplicity, ascending
  int log_rank = 0;                 // highest log power in the local basis
};

IndicialData indicial_exponents(SingularPoint point);

// Coefficients c_k of t^rho * sum_k c_k t^k at a finite point, c_0 = 1.  At a
// resonance k (f_{d0}(rho+k) = 0) the coefficient is taken from `free_choice`
// (default 0) provided no logarithm is forced; otherwise OdeError.
std::vector<QSqrt2> frobenius_series(SingularPoint point, const Rational& rho, std::size_t terms,
                                     const std::map<std::size_t, QSqrt2>& free_choice = {});

// Coefficient of t^(rho+d0+m) in L applied to t^rho * sum c_k t^k.
QSqrt2 frobenius_residual(SingularPoint point, const Rational& rho,
                          const std::vector<QSqrt2>& coeffs, std::size_t m);

struct SlopeCheck {
  SingularPoint point;
  QSqrt2 expected;          // the published constant
  QSqrt2 computed;          // limit rho -> 0 of the generic Frobenius coefficient
  bool resonant = false;    // the order-1 equation reads 0 * c_1 = 0
  bool expected_admissible = false;  // residuals vanish with c_1 = expected
  bool perturbed_admissible = false; // and also with c_1 = expected + 1
  std::size_t orders_checked = 0;
  bool matches() const { return computed == expected; }
  std::string summary() const;
};

// Checks the first coefficient of the exponent-0 solution at c0 or c.
SlopeCheck frobenius_slope_check(SingularPoint point);

// Applies the coefficient recurrence of L to sum_{n<=N} A_n x^n and to the
// Laurent stream sum A_n x^(-n-1); true when both vanish wherever the
// truncation does not interfere.
bool apery_streams_satisfy_operator(std::size_t N);

}  // namespace stieltjes
