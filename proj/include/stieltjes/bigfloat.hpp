#pragma once

// RAII wrapper around an MPFR variable.  Every value carries its own
// precision; binary operations produce a result at the larger of the two
// operand precisions, rounded to nearest.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace stieltjes {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 256;

class BigFloat {
public:
  explicit BigFloat(Precision prec = kDefaultPrecision);
  BigFloat(long value, Precision prec);
  BigFloat(int value, Precision prec) : BigFloat(static_cast<long>(value), prec) {}
  BigFloat(double value, Precision prec);
  BigFloat(const mpz_class& value, Precision prec);
  BigFloat(const mpq_class& value, Precision prec);
  // Same value rounded to a new precision.
  BigFloat(const BigFloat& other, Precision prec);

  static BigFloat parse(const std::string& text, Precision prec);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  Precision precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  long exponent() const;  // x = m * 2^e with 1/2 <= |m| < 1; 0 for zero

  // Decimal rendering with the given number of significant digits.
  std::string str(int digits = 20) const;
  // Fixed-point rendering with the given number of decimals.
  std::string fixed(int decimals) const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);
  BigFloat& operator+=(long rhs);
  BigFloat& operator-=(long rhs);
  BigFloat& operator*=(long rhs);
  BigFloat& operator/=(long rhs);

  BigFloat operator-() const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator+(const BigFloat& a, long b);
  friend BigFloat operator-(const BigFloat& a, long b);
  friend BigFloat operator*(const BigFloat& a, long b);
  friend BigFloat operator/(const BigFloat& a, long b);
  friend BigFloat operator+(long a, const BigFloat& b) { return b + a; }
  friend BigFloat operator-(long a, const BigFloat& b);
  friend BigFloat operator*(long a, const BigFloat& b) { return b * a; }
  friend BigFloat operator/(long a, const BigFloat& b);

  friend bool operator==(const BigFloat& a, const BigFloat& b) {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);
  friend bool operator==(const BigFloat& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, long b);

private:
  mpfr_t v_;
};

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat cbrt(const BigFloat& x);
BigFloat root(const BigFloat& x, unsigned long n);
BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat pow(const BigFloat& x, long n);
// x^(p/q) for x > 0.
BigFloat pow(const BigFloat& x, const mpq_class& e);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat cot(const BigFloat& x);
BigFloat gamma(const BigFloat& x);
BigFloat ldexp(const BigFloat& x, long e);
BigFloat max(const BigFloat& a, const BigFloat& b);
BigFloat min(const BigFloat& a, const BigFloat& b);

BigFloat const_pi(Precision prec);
BigFloat const_euler(Precision prec);
BigFloat const_log2(Precision prec);

// 2^(1-prec): the relative rounding unit used in error bounds.
BigFloat unit_roundoff(Precision prec);

}  // namespace stieltjes
