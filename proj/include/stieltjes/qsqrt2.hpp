#pragma once

#include "stieltjes/bigfloat.hpp"

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace stieltjes {

using Rational = mpq_class;
using Integer = mpz_class;

// Exact element a + b*sqrt(2) of the real quadratic field Q(sqrt 2).
class QSqrt2 {
public:
  QSqrt2() = default;
  QSqrt2(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(const Rational& a, const Rational& b) : a_(a), b_(b) {}

  static QSqrt2 sqrt2() { return {0, 1}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QSqrt2 conjugate() const { return {a_, -b_}; }
  // Field norm a^2 - 2 b^2; zero only for zero.
  Rational norm() const { return a_ * a_ - 2 * b_ * b_; }
  QSqrt2 inverse() const;

  QSqrt2& operator+=(const QSqrt2& rhs);
  QSqrt2& operator-=(const QSqrt2& rhs);
  QSqrt2& operator*=(const QSqrt2& rhs);
  QSqrt2& operator/=(const QSqrt2& rhs);

  QSqrt2 operator-() const { return {-a_, -b_}; }

  friend QSqrt2 operator+(QSqrt2 x, const QSqrt2& y) { return x += y; }
  friend QSqrt2 operator-(QSqrt2 x, const QSqrt2& y) { return x -= y; }
  friend QSqrt2 operator*(QSqrt2 x, const QSqrt2& y) { return x *= y; }
  friend QSqrt2 operator/(QSqrt2 x, const QSqrt2& y) { return x /= y; }

  friend bool operator==(const QSqrt2& x, const QSqrt2& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  // Rounded to `prec` bits with relative error at most 2^(1-prec).
  BigFloat to_bigfloat(Precision prec) const;

  std::string str() const;

private:
  Rational a_{0};
  Rational b_{0};
};

// Exact sign of a + b*sqrt(2) using only integer arithmetic.
int qsqrt2_sign(const QSqrt2& x);

inline bool operator<(const QSqrt2& x, const QSqrt2& y) { return qsqrt2_sign(y - x) > 0; }
inline bool operator>(const QSqrt2& x, const QSqrt2& y) { return y < x; }
inline bool operator<=(const QSqrt2& x, const QSqrt2& y) { return !(y < x); }
inline bool operator>=(const QSqrt2& x, const QSqrt2& y) { return !(x < y); }

QSqrt2 pow(const QSqrt2& x, unsigned n);

std::ostream& operator<<(std::ostream& os, const QSqrt2& x);

// Constants living in Q(sqrt 2).
namespace constants {

QSqrt2 c();        // 17 + 12 sqrt2 = (sqrt2 + 1)^4
QSqrt2 c0();       // 17 - 12 sqrt2 = 1/c
QSqrt2 a1();       // 1 - c0^2 = -576 + 408 sqrt2
QSqrt2 a2();       // c^2 = 577 + 408 sqrt2
QSqrt2 q1();       // -1317/4 + 234 sqrt2
QSqrt2 q2();       // -42 + 30 sqrt2
QSqrt2 q4();       // 5c/2 = 85/2 + 30 sqrt2
QSqrt2 z0();       // 1/2 - sqrt2/4
QSqrt2 silver();   // 1 + sqrt2

}  // namespace constants

}  // namespace stieltjes
