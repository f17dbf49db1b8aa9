#include "stieltjes/qsqrt2.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stieltjes {

QSqrt2 QSqrt2::inverse() const {
  const Rational n = norm();
  if (n == 0) throw std::domain_error("QSqrt2: division by zero");
  return {a_ / n, -b_ / n};
}

QSqrt2& QSqrt2::operator+=(const QSqrt2& rhs) {
  a_ += rhs.a_;
  b_ += rhs.b_;
  return *this;
}

QSqrt2& QSqrt2::operator-=(const QSqrt2& rhs) {
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  return *this;
}

QSqrt2& QSqrt2::operator*=(const QSqrt2& rhs) {
  if (rhs.b_ == 0) {
    a_ *= rhs.a_;
    b_ *= rhs.a_;
    return *this;
  }
  Rational a = a_ * rhs.a_ + 2 * b_ * rhs.b_;
  Rational b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QSqrt2& QSqrt2::operator/=(const QSqrt2& rhs) {
  if (rhs.b_ == 0) {
    if (rhs.a_ == 0) throw std::domain_error("QSqrt2: division by zero");
    a_ /= rhs.a_;
    b_ /= rhs.a_;
    return *this;
  }
  return *this *= rhs.inverse();
}

namespace {

int sgn(const Rational& r) { return sgn(r.get_num()); }

}  // namespace

int qsqrt2_sign(const QSqrt2& x) {
  const int sa = sgn(x.rational_part());
  const int sb = sgn(x.sqrt2_part());
  if (sa == 0) return sb;
  if (sb == 0 || sa == sb) return sa;
  // Opposite signs: compare a^2 with 2 b^2 by integer cross-multiplication.
  const Rational& a = x.rational_part();
  const Rational& b = x.sqrt2_part();
  const Integer lhs = a.get_num() * a.get_num() * b.get_den() * b.get_den();
  const Integer rhs = 2 * b.get_num() * b.get_num() * a.get_den() * a.get_den();
  const int cmp = ::cmp(lhs, rhs);
  // cmp == 0 is impossible since sqrt 2 is irrational.
  return cmp > 0 ? sa : sb;
}

BigFloat QSqrt2::to_bigfloat(Precision prec) const {
  const Precision work = prec + 16;
  const BigFloat root2 = sqrt(BigFloat(2L, work));
  BigFloat value(work);
  if (sgn(a_) * sgn(b_) >= 0) {
    value = BigFloat(a_, work) + BigFloat(b_, work) * root2;
  } else {
    // a + b sqrt2 = (a^2 - 2 b^2) / (a - b sqrt2) avoids the cancellation.
    value = BigFloat(norm(), work) / (BigFloat(a_, work) - BigFloat(b_, work) * root2);
  }
  return BigFloat(value, prec);
}

std::string QSqrt2::str() const {
  std::ostringstream os;
  if (b_ == 0) {
    os << a_;
  } else if (a_ == 0) {
    os << b_ << "*sqrt2";
  } else {
    os << a_ << (sgn(b_) < 0 ? " - " : " + ") << abs(b_) << "*sqrt2";
  }
  return os.str();
}

QSqrt2 pow(const QSqrt2& x, unsigned n) {
  QSqrt2 result(1);
  QSqrt2 base = x;
  while (n != 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const QSqrt2& x) { return os << x.str(); }

namespace constants {

QSqrt2 c() { return {17, 12}; }
QSqrt2 c0() { return {17, -12}; }
QSqrt2 a1() { return {-576, 408}; }
QSqrt2 a2() { return {577, 408}; }
QSqrt2 q1() { return {Rational(-1317, 4), 234}; }
QSqrt2 q2() { return {-42, 30}; }
QSqrt2 q4() { return {Rational(85, 2), 30}; }
QSqrt2 z0() { return {Rational(1, 2), Rational(-1, 4)}; }
QSqrt2 silver() { return {1, 1}; }

}  // namespace constants

}  // namespace stieltjes
