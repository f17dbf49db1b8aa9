#pragma once

// Small adapters that let the series and polynomial templates run over the
// exact fields (Rational, QSqrt2) and over BigFloat alike.  BigFloat needs a
// template element to inherit its precision from.

#include "stieltjes/bigfloat.hpp"
#include "stieltjes/qsqrt2.hpp"

namespace stieltjes {

inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational from_int_like(long n, const Rational&) { return Rational(n); }
inline QSqrt2 from_int_like(long n, const QSqrt2&) { return QSqrt2(n); }
inline BigFloat from_int_like(long n, const BigFloat& like) {
  return BigFloat(n, like.precision());
}

template <class F>
F zero_like(const F& like) {
  return from_int_like(0, like);
}

inline bool field_is_zero(const Rational& x) { return x == 0; }
inline bool field_is_zero(const QSqrt2& x) { return x.is_zero(); }
inline bool field_is_zero(const BigFloat& x) { return x.is_zero(); }

inline Rational from_rational_like(const Rational& r, const Rational&) { return r; }
inline QSqrt2 from_rational_like(const Rational& r, const QSqrt2&) { return QSqrt2(r); }
inline BigFloat from_rational_like(const Rational& r, const BigFloat& like) {
  return BigFloat(r, like.precision());
}

}  // namespace stieltjes
