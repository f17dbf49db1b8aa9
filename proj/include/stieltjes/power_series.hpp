#pragma once

// Truncated formal power series over an exact field (Rational or QSqrt2).
// A series of order N stores the coefficients of x^0 .. x^(N-1); every
// operation on two order-N series returns an order-N series whose
// coefficients are exact.

#include "stieltjes/field.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace stieltjes {

class SeriesError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

template <class F>
class PowerSeries {
public:
  explicit PowerSeries(std::size_t order = 0) : c_(order, F(0)) {}
  PowerSeries(std::vector<F> coeffs, std::size_t order) : c_(std::move(coeffs)) {
    c_.resize(order, F(0));
  }

  static PowerSeries one(std::size_t order) {
    PowerSeries s(order);
    if (order > 0) s.c_[0] = F(1);
    return s;
  }

  // x^k truncated at `order`.
  static PowerSeries monomial(std::size_t k, std::size_t order, const F& coeff = F(1)) {
    PowerSeries s(order);
    if (k < order) s.c_[k] = coeff;
    return s;
  }

  std::size_t order() const { return c_.size(); }
  const F& operator[](std::size_t k) const { return c_[k]; }
  F& operator[](std::size_t k) { return c_[k]; }
  const std::vector<F>& coeffs() const { return c_; }

  // Index of the first nonzero coefficient, or order() for the zero series.
  std::size_t valuation() const {
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (!field_is_zero(c_[k])) return k;
    }
    return c_.size();
  }

  PowerSeries truncated(std::size_t order) const {
    std::vector<F> out(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(order, c_.size())));
    return PowerSeries(std::move(out), order);
  }

  PowerSeries& operator+=(const PowerSeries& rhs) {
    check_order(rhs);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += rhs.c_[k];
    return *this;
  }
  PowerSeries& operator-=(const PowerSeries& rhs) {
    check_order(rhs);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= rhs.c_[k];
    return *this;
  }
  PowerSeries& operator*=(const F& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator*(PowerSeries a, const F& s) { return a *= s; }
  PowerSeries operator-() const {
    PowerSeries r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    a.check_order(b);
    const std::size_t n = a.c_.size();
    PowerSeries r(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (field_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; i + j < n; ++j) {
        if (!field_is_zero(b.c_[j])) r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  // Multiplicative inverse; needs an invertible constant term.
  PowerSeries inverse() const {
    const std::size_t n = c_.size();
    if (n == 0) return *this;
    if (field_is_zero(c_[0])) throw SeriesError("series inverse: constant term is zero");
    const F inv0 = F(1) / c_[0];
    PowerSeries r(n);
    r.c_[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
      F acc(0);
      for (std::size_t j = 1; j <= k; ++j) {
        if (!field_is_zero(c_[j])) acc += c_[j] * r.c_[k - j];
      }
      r.c_[k] = -(acc * inv0);
    }
    return r;
  }

  friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) {
    a.check_order(b);
    return a * b.inverse();
  }

  // f(g(x)) with g(0) = 0, by Horner's rule.
  PowerSeries compose(const PowerSeries& inner) const {
    check_order(inner);
    if (!inner.c_.empty() && !field_is_zero(inner.c_[0])) {
      throw SeriesError("series composition: inner series has nonzero constant term");
    }
    const std::size_t n = c_.size();
    PowerSeries r(n);
    for (std::size_t k = n; k-- > 0;) {
      r = r * inner;
      r.c_[0] += c_[k];
    }
    return r;
  }

  // f^alpha for a series with constant term 1, via the ODE f g' = alpha f' g.
  PowerSeries pow_unit(const Rational& alpha) const {
    const std::size_t n = c_.size();
    if (n == 0) return *this;
    if (!(c_[0] == F(1))) throw SeriesError("rational power: constant term must be 1");
    PowerSeries g(n);
    g.c_[0] = F(1);
    const F a = from_rational_like(alpha, c_[0]);
    for (std::size_t k = 1; k < n; ++k) {
      F acc(0);
      for (std::size_t j = 1; j <= k; ++j) {
        if (field_is_zero(c_[j])) continue;
        const F weight = a * F(static_cast<long>(j)) - F(static_cast<long>(k - j));
        acc += weight * c_[j] * g.c_[k - j];
      }
      g.c_[k] = acc / F(static_cast<long>(k));
    }
    return g;
  }

  // Principal n-th root.  The constant term must have an exact n-th root in
  // the coefficient field; only rational perfect powers are recognised.
  PowerSeries nth_root(unsigned n) const {
    if (n == 0) throw SeriesError("nth_root: n must be positive");
    if (c_.empty()) return *this;
    const F root0 = exact_root(c_[0], n);
    PowerSeries unit = *this * (F(1) / c_[0]);
    PowerSeries r = unit.pow_unit(Rational(Integer(1), Integer(n)));
    return r * root0;
  }

  // theta = x d/dx, coefficientwise k * c_k.
  PowerSeries theta() const {
    PowerSeries r = *this;
    for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] *= F(static_cast<long>(k));
    return r;
  }

  PowerSeries derivative() const {
    PowerSeries r(c_.size());
    for (std::size_t k = 1; k < c_.size(); ++k) r.c_[k - 1] = c_[k] * F(static_cast<long>(k));
    return r;
  }

  // x -> x^m, keeping the same truncation order.
  PowerSeries dilate(std::size_t m) const {
    PowerSeries r(c_.size());
    for (std::size_t k = 0; k * m < c_.size(); ++k) r.c_[k * m] = c_[k];
    return r;
  }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }

private:
  void check_order(const PowerSeries& other) const {
    if (other.c_.size() != c_.size()) throw SeriesError("series order mismatch");
  }

  static F exact_root(const F& value, unsigned n);

  std::vector<F> c_;
};

namespace detail {

// Exact n-th root of a nonnegative rational perfect power; throws otherwise.
Rational exact_rational_root(const Rational& value, unsigned n);

}  // namespace detail

template <class F>
F PowerSeries<F>::exact_root(const F& value, unsigned n) {
  if constexpr (std::is_same_v<F, Rational>) {
    return detail::exact_rational_root(value, n);
  } else {
    if (!value.is_rational()) throw SeriesError("nth_root: constant term is irrational");
    return F(detail::exact_rational_root(value.rational_part(), n));
  }
}

}  // namespace stieltjes
