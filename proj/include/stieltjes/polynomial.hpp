#pragma once

#include "stieltjes/field.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace stieltjes {

// Dense univariate polynomial, coefficients stored lowest degree first.
template <class F>
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<F> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const F& v) { return Polynomial(std::vector<F>{v}); }
  // a + b*x
  static Polynomial linear(const F& a, const F& b) { return Polynomial(std::vector<F>{a, b}); }

  const std::vector<F>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  F coeff(std::size_t k, const F& like) const {
    return k < c_.size() ? c_[k] : zero_like(like);
  }

  F operator()(const F& x) const {
    if (c_.empty()) return zero_like(x);
    F acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
      acc = acc * x + c_[i];
    }
    return acc;
  }

  Polynomial& operator+=(const Polynomial& rhs) {
    if (rhs.c_.size() > c_.size()) {
      for (std::size_t i = c_.size(); i < rhs.c_.size(); ++i) c_.push_back(zero_like(rhs.c_[i]));
    }
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] += rhs.c_[i];
    trim();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& rhs) {
    Polynomial neg = rhs;
    for (auto& v : neg.c_) v = -v;
    return *this += neg;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<F> out(a.c_.size() + b.c_.size() - 1, zero_like(a.c_[0]));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (field_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(Polynomial a, const F& s) {
    for (auto& v : a.c_) v *= s;
    a.trim();
    return a;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<F> out;
    out.reserve(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) out.push_back(c_[k] * from_int_like(static_cast<long>(k), c_[k]));
    return Polynomial(std::move(out));
  }

  // p(s + t) as a polynomial in t.
  Polynomial taylor_shift(const F& s) const {
    if (c_.empty()) return {};
    std::vector<F> out = c_;
    const std::size_t n = out.size();
    // Repeated synthetic division by (t - (-s)) written as Horner steps.
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = n - 1; j-- > i;) {
        out[j] += out[j + 1] * s;
      }
    }
    return Polynomial(std::move(out));
  }

private:
  void trim() {
    while (!c_.empty() && field_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<F> c_;
};

}  // namespace stieltjes
