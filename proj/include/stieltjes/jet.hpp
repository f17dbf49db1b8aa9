#pragma once

// Truncated Taylor expansions f(x0 + h) = t0 + t1 h + t2 h^2 + t3 h^3 over
// BigFloat.  They carry value and first three derivatives through the
// closed forms so that third-order ODE residuals never need finite
// differences.

#include "stieltjes/bigfloat.hpp"

#include <array>
#include <cstddef>

namespace stieltjes {

class Jet {
public:
  static constexpr std::size_t kSize = 4;

  explicit Jet(Precision prec = kDefaultPrecision);
  Jet(const BigFloat& t0, const BigFloat& t1, const BigFloat& t2, const BigFloat& t3);

  static Jet constant(const BigFloat& v);
  // The identity map expanded at x0.
  static Jet variable(const BigFloat& x0);
  // Jet of g(x) from the values g(x0), g'(x0), g''(x0), g'''(x0).
  static Jet from_derivatives(const BigFloat& d0, const BigFloat& d1, const BigFloat& d2,
                              const BigFloat& d3);

  Precision precision() const { return t_[0].precision(); }
  const BigFloat& coeff(std::size_t k) const { return t_[k]; }
  BigFloat& coeff(std::size_t k) { return t_[k]; }
  const BigFloat& value() const { return t_[0]; }
  // k-th derivative, k!·t_k.
  BigFloat derivative(std::size_t k) const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator*=(const BigFloat& s);

  Jet operator-() const;

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend Jet operator*(Jet a, const BigFloat& s) { return a *= s; }
  friend Jet operator*(const BigFloat& s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, const BigFloat& s);
  friend Jet operator-(Jet a, const BigFloat& s);
  friend Jet operator+(const BigFloat& s, Jet a) { return a + s; }
  friend Jet operator-(const BigFloat& s, const Jet& a) { return (-a) + s; }

  // g(f) where g is described by its derivatives at f's value.
  Jet compose_with(const BigFloat& g0, const BigFloat& g1, const BigFloat& g2,
                   const BigFloat& g3) const;

private:
  std::array<BigFloat, kSize> t_;
};

Jet sqrt(const Jet& f);
Jet log(const Jet& f);
// f^alpha for f(x0) > 0, alpha rational.
Jet pow(const Jet& f, const mpq_class& alpha);
Jet reciprocal(const Jet& f);

}  // namespace stieltjes
