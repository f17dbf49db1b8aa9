#include "stieltjes/jet.hpp"

#include <algorithm>
#include <utility>

namespace stieltjes {

Jet::Jet(Precision prec) : t_{BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec)} {}

Jet::Jet(const BigFloat& t0, const BigFloat& t1, const BigFloat& t2, const BigFloat& t3)
    : t_{t0, t1, t2, t3} {}

Jet Jet::constant(const BigFloat& v) {
  const Precision p = v.precision();
  return {v, BigFloat(p), BigFloat(p), BigFloat(p)};
}

Jet Jet::variable(const BigFloat& x0) {
  const Precision p = x0.precision();
  return {x0, BigFloat(1L, p), BigFloat(p), BigFloat(p)};
}

Jet Jet::from_derivatives(const BigFloat& d0, const BigFloat& d1, const BigFloat& d2,
                          const BigFloat& d3) {
  return {d0, d1, d2 / 2L, d3 / 6L};
}

BigFloat Jet::derivative(std::size_t k) const {
  static constexpr long kFactorial[kSize] = {1, 1, 2, 6};
  return t_[k] * kFactorial[k];
}

Jet& Jet::operator+=(const Jet& rhs) {
  for (std::size_t k = 0; k < kSize; ++k) t_[k] += rhs.t_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  for (std::size_t k = 0; k < kSize; ++k) t_[k] -= rhs.t_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) {
  Jet out(std::max(precision(), rhs.precision()));
  for (std::size_t i = 0; i < kSize; ++i) {
    for (std::size_t j = 0; i + j < kSize; ++j) out.t_[i + j] += t_[i] * rhs.t_[j];
  }
  *this = std::move(out);
  return *this;
}

Jet& Jet::operator/=(const Jet& rhs) {
  Jet q(std::max(precision(), rhs.precision()));
  for (std::size_t k = 0; k < kSize; ++k) {
    BigFloat acc = t_[k];
    for (std::size_t j = 1; j <= k; ++j) acc -= rhs.t_[j] * q.t_[k - j];
    q.t_[k] = acc / rhs.t_[0];
  }
  *this = std::move(q);
  return *this;
}

Jet& Jet::operator*=(const BigFloat& s) {
  for (auto& v : t_) v *= s;
  return *this;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& v : r.t_) v = -v;
  return r;
}

Jet operator+(Jet a, const BigFloat& s) {
  a.t_[0] += s;
  return a;
}

Jet operator-(Jet a, const BigFloat& s) {
  a.t_[0] -= s;
  return a;
}

Jet Jet::compose_with(const BigFloat& g0, const BigFloat& g1, const BigFloat& g2,
                      const BigFloat& g3) const {
  Jet d = *this;
  d.t_[0] = BigFloat(precision());
  const Jet d2 = d * d;
  const Jet d3 = d2 * d;
  Jet out = Jet::constant(BigFloat(g0, precision()));
  out += d * g1;
  out += d2 * (g2 / 2L);
  out += d3 * (g3 / 6L);
  return out;
}

Jet pow(const Jet& f, const mpq_class& alpha) {
  const Precision p = f.precision();
  const BigFloat a(alpha, p);
  const BigFloat& f0 = f.coeff(0);
  Jet g(p);
  g.coeff(0) = pow(f0, alpha);
  for (std::size_t k = 1; k < Jet::kSize; ++k) {
    BigFloat acc(p);
    for (std::size_t j = 1; j <= k; ++j) {
      const BigFloat w = a * static_cast<long>(j) - static_cast<long>(k - j);
      acc += w * f.coeff(j) * g.coeff(k - j);
    }
    g.coeff(k) = acc / (f0 * static_cast<long>(k));
  }
  return g;
}

Jet sqrt(const Jet& f) { return pow(f, mpq_class(1, 2)); }

Jet log(const Jet& f) {
  const BigFloat& f0 = f.coeff(0);
  const BigFloat inv = 1L / f0;
  const BigFloat inv2 = inv * inv;
  return f.compose_with(log(f0), inv, -inv2, inv2 * inv * 2L);
}

Jet reciprocal(const Jet& f) {
  return Jet::constant(BigFloat(1L, f.precision())) / f;
}

}  // namespace stieltjes
