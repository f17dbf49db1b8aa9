#include "stieltjes/bigfloat.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace stieltjes {

namespace {

Precision join(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

BigFloat::BigFloat(Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long value, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(double value, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const mpz_class& value, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& value, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat BigFloat::parse(const std::string& text, Precision prec) {
  BigFloat r(prec);
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a decimal number: " + text);
  }
  return r;
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

long BigFloat::exponent() const {
  if (!mpfr_regular_p(v_)) return 0;
  return mpfr_get_exp(v_);
}

std::string BigFloat::str(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
  const int n = std::max(digits, 1);
  const int len = mpfr_snprintf(nullptr, 0, "%.*Rg", n - 1, v_);
  std::string out(static_cast<std::size_t>(len) + 1, '\0');
  mpfr_snprintf(out.data(), out.size(), "%.*Rg", n - 1, v_);
  out.resize(static_cast<std::size_t>(len));
  return out;
}

std::string BigFloat::fixed(int decimals) const {
  if (!is_finite()) return str();
  const int len = mpfr_snprintf(nullptr, 0, "%.*Rf", decimals, v_);
  std::string out(static_cast<std::size_t>(len) + 1, '\0');
  mpfr_snprintf(out.data(), out.size(), "%.*Rf", decimals, v_);
  out.resize(static_cast<std::size_t>(len));
  return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(v_, rhs.precision(), MPFR_RNDN);
  mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(v_, rhs.precision(), MPFR_RNDN);
  mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(v_, rhs.precision(), MPFR_RNDN);
  mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(v_, rhs.precision(), MPFR_RNDN);
  mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator+=(long rhs) {
  mpfr_add_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(long rhs) {
  mpfr_sub_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(long rhs) {
  mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(long rhs) {
  mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator+(const BigFloat& a, long b) {
  BigFloat r(a.precision());
  mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, long b) {
  BigFloat r(a.precision());
  mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, long b) {
  BigFloat r(a.precision());
  mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, long b) {
  BigFloat r(a.precision());
  mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

BigFloat operator-(long a, const BigFloat& b) {
  BigFloat r(b.precision());
  mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator/(long a, const BigFloat& b) {
  BigFloat r(b.precision());
  mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const BigFloat& a, long b) {
  if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.v_, b);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) {
  return os << x.str(static_cast<int>(os.precision()));
}

#define STIELTJES_UNARY(name, fn)                  \
  BigFloat name(const BigFloat& x) {               \
    BigFloat r(x.precision());                     \
    fn(r.get(), x.get(), MPFR_RNDN);               \
    return r;                                      \
  }

STIELTJES_UNARY(abs, mpfr_abs)
STIELTJES_UNARY(sqrt, mpfr_sqrt)
STIELTJES_UNARY(cbrt, mpfr_cbrt)
STIELTJES_UNARY(log, mpfr_log)
STIELTJES_UNARY(exp, mpfr_exp)
STIELTJES_UNARY(sin, mpfr_sin)
STIELTJES_UNARY(cos, mpfr_cos)
STIELTJES_UNARY(cot, mpfr_cot)
STIELTJES_UNARY(gamma, mpfr_gamma)

#undef STIELTJES_UNARY

BigFloat root(const BigFloat& x, unsigned long n) {
  BigFloat r(x.precision());
  mpfr_rootn_ui(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, const BigFloat& y) {
  BigFloat r(join(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, long n) {
  BigFloat r(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, const mpq_class& e) {
  if (e.get_den() == 1) return pow(x, e.get_num().get_si());
  BigFloat r = root(x, e.get_den().get_ui());
  return pow(r, e.get_num().get_si());
}

BigFloat ldexp(const BigFloat& x, long e) {
  BigFloat r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
BigFloat min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }

BigFloat const_pi(Precision prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

BigFloat const_euler(Precision prec) {
  BigFloat r(prec);
  mpfr_const_euler(r.get(), MPFR_RNDN);
  return r;
}

BigFloat const_log2(Precision prec) {
  BigFloat r(prec);
  mpfr_const_log2(r.get(), MPFR_RNDN);
  return r;
}

BigFloat unit_roundoff(Precision prec) {
  BigFloat r(1L, prec);
  return ldexp(r, 1 - static_cast<long>(prec));
}

}  // namespace stieltjes
