#include "stieltjes/odecheck.hpp"

#include "stieltjes/apery.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace stieltjes {

using Poly = Polynomial<QSqrt2>;

namespace {

Poly int_poly(std::initializer_list<long> cs) {
  std::vector<QSqrt2> v;
  for (long c : cs) v.emplace_back(c);
  return Poly(std::move(v));
}

// e (e-1) ... (e-i+1) as a polynomial in e.
Poly falling_poly(int i) {
  Poly r = Poly::constant(QSqrt2(1));
  for (int j = 0; j < i; ++j) r = r * Poly::linear(QSqrt2(-j), QSqrt2(1));
  return r;
}

Poly reflect(const Poly& p) {
  std::vector<QSqrt2> cs = p.coeffs();
  for (std::size_t j = 1; j < cs.size(); j += 2) cs[j] = -cs[j];
  return Poly(std::move(cs));
}

QSqrt2 point_value(SingularPoint p) {
  switch (p) {
    case SingularPoint::zero: return QSqrt2(0);
    case SingularPoint::c0: return constants::c0();
    case SingularPoint::c: return constants::c();
    case SingularPoint::infinity: break;
  }
  throw OdeError("no finite value for the point at infinity");
}

}  // namespace

std::array<Poly, 4> de3_coefficients() {
  return {int_poly({-5, 1}), int_poly({1, -112, 7}), int_poly({0, 3, -153, 6}),
          int_poly({0, 0, 1, -34, 1})};
}

De3Residual de3_residual(const std::function<Jet(const BigFloat&)>& fn, const BigFloat& x) {
  const Precision prec = x.precision();
  const BigFloat disc = x * x - x * 34L + 1L;
  if (x.is_zero() || disc.is_zero()) throw OdeError("DE3 residual requested at a singular point");
  const Jet u = fn(x);
  const auto p = de3_coefficients();
  De3Residual r{BigFloat(prec), BigFloat(prec)};
  for (int i = 0; i < 4; ++i) {
    BigFloat pi(prec);
    const auto& cs = p[i].coeffs();
    for (std::size_t j = cs.size(); j-- > 0;) pi = pi * x + cs[j].to_bigfloat(prec);
    const BigFloat term = pi * u.derivative(static_cast<std::size_t>(i));
    r.residual += term;
    r.scale += abs(term);
  }
  return r;
}

const char* to_string(SingularPoint p) {
  switch (p) {
    case SingularPoint::zero: return "0";
    case SingularPoint::c0: return "c0";
    case SingularPoint::c: return "c";
    case SingularPoint::infinity: return "infinity";
  }
  return "?";
}

const Poly& LocalOperator::at(int d) const {
  static const Poly zero;
  const int j = d - d0;
  if (j < 0 || j >= static_cast<int>(f.size())) return zero;
  return f[static_cast<std::size_t>(j)];
}

LocalOperator local_operator(SingularPoint point) {
  auto p = de3_coefficients();
  if (point != SingularPoint::infinity) {
    const QSqrt2 s = point_value(point);
    for (auto& pi : p) pi = pi.taylor_shift(s);
  }
  // f_d(e) = sum_i p_{i,i+d} e^(i) for d in [-3, 4].
  std::map<int, Poly> fd;
  for (int d = -3; d <= 4; ++d) {
    Poly acc;
    for (int i = 0; i < 4; ++i) {
      const int j = i + d;
      if (j < 0 || j > p[i].degree()) continue;
      acc += falling_poly(i) * p[i].coeffs()[static_cast<std::size_t>(j)];
    }
    if (!acc.is_zero()) fd[d] = acc;
  }
  LocalOperator op{point, 0, {}};
  if (point != SingularPoint::infinity) {
    op.d0 = fd.begin()->first;
    for (int d = op.d0; d <= fd.rbegin()->first; ++d) op.f.push_back(fd.count(d) ? fd[d] : Poly());
  } else {
    // In w = 1/x, w^rho = x^(-rho): g_{d'}(rho) = f_{-d'}(-rho).
    op.d0 = -fd.rbegin()->first;
    for (int d = fd.rbegin()->first; d >= fd.begin()->first; --d) {
      op.f.push_back(fd.count(d) ? reflect(fd[d]) : Poly());
    }
  }
  return op;
}

namespace {

std::vector<Rational> rational_roots(const Poly& monic) {
  std::vector<Rational> coeffs;
  for (const auto& c : monic.coeffs()) {
    if (!c.is_rational()) throw OdeError("indicial polynomial has irrational coefficients");
    coeffs.push_back(c.rational_part());
  }
  Integer lcm = 1;
  for (const auto& c : coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ic;
  for (const auto& c : coeffs) ic.push_back(Integer(c * lcm));

  std::vector<Rational> roots;
  // Strip zero roots.
  std::size_t low = 0;
  while (low < ic.size() && ic[low] == 0) {
    roots.emplace_back(0);
    ++low;
  }
  std::vector<Integer> q(ic.begin() + static_cast<std::ptrdiff_t>(low), ic.end());
  auto divisors = [](Integer v) {
    v = abs(v);
    std::vector<Integer> ds;
    for (Integer d = 1; d * d <= v; ++d) {
      if (v % d == 0) {
        ds.push_back(d);
        if (d * d != v) ds.push_back(v / d);
      }
    }
    return ds;
  };
  auto eval = [](const std::vector<Integer>& poly, const Rational& x) {
    Rational acc = 0;
    for (std::size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
    return acc;
  };
  while (q.size() > 1) {
    bool found = false;
    for (const auto& a : divisors(q.front())) {
      for (const auto& b : divisors(q.back())) {
        for (int sign : {1, -1}) {
          Rational cand(sign * a, b);
          cand.canonicalize();
          if (eval(q, cand) != 0) continue;
          // Deflate by (x - cand) over the rationals, then rescale to integers.
          std::vector<Rational> rq(q.size() - 1);
          Rational carry = 0;
          for (std::size_t i = q.size() - 1; i-- > 0;) {
            carry = carry * cand + q[i + 1];
            rq[i] = carry;
          }
          Integer l = 1;
          for (const auto& c : rq) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
          q.clear();
          for (const auto& c : rq) q.push_back(Integer(c * l));
          roots.push_back(cand);
          found = true;
          break;
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) throw OdeError("indicial polynomial has non-rational roots");
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool integer_difference(const Rational& a, const Rational& b) {
  return Rational(a - b).get_den() == 1;
}

}  // namespace

IndicialData indicial_exponents(SingularPoint point) {
  const LocalOperator op = local_operator(point);
  Poly ind = op.f.front();
  const QSqrt2 lead = ind.coeffs().back();
  ind = ind * lead.inverse();
  IndicialData data{point, ind, rational_roots(ind), 0};

  // Group the roots into classes modulo the integers.
  std::vector<bool> used(data.exponents.size(), false);
  for (std::size_t i = 0; i < data.exponents.size(); ++i) {
    if (used[i]) continue;
    std::vector<Rational> cls;
    for (std::size_t j = i; j < data.exponents.size(); ++j) {
      if (!used[j] && integer_difference(data.exponents[i], data.exponents[j])) {
        used[j] = true;
        cls.push_back(data.exponents[j]);
      }
    }
    int max_mult = 0;
    for (const auto& r : cls) {
      max_mult = std::max(max_mult, static_cast<int>(std::count(cls.begin(), cls.end(), r)));
    }
    int rank = max_mult - 1;
    // A forced logarithm at a resonance raises the rank to its maximum.
    const Rational span = cls.back() - cls.front();
    if (span > 0) {
      try {
        frobenius_series(point, cls.front(), static_cast<std::size_t>(span.get_num().get_ui()) + 2);
      } catch (const OdeError&) {
        rank = static_cast<int>(cls.size()) - 1;
      }
    }
    data.log_rank = std::max(data.log_rank, rank);
  }
  return data;
}

std::vector<QSqrt2> frobenius_series(SingularPoint point, const Rational& rho, std::size_t terms,
                                     const std::map<std::size_t, QSqrt2>& free_choice) {
  const LocalOperator op = local_operator(point);
  std::vector<QSqrt2> c;
  c.reserve(terms);
  c.emplace_back(1);
  const std::size_t span = op.f.size();
  for (std::size_t m = 1; m < terms; ++m) {
    QSqrt2 rhs(0);
    for (std::size_t s = 1; s < span && s <= m; ++s) {
      const QSqrt2 e(rho + static_cast<long>(m - s));
      rhs -= op.f[s](e) * c[m - s];
    }
    const QSqrt2 lhs = op.f[0](QSqrt2(rho + static_cast<long>(m)));
    if (lhs.is_zero()) {
      if (!rhs.is_zero()) {
        throw OdeError("logarithmic term forced at order " + std::to_string(m));
      }
      const auto it = free_choice.find(m);
      c.push_back(it == free_choice.end() ? QSqrt2(0) : it->second);
    } else {
      c.push_back(rhs / lhs);
    }
  }
  return c;
}

QSqrt2 frobenius_residual(SingularPoint point, const Rational& rho,
                          const std::vector<QSqrt2>& coeffs, std::size_t m) {
  const LocalOperator op = local_operator(point);
  QSqrt2 acc(0);
  for (std::size_t s = 0; s < op.f.size() && s <= m; ++s) {
    if (m - s >= coeffs.size()) continue;
    acc += op.f[s](QSqrt2(rho + static_cast<long>(m - s))) * coeffs[m - s];
  }
  return acc;
}

std::string SlopeCheck::summary() const {
  std::ostringstream os;
  os << "slope at " << to_string(point) << ": published " << expected << ", Frobenius limit "
     << computed;
  if (!expected.is_zero()) os << " (ratio " << (computed / expected) << ")";
  os << (resonant ? "; order-1 equation is 0*c1 = 0, so c1 is free" : "")
     << (expected_admissible ? "; published value admissible" : "; published value rejected");
  return os.str();
}

SlopeCheck frobenius_slope_check(SingularPoint point) {
  if (point != SingularPoint::c0 && point != SingularPoint::c) {
    throw OdeError("slope check is defined at c0 and c only");
  }
  SlopeCheck chk;
  chk.point = point;
  const QSqrt2 s2 = QSqrt2::sqrt2();
  chk.expected = point == SingularPoint::c0
                     ? -(QSqrt2(240) + s2 * QSqrt2(169)) / QSqrt2(48)
                     : -(QSqrt2(240) - s2 * QSqrt2(169)) / QSqrt2(48);
  const LocalOperator op = local_operator(point);
  const Poly& f0 = op.f[0];
  const Poly& f1 = op.f[1];
  chk.resonant = f0(QSqrt2(1)).is_zero() && f1(QSqrt2(0)).is_zero();
  // c_1(rho) = -f_{d0+1}(rho) / f_{d0}(rho+1); take rho -> 0.
  if (chk.resonant) {
    chk.computed = -f1.derivative()(QSqrt2(0)) / f0.derivative()(QSqrt2(1));
  } else {
    chk.computed = -f1(QSqrt2(0)) / f0(QSqrt2(1));
  }
  const std::size_t orders = 12;
  chk.orders_checked = orders;
  auto admissible = [&](const QSqrt2& c1) {
    try {
      const auto c = frobenius_series(point, Rational(0), orders + 1, {{1, c1}});
      if (!(c[1] == c1)) return false;
      for (std::size_t m = 0; m < orders; ++m) {
        if (!frobenius_residual(point, Rational(0), c, m).is_zero()) return false;
      }
      return true;
    } catch (const OdeError&) {
      return false;
    }
  };
  chk.expected_admissible = admissible(chk.expected);
  chk.perturbed_admissible = admissible(chk.expected + QSqrt2(1));
  return chk;
}

bool apery_streams_satisfy_operator(std::size_t N) {
  const LocalOperator op = local_operator(SingularPoint::zero);
  const auto a = apery_recurrence(static_cast<unsigned>(N)).values;
  const int dmin = op.d0;
  const int dmax = op.d0 + static_cast<int>(op.f.size()) - 1;
  // Taylor stream: coefficient of x^m is sum_d f_d(m-d) A_{m-d}.
  for (long m = 0; m + (-dmin) <= static_cast<long>(N); ++m) {
    QSqrt2 acc(0);
    for (int d = dmin; d <= dmax; ++d) {
      const long n = m - d;
      if (n < 0 || n > static_cast<long>(N)) continue;
      acc += op.at(d)(QSqrt2(n)) * QSqrt2(Rational(a[static_cast<std::size_t>(n)]));
    }
    if (!acc.is_zero()) return false;
  }
  // Laurent stream: coefficient of x^(-m) is sum over n = d - 1 + m.
  for (long m = 1; m + dmax - 1 <= static_cast<long>(N); ++m) {
    QSqrt2 acc(0);
    for (int d = dmin; d <= dmax; ++d) {
      const long n = d - 1 + m;
      if (n < 0) continue;
      acc += op.at(d)(QSqrt2(-n - 1)) * QSqrt2(Rational(a[static_cast<std::size_t>(n)]));
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

}  // namespace stieltjes
