#include "stieltjes/density.hpp"

#include "stieltjes/odecheck.hpp"
#include "stieltjes/qsqrt2.hpp"

#include <cmath>
#include <utility>

namespace stieltjes {

namespace {

// Horner evaluation of a polynomial with small integer coefficients (low to
// high) on a jet.
Jet poly_jet(const Jet& y, std::initializer_list<long> coeffs) {
  const Precision p = y.precision();
  Jet acc = Jet::constant(BigFloat(0L, p));
  for (auto it = std::rbegin(coeffs); it != std::rend(coeffs); ++it) {
    acc = acc * y + BigFloat(*it, p);
  }
  return acc;
}

// The radicals shared by the maps.  P and Pr are reversals of each other.
struct Radicals {
  Jet D, root, P, Q, Pr;
};

Radicals radicals(const Jet& y) {
  Radicals r;
  r.D = poly_jet(y, {1, -34, 1});
  // Rounding can push D slightly below zero at the branch points.
  const Precision p = y.precision();
  const BigFloat tol = ldexp(BigFloat(64L, p), -static_cast<long>(p) + 8);
  if (r.D.value().sign() < 0) {
    if (-r.D.value() > tol) throw DensityError("discriminant x^2 - 34x + 1 is negative");
    r.D.coeff(0) = BigFloat(0L, p);
  }
  r.root = sqrt(r.D);
  if (r.D.value().is_zero()) {
    // The derivatives of the root are infinite here; only the value is usable.
    r.root.coeff(0) = BigFloat(0L, p);
  }
  r.P = poly_jet(y, {1, -24, 30, 1});
  r.Q = poly_jet(y, {1, -7, 1});
  r.Pr = poly_jet(y, {1, 30, -24, 1});
  return r;
}

struct PrimaryMaps {
  Jet mu_sq;
  Jet lambda;
  BigFloat one_minus_lambda;
};

// mu^2 and lambda at any y with D(y) >= 0, each in a cancellation-free form.
PrimaryMaps primary_maps(const Jet& y) {
  const Precision p = y.precision();
  const Radicals r = radicals(y);
  const BigFloat& yv = y.value();
  PrimaryMaps m;
  m.mu_sq = reciprocal((BigFloat(1L, p) - y) * BigFloat(3L, p) + r.root) * BigFloat(4L, p);
  const Jet y1 = y + BigFloat(1L, p);
  if (yv < -2L) {
    // P and Q sqrt(D) nearly cancel for large negative y.
    m.lambda = (r.P - r.Q * r.root) / (y1 * y1 * y1 * BigFloat(2L, p));
  } else {
    m.lambda = y * y * BigFloat(54L, p) / (r.P + r.Q * r.root);
  }
  const BigFloat rootv = r.root.value();
  if (yv.sign() >= 0) {
    const BigFloat y1v = yv + 1L;
    m.one_minus_lambda = (r.Pr.value() + r.Q.value() * rootv) / (y1v * y1v * y1v * 2L);
  } else {
    m.one_minus_lambda = yv * 54L / (r.Pr.value() - r.Q.value() * rootv);
  }
  return m;
}

struct PartnerMaps {
  Jet mu2_sq;
  Jet lambda2;
  BigFloat one_minus_lambda2;
};

// mu2^2 and lambda2 for y > -1 with D(y) >= 0.
PartnerMaps partner_maps(const Jet& y) {
  const Precision p = y.precision();
  const Radicals r = radicals(y);
  const Jet y1 = y + BigFloat(1L, p);
  const Jet y1sq = y1 * y1;
  PartnerMaps m;
  m.mu2_sq = ((BigFloat(1L, p) - y) * BigFloat(3L, p) + r.root) / (y1sq * BigFloat(2L, p));
  m.lambda2 = (r.P + r.Q * r.root) / (y1sq * y1 * BigFloat(2L, p));
  if (y.value().sign() >= 0) {
    m.one_minus_lambda2 = y.value() * 54L / (r.Pr.value() + r.Q.value() * r.root.value());
  } else {
    m.one_minus_lambda2 = 1L - m.lambda2.value();
  }
  return m;
}

BigFloat relative(const BigFloat& err, const BigFloat& value) {
  if (value.is_zero()) return err;
  return abs(err / value);
}

// Gaussian elimination with partial pivoting on a 3x3 system.
std::array<BigFloat, 3> solve3(std::array<std::array<BigFloat, 3>, 3> m, std::array<BigFloat, 3> b) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (abs(m[r][col]) > abs(m[piv][col])) piv = r;
    }
    if (m[piv][col].is_zero()) throw DensityError("local matching system is singular");
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < 3; ++r) {
      const BigFloat f = m[r][col] / m[col][col];
      for (int k = col; k < 3; ++k) m[r][k] -= f * m[col][k];
      b[r] -= f * b[col];
    }
  }
  std::array<BigFloat, 3> x = b;
  for (int r = 2; r >= 0; --r) {
    BigFloat s = b[r];
    for (int k = r + 1; k < 3; ++k) s -= m[r][k] * x[k];
    x[r] = s / m[r][r];
  }
  return x;
}

}  // namespace

const char* to_string(DensityBranch b) { return b == DensityBranch::left ? "left" : "right"; }

AlgebraicMaps algebraic_maps(const BigFloat& x_in, Precision prec) {
  const BigFloat x(x_in, prec);
  if (!(x > -1L)) throw DensityError("algebraic_maps: need x > -1");
  const Jet X = Jet::constant(x);
  const PrimaryMaps pm = primary_maps(X);
  // For x >= c the discriminant is nonnegative again but mu^2 < 0.
  if (!(pm.mu_sq.value().sign() > 0)) throw DensityError("algebraic_maps: mu is not real for x >= c");
  const PartnerMaps qm = partner_maps(X);
  AlgebraicMaps out;
  out.x = x;
  out.discriminant = x * x - x * 34L + 1L;
  out.mu = sqrt(pm.mu_sq.value());
  out.mu2 = sqrt(qm.mu2_sq.value());
  out.lambda = pm.lambda.value();
  out.lambda2 = qm.lambda2.value();
  return out;
}

EndpointConstants endpoint_constants(Precision prec) {
  const Precision w = prec + 32;
  const BigFloat pi = const_pi(w);
  const BigFloat denom = pow(BigFloat(2L, w), mpq_class(5, 4)) * constants::c().to_bigfloat(w);
  EndpointConstants k;
  k.B_right = BigFloat(-1L / (denom * pi), prec);
  k.C_left = BigFloat(BigFloat(-3L, w) / (pi * pi), prec);
  k.scale_right = BigFloat(1L / (denom * pi * pi), prec);
  k.scale_left = BigFloat(BigFloat(-6L, w) / (pi * pi), prec);
  return k;
}

// ---------------------------------------------------------------------------
// Local basis at c0: t^rho * sum_k c_k t^k with t = x - c0 and rho in
// {0, 1/2, 1}.  The coefficients follow the Frobenius recurrence of the
// third-order operator, run forward in floating point; the dominant growth
// c0^(-k) belongs to the wanted solutions, so the recurrence is stable.

struct DensityEvaluator::LocalBasis {
  Precision work;
  LocalOperator op = local_operator(SingularPoint::c0);
  std::array<Rational, 3> rho{Rational(0), Rational(1, 2), Rational(1)};
  std::array<std::vector<BigFloat>, 3> c;

  explicit LocalBasis(Precision w) : work(w) {
    for (auto& v : c) v.emplace_back(1L, work);
  }

  BigFloat f(int d, const Rational& e) const {
    return op.at(d)(QSqrt2(e)).to_bigfloat(work);
  }

  void extend(std::size_t n) {
    const int span = static_cast<int>(op.f.size());
    for (int i = 0; i < 3; ++i) {
      auto& cc = c[i];
      while (cc.size() <= n) {
        const long m = static_cast<long>(cc.size());
        const QSqrt2 lead = op.at(op.d0)(QSqrt2(Rational(rho[i] + m)));
        if (lead == QSqrt2(0)) {
          // Resonance: the order-m equation is 0 * c_m = 0 and c_m is free.
          cc.emplace_back(0L, work);
          continue;
        }
        BigFloat s(0L, work);
        for (int sft = 1; sft < span && sft <= m; ++sft) {
          s += f(op.d0 + sft, Rational(rho[i] + (m - sft))) * cc[m - sft];
        }
        cc.push_back(-s / lead.to_bigfloat(work));
      }
    }
  }
};

DensityEvaluator::DensityEvaluator(DensityOptions options)
    : opt_(options),
      f21_(options.precision),
      h1_(heun_cases::first_factor()),
      h2_(heun_cases::second_factor()),
      c_(constants::c().to_bigfloat(options.precision)),
      c0_(constants::c0().to_bigfloat(options.precision)),
      pi_(const_pi(options.precision)),
      anchor_rel_error_(0L, options.precision),
      match_rel_error_(0L, options.precision) {
  h1_.attach_certificate(certify_positive(heun_cases::first_factor(), 45, Rational(10)));
  h2_.attach_certificate(certify_positive(heun_cases::second_factor(), 18, Rational(4)));
}

DensityEvaluator::~DensityEvaluator() = default;

Jet DensityEvaluator::f_jet(const Jet& z, const BigFloat& one_minus_z, BigFloat* rel_error,
                            int order) {
  const Precision p = opt_.precision;
  BigFloat zv = z.value();
  if (zv.sign() < 0) zv = BigFloat(0L, p);  // rounding at lambda(0) = 0
  const HyperJetEval e = zv <= BigFloat(GaussF21::kSwitch, p) ? f21_.series(zv, order)
                                                              : f21_.connection(one_minus_z, order);
  if (rel_error) *rel_error += relative(e.error_bound[0], e.d[0]);
  return z.compose_with(e.d[0], e.d[1], e.d[2], e.d[3]);
}

Jet DensityEvaluator::u0_impl(const BigFloat& x_in, BigFloat* error, int order) {
  const BigFloat x(x_in, opt_.precision);
  if (x.sign() < 0 || x > c0_) throw DensityError("u0: need 0 <= x <= c0");
  const PrimaryMaps pm = primary_maps(Jet::variable(x));
  BigFloat rel = ldexp(BigFloat(1L, opt_.precision), 8 - static_cast<long>(opt_.precision));
  const Jet F = f_jet(pm.lambda, pm.one_minus_lambda, &rel, order);
  const Jet u = pm.mu_sq * F * F;
  if (error) *error = abs(u.value()) * rel * 2L;
  return u;
}

Jet DensityEvaluator::v0_impl(const BigFloat& x_in, BigFloat* error, int order) {
  const Precision p = opt_.precision;
  const BigFloat x(x_in, p);
  if (!(x.sign() > 0) || x > c0_) throw DensityError("v0: need 0 < x <= c0");
  const Jet X = Jet::variable(x);
  const PrimaryMaps pm = primary_maps(X);
  const PartnerMaps qm = partner_maps(X);
  BigFloat rel = ldexp(BigFloat(1L, p), 8 - static_cast<long>(p));
  const Jet F1 = f_jet(pm.lambda, pm.one_minus_lambda, &rel, order);
  const Jet F2 = f_jet(qm.lambda2, qm.one_minus_lambda2, &rel, order);
  const BigFloat k = -(pi_ * 2L) / sqrt(BigFloat(3L, p));
  const Jet v = reciprocal(X + BigFloat(1L, p)) * k * F1 * F2;
  if (error) *error = abs(v.value()) * rel;
  return v;
}

Jet DensityEvaluator::uinf_impl(const BigFloat& x_in, BigFloat* error, int order) {
  const Precision p = opt_.precision;
  const BigFloat x(x_in, p);
  if (!(x.sign() < 0) && x < c_) throw DensityError("u_inf: need x < 0 or x >= c");
  const Jet Y = reciprocal(Jet::variable(x));
  const PrimaryMaps pm = primary_maps(Y);
  BigFloat rel = ldexp(BigFloat(1L, p), 8 - static_cast<long>(p));
  const Jet F = f_jet(pm.lambda, pm.one_minus_lambda, &rel, order);
  const Jet u = Y * pm.mu_sq * F * F;
  if (error) *error = abs(u.value()) * rel * 2L;
  return u;
}

Jet DensityEvaluator::v2_heun_impl(const BigFloat& x_in, BigFloat* error, int order) {
  const Precision p = opt_.precision;
  const BigFloat x(x_in, p);
  if (!(x > c0_) || !(x < c_)) throw DensityError("v2: need c0 < x < c");
  const Jet X = Jet::variable(x);
  const Jet Z = BigFloat(1L, p) - X * c0_;
  HeunEvalOptions ho;
  ho.precision = p;
  ho.rel_tolerance = opt_.heun_rel_tolerance;
  ho.max_terms = opt_.max_terms;
  ho.derivatives = order;
  const HeunEval e1 = h1_.eval(Z.value(), ho);
  const HeunEval e2 = h2_.eval(Z.value(), ho);
  if (!e1.converged || !e2.converged) {
    throw HeunError("v2: Heun series did not converge at x = " + x.str(12) + " (" +
                       (e1.converged ? e2.message : e1.message) + ")");
  }
  const Jet H1 = Z.compose_with(e1.value[0], e1.value[1], e1.value[2], e1.value[3]);
  const Jet H2 = Z.compose_with(e2.value[0], e2.value[1], e2.value[2], e2.value[3]);
  const Jet pref = (X - c0_) * pow(c_ - X, mpq_class(1, 2)) * (1L / (c_ - c0_));
  const Jet v = pref * H1 * H2;
  if (error) {
    BigFloat rel = ldexp(BigFloat(1L, p), 8 - static_cast<long>(p));
    rel += relative(e1.error_bound[0], e1.value[0]);
    rel += relative(e2.error_bound[0], e2.value[0]);
    *error = abs(v.value()) * rel;
  }
  return v;
}

DensityEvaluator::LocalBasis& DensityEvaluator::local_basis() {
  if (!basis_) basis_ = std::make_unique<LocalBasis>(opt_.precision + 32);
  return *basis_;
}

std::array<Jet, 3> DensityEvaluator::local_basis_jets(const BigFloat& t_in, BigFloat* rel_error,
                                                       int order) {
  const Precision p = opt_.precision;
  LocalBasis& B = local_basis();
  const Precision w = B.work;
  const BigFloat t(t_in, w);
  const BigFloat c0w = constants::c0().to_bigfloat(w);
  const BigFloat r = t / c0w;
  if (t.sign() < 0 || !(r < 1L)) throw DensityError("local expansion at c0: need 0 <= x - c0 < c0");
  const BigFloat target = ldexp(BigFloat(1L, w), -static_cast<long>(p) - 8);

  std::array<Jet, 3> out;
  BigFloat worst(0L, p);
  for (int i = 0; i < 3; ++i) {
    std::array<BigFloat, 4> s{BigFloat(0L, w), BigFloat(0L, w), BigFloat(0L, w), BigFloat(0L, w)};
    std::array<BigFloat, 4> pw = s;  // pw[j] = t^(k-j)
    pw[0] = BigFloat(1L, w);
    BigFloat tail(0L, w);
    bool done = false;
    for (std::size_t k = 0; k < 100000 && !done; ++k) {
      B.extend(k + 1);
      const long kl = static_cast<long>(k);
      const BigFloat& ck = B.c[i][k];
      long fall = 1;
      for (int j = 0; j <= 3; ++j) {
        if (kl >= j && j <= order) s[j] += ck * pw[j] * fall;
        fall *= (kl - j);
      }
      for (int j = 3; j > 0; --j) pw[j] = pw[j - 1];
      pw[0] *= t;
      if (k < 16) continue;
      // Heuristic tail: the coefficients grow like c0^(-k) times a power of
      // k, so the remaining terms decay like a geometric series in t / c0.
      const BigFloat rho = r * (kl + 9) / (kl + 1);
      if (!(rho < 1L)) continue;
      const BigFloat next = abs(B.c[i][k + 1]) * pw[0] * ((kl + 1) * (kl + 1) * (kl + 1));
      tail = next / (1L - rho);
      if (tail <= target * (abs(s[0]) + 1L)) done = true;
    }
    if (!done) throw DensityError("local expansion at c0 did not converge");
    worst = max(worst, BigFloat(tail / (abs(s[0]) + ldexp(BigFloat(1L, w), -static_cast<long>(w))), p));
    const Jet S = Jet::from_derivatives(BigFloat(s[0], p), BigFloat(s[1], p), BigFloat(s[2], p),
                                        BigFloat(s[3], p));
    const Jet T = Jet::variable(BigFloat(t, p));
    if (i == 0) {
      out[i] = S;
    } else if (i == 2) {
      out[i] = T * S;
    } else {
      Jet root = pow(T, mpq_class(1, 2));
      if (t.is_zero()) root = Jet::constant(BigFloat(0L, p));
      out[i] = root * S;
    }
  }
  if (rel_error) *rel_error += worst;
  return out;
}

void DensityEvaluator::ensure_matching() {
  if (match_) return;
  const Precision p = opt_.precision;
  const BigFloat tm = c0_ * BigFloat(opt_.local_fraction, p);
  BigFloat heun_err(0L, p);
  const Jet v = v2_heun_impl(c0_ + tm, &heun_err, 3);
  BigFloat rel = relative(heun_err, v.value());
  anchor_ = v;
  anchor_rel_error_ = rel;
  const std::array<Jet, 3> y = local_basis_jets(tm, &rel, 3);
  std::array<std::array<BigFloat, 3>, 3> m;
  std::array<BigFloat, 3> b;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) m[j][i] = y[i].derivative(j);
    b[j] = v.derivative(j);
  }
  const std::array<BigFloat, 3> a = solve3(m, b);

  // Condition number in the infinity norm, via the explicit inverse.
  BigFloat norm_m(0L, p), norm_inv(0L, p);
  for (int j = 0; j < 3; ++j) {
    BigFloat row(0L, p);
    for (int i = 0; i < 3; ++i) row += abs(m[j][i]);
    norm_m = max(norm_m, row);
  }
  std::array<std::array<BigFloat, 3>, 3> inv;
  for (int k = 0; k < 3; ++k) {
    std::array<BigFloat, 3> e{BigFloat(0L, p), BigFloat(0L, p), BigFloat(0L, p)};
    e[k] = BigFloat(1L, p);
    const auto col = solve3(m, e);
    for (int i = 0; i < 3; ++i) inv[i][k] = col[i];
  }
  for (int i = 0; i < 3; ++i) {
    BigFloat row(0L, p);
    for (int k = 0; k < 3; ++k) row += abs(inv[i][k]);
    norm_inv = max(norm_inv, row);
  }
  match_rel_error_ = rel * norm_m * norm_inv;
  match_ = a;
}

const std::array<BigFloat, 3>& DensityEvaluator::local_coefficients() {
  ensure_matching();
  return *match_;
}

// ---------------------------------------------------------------------------
// Analytic continuation of v2 away from c0.  At a regular point x1 the Taylor
// coefficients a_m of u(x1 + s) follow from the operator directly.  Centers
// sit at c0 + d_j with d_{j+1} = 1.5 d_j; each expansion is used only for
// |s| <= d_j / 2, half its radius of convergence, so every series converges
// like 2^-m and consecutive ranges overlap.

struct DensityEvaluator::Continuation {
  std::vector<BigFloat> center;
  std::vector<BigFloat> reach;  // d_j / 2
  std::vector<std::vector<BigFloat>> a;
  BigFloat end;
  BigFloat rel_error;
  BigFloat discrepancy;
};

namespace {

// Coefficients of p(x1 + s) in s, for p given low to high.
std::vector<BigFloat> shifted(const std::vector<BigFloat>& p, const BigFloat& x1) {
  std::vector<BigFloat> c = p;
  const std::size_t n = c.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t j = n - 1; j > k; --j) c[j - 1] += c[j] * x1;
  }
  return c;
}

std::vector<BigFloat> regular_taylor(const std::array<std::vector<BigFloat>, 4>& poly, const BigFloat& x1,
                                     const BigFloat& d0, const BigFloat& d1, const BigFloat& d2,
                                     std::size_t terms) {
  const Precision w = d0.precision();
  std::array<std::vector<BigFloat>, 4> P;
  for (int i = 0; i < 4; ++i) P[i] = shifted(poly[i], x1);
  std::vector<BigFloat> a{d0, d1, d2 / 2L};
  const BigFloat lead = P[3][0];
  for (std::size_t m = 0; a.size() < terms; ++m) {
    // Coefficient of s^m: sum_{i,j} P[i][j] a_{m-j+i} (m-j+i)!/(m-j)!.
    BigFloat acc(0L, w);
    for (int i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < P[i].size() && j <= m; ++j) {
        if (i == 3 && j == 0) continue;
        const long n = static_cast<long>(m - j);
        long fall = 1;
        for (int r = 1; r <= i; ++r) fall *= (n + r);
        acc += P[i][j] * a[static_cast<std::size_t>(n + i)] * fall;
      }
    }
    const long mm = static_cast<long>(m);
    a.push_back(-acc / (lead * ((mm + 1) * (mm + 2) * (mm + 3))));
  }
  return a;
}

// Value and first three derivatives of sum a_m s^m.
std::array<BigFloat, 4> taylor_eval(const std::vector<BigFloat>& a, const BigFloat& s, int order) {
  const Precision w = s.precision();
  std::array<BigFloat, 4> d{BigFloat(0L, w), BigFloat(0L, w), BigFloat(0L, w), BigFloat(0L, w)};
  // Horner on the derivative series.
  for (int k = 0; k <= order; ++k) {
    BigFloat acc(0L, w);
    for (std::size_t m = a.size(); m-- > static_cast<std::size_t>(k);) {
      long fall = 1;
      for (int r = 0; r < k; ++r) fall *= static_cast<long>(m) - r;
      acc = acc * s + a[m] * fall;
    }
    d[k] = acc;
  }
  return d;
}

}  // namespace

DensityEvaluator::Continuation& DensityEvaluator::continuation() {
  if (chain_) return *chain_;
  ensure_matching();
  const Precision p = opt_.precision;
  const Precision w = p + 32;
  const std::size_t terms = static_cast<std::size_t>(w) + 64;

  std::array<std::vector<BigFloat>, 4> poly;
  const auto coeffs = de3_coefficients();
  for (int i = 0; i < 4; ++i) {
    for (const QSqrt2& q : coeffs[i].coeffs()) poly[i].push_back(q.to_bigfloat(w));
  }

  auto chain = std::make_unique<Continuation>();
  const BigFloat c0w = constants::c0().to_bigfloat(w);
  BigFloat d(c0w * BigFloat(opt_.local_fraction, w));
  std::array<BigFloat, 4> jet{BigFloat(anchor_->derivative(0), w), BigFloat(anchor_->derivative(1), w),
                              BigFloat(anchor_->derivative(2), w), BigFloat(0L, w)};
  const BigFloat end(opt_.continuation_end, w);
  while (true) {
    const BigFloat x1 = c0w + d;
    chain->center.push_back(x1);
    chain->reach.push_back(d / 2L);
    chain->a.push_back(regular_taylor(poly, x1, jet[0], jet[1], jet[2], terms));
    if (d * 3L / 2L >= end) break;
    jet = taylor_eval(chain->a.back(), d / 2L, 2);
    d = d * 3L / 2L;
  }
  chain->end = c0w + d * 3L / 2L;

  // Check against the Heun product at the far end of the chain.
  const BigFloat x_end(c0w + end, p);
  BigFloat heun_err(0L, p);
  const Jet h = v2_heun_impl(x_end, &heun_err, 0);
  const auto &last = chain->a.back();
  const std::array<BigFloat, 4> cv = taylor_eval(last, BigFloat(x_end, w) - chain->center.back(), 0);
  chain->discrepancy = BigFloat(abs(cv[0] - BigFloat(h.value(), w)) / abs(h.value()), p);
  chain->rel_error = BigFloat(max(chain->discrepancy, anchor_rel_error_) * 4L + relative(heun_err, h.value()), p);
  chain_ = std::move(chain);
  return *chain_;
}

BigFloat DensityEvaluator::continuation_discrepancy() { return continuation().discrepancy; }

Jet DensityEvaluator::continued_jet(const BigFloat& x, BigFloat* error, int order) {
  Continuation& ch = continuation();
  const Precision p = opt_.precision;
  const BigFloat xw(x, ch.center.front().precision());
  // The center whose range holds x with the most room to spare.
  std::size_t best = 0;
  BigFloat best_ratio(2L, p);
  for (std::size_t j = 0; j < ch.center.size(); ++j) {
    const BigFloat r = abs(xw - ch.center[j]) / ch.reach[j];
    if (r < best_ratio) {
      best_ratio = BigFloat(r, p);
      best = j;
    }
  }
  if (best_ratio > 1L) throw DensityError("v2: x outside the continuation chain");
  const std::array<BigFloat, 4> d = taylor_eval(ch.a[best], xw - ch.center[best], order);
  const Jet v = Jet::from_derivatives(BigFloat(d[0], p), BigFloat(d[1], p), BigFloat(d[2], p),
                                      BigFloat(d[3], p));
  if (error) *error = abs(v.value()) * ch.rel_error;
  return v;
}

Jet DensityEvaluator::v2_impl(const BigFloat& x_in, BigFloat* error, bool* local, int order) {
  const Precision p = opt_.precision;
  const BigFloat x(x_in, p);
  const BigFloat xm = c0_ * (1L + BigFloat(opt_.local_fraction, p));
  if (x < c0_ || !(x < c_)) throw DensityError("v2: need c0 <= x < c");
  if (local) *local = x < xm;
  if (!(x < xm)) {
    if (opt_.use_continuation && x - c0_ < BigFloat(opt_.continuation_end, p)) {
      if (local) *local = true;
      return continued_jet(x, error, order);
    }
    return v2_heun_impl(x, error, order);
  }

  ensure_matching();
  BigFloat rel(0L, p);
  const std::array<Jet, 3> y = local_basis_jets(x - c0_, &rel, order);
  Jet v = Jet::constant(BigFloat(0L, p));
  BigFloat mag(0L, p);
  for (int i = 0; i < 3; ++i) {
    v += y[i] * (*match_)[i];
    mag += abs(y[i].value() * (*match_)[i]);
  }
  if (error) *error = mag * (match_rel_error_ + rel) + abs(v.value()) * unit_roundoff(p) * 64L;
  return v;
}

Jet DensityEvaluator::u0_jet(const BigFloat& x, BigFloat* error) { return u0_impl(x, error, 3); }
Jet DensityEvaluator::v0_jet(const BigFloat& x, BigFloat* error) { return v0_impl(x, error, 3); }
Jet DensityEvaluator::uinf_jet(const BigFloat& x, BigFloat* error) { return uinf_impl(x, error, 3); }
Jet DensityEvaluator::v2_heun_jet(const BigFloat& x, BigFloat* error) {
  return v2_heun_impl(x, error, 3);
}
Jet DensityEvaluator::v2_jet(const BigFloat& x, BigFloat* error, bool* local) {
  return v2_impl(x, error, local, 3);
}

namespace {

DensityPoint make_point(const BigFloat& x, const Jet& j, const BigFloat& err, DensityBranch b) {
  DensityPoint d;
  d.route = "closed form";
  d.x = x;
  d.value = j.value();
  d.error_bound = err;
  d.branch = b;
  return d;
}

}  // namespace

DensityPoint DensityEvaluator::u0(const BigFloat& x) {
  BigFloat err(opt_.precision);
  const Jet j = u0_impl(x, &err, 0);
  return make_point(BigFloat(x, opt_.precision), j, err, DensityBranch::left);
}

DensityPoint DensityEvaluator::v0(const BigFloat& x) {
  BigFloat err(opt_.precision);
  const Jet j = v0_impl(x, &err, 0);
  return make_point(BigFloat(x, opt_.precision), j, err, DensityBranch::left);
}

DensityPoint DensityEvaluator::uinf(const BigFloat& x) {
  BigFloat err(opt_.precision);
  const Jet j = uinf_impl(x, &err, 0);
  return make_point(BigFloat(x, opt_.precision), j, err, DensityBranch::left);
}

DensityPoint DensityEvaluator::v2(const BigFloat& x_in) {
  const Precision p = opt_.precision;
  const BigFloat x(x_in, p);
  if (x == c_) return make_point(x, Jet::constant(BigFloat(0L, p)), BigFloat(0L, p), DensityBranch::right);
  DensityPoint d;
  d.x = x;
  d.branch = DensityBranch::right;
  try {
    BigFloat err(p);
    bool local = false;
    const Jet j = v2_impl(x, &err, &local, 0);
    d.value = j.value();
    d.error_bound = err;
    d.local_expansion = local;
    const BigFloat xm = c0_ * (1L + BigFloat(opt_.local_fraction, p));
    if (x < xm) {
      d.route = "frobenius at c0";
    } else {
      d.route = local ? "continuation" : "heun";
    }
  } catch (const HeunError& e) {
    d.converged = false;
    d.message = e.what();
    d.value = BigFloat(0L, p);
    d.error_bound = BigFloat(0L, p);
  }
  return d;
}

DensityPoint DensityEvaluator::phi(const BigFloat& x_in) {
  const Precision p = opt_.precision;
  const BigFloat x(x_in, p);
  if (!(x.sign() > 0) || x > c_) throw DensityError("phi: need 0 < x <= c");
  const EndpointConstants k = endpoint_constants(p);
  DensityPoint d = x < c0_ ? v0(x) : v2(x);
  const BigFloat& s = x < c0_ ? k.scale_left : k.scale_right;
  d.value *= s;
  d.error_bound = abs(d.error_bound * s);
  return d;
}

BigFloat DensityEvaluator::phi_right_limit_at_c0() { return phi(c0_).value; }

BigFloat DensityEvaluator::phi_left_limit_at_c0() {
  return v0(c0_).value * endpoint_constants(opt_.precision).scale_left;
}

DensityPoint u0_eval(const BigFloat& x, Precision prec) {
  DensityOptions o;
  o.precision = prec;
  return DensityEvaluator(o).u0(x);
}

DensityPoint v0_eval(const BigFloat& x, Precision prec) {
  DensityOptions o;
  o.precision = prec;
  return DensityEvaluator(o).v0(x);
}

DensityPoint v2_eval(const BigFloat& x, Precision prec) {
  DensityOptions o;
  o.precision = prec;
  return DensityEvaluator(o).v2(x);
}

DensityPoint uinf_eval(const BigFloat& x, Precision prec) {
  DensityOptions o;
  o.precision = prec;
  return DensityEvaluator(o).uinf(x);
}

DensityPoint phi(const BigFloat& x, Precision prec) {
  DensityOptions o;
  o.precision = prec;
  return DensityEvaluator(o).phi(x);
}

std::vector<Rational> u0_coeffs(std::size_t N) {
  using S = PowerSeries<Rational>;
  const std::size_t n = N + 1;
  S X = S::monomial(1, n);
  S D = S::one(n) - X * Rational(34) + S::monomial(2, n);
  const S root = D.nth_root(2);
  const S P = S::one(n) - X * Rational(24) + S::monomial(2, n, Rational(30)) + S::monomial(3, n);
  const S Q = S::one(n) - X * Rational(7) + S::monomial(2, n);
  const S mu_sq = S::one(n) * Rational(4) / (S::one(n) * Rational(3) - X * Rational(3) + root);
  const S lambda = S::monomial(2, n, Rational(54)) / (P + Q * root);

  // F(z) = sum f_k z^k with f_{k+1} = f_k (3k+1)(3k+2) / (9 (k+1)^2).
  std::vector<Rational> f(n);
  f[0] = Rational(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const long kl = static_cast<long>(k);
    f[k + 1] = f[k] * make_rational((3 * kl + 1) * (3 * kl + 2), 9 * (kl + 1) * (kl + 1));
  }
  const S F = S(f, n).compose(lambda);
  const S u = mu_sq * F * F;
  return u.coeffs();
}

}  // namespace stieltjes
