#include "stieltjes/heun.hpp"

#include "stieltjes/field.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace stieltjes {

namespace {

QSqrt2 half(long num) { return QSqrt2(make_rational(num, 2)); }

bool is_nonpositive_integer(const QSqrt2& x) {
  if (!x.is_rational()) return false;
  const Rational& r = x.rational_part();
  return r.get_den() == 1 && sgn(r) <= 0;
}

using Poly = Polynomial<QSqrt2>;

Poly lin(const QSqrt2& c0, const QSqrt2& c1) { return Poly::linear(c0, c1); }

}  // namespace

void HeunParams::validate() const {
  if (a.is_zero()) throw HeunError("Heun parameter a must be nonzero");
  if (is_nonpositive_integer(gamma)) {
    throw HeunError("Heun parameter gamma must not be zero or a negative integer");
  }
}

QSqrt2 HeunParams::R(const QSqrt2& n) const { return a * (n + QSqrt2(1)) * (n + gamma); }

QSqrt2 HeunParams::Q(const QSqrt2& n) const {
  return n * ((n - QSqrt2(1) + gamma) * (QSqrt2(1) + a) + a * delta + epsilon());
}

QSqrt2 HeunParams::P(const QSqrt2& n) const {
  return (n - QSqrt2(1) + alpha) * (n - QSqrt2(1) + beta);
}

Poly HeunParams::R_poly() const { return lin(QSqrt2(1), QSqrt2(1)) * lin(gamma, QSqrt2(1)) * a; }

Poly HeunParams::Q_poly() const {
  const Poly inner = lin(gamma - QSqrt2(1), QSqrt2(1)) * (QSqrt2(1) + a) +
                     Poly::constant(a * delta + epsilon());
  return lin(QSqrt2(0), QSqrt2(1)) * inner;
}

Poly HeunParams::P_poly() const {
  return lin(alpha - QSqrt2(1), QSqrt2(1)) * lin(beta - QSqrt2(1), QSqrt2(1));
}

namespace heun_cases {

HeunParams first_factor() {
  return {constants::a1(), constants::q1(), half(3), half(3), half(3), QSqrt2(1)};
}

HeunParams second_factor() {
  return {constants::a1(), constants::q2(), QSqrt2(1), QSqrt2(1), half(1), QSqrt2(1)};
}

HeunParams u0_root() {
  return {constants::a2(), constants::q4(), half(1), half(1), QSqrt2(1), half(1)};
}

}  // namespace heun_cases

QSqrt2 HeunSeries::residual(std::size_t n) const {
  const QSqrt2 nn(static_cast<long>(n));
  return params.R(nn) * coeffs.at(n + 1) - (params.q + params.Q(nn)) * coeffs.at(n) +
         params.P(nn) * coeffs.at(n - 1);
}

HeunSeries heun_coeffs(const HeunParams& params, std::size_t N) {
  params.validate();
  HeunSeries s{params, {}};
  s.coeffs.reserve(N + 1);
  s.coeffs.emplace_back(1);
  if (N == 0) return s;
  s.coeffs.push_back(params.q / (params.a * params.gamma));
  for (std::size_t n = 1; n < N; ++n) {
    const QSqrt2 nn(static_cast<long>(n));
    const QSqrt2 next = ((params.q + params.Q(nn)) * s.coeffs[n] - params.P(nn) * s.coeffs[n - 1]) /
                        params.R(nn);
    s.coeffs.push_back(next);
  }
  return s;
}

// ---------------------------------------------------------------------------

namespace {

QSqrt2 lower_bracket(const Rational& kappa, unsigned n) {
  return QSqrt2(Rational(1) - Rational(1) / (kappa * n));
}

std::vector<InequalityWitness> induction_polynomials(const HeunParams& hp, unsigned N0,
                                                     const Rational& kappa) {
  const QSqrt2 k(kappa);
  const QSqrt2 one(1);
  const Poly R = hp.R_poly();
  const Poly qQ = hp.Q_poly() + Poly::constant(hp.q);
  const Poly P = hp.P_poly();
  const Poly kn = lin(QSqrt2(0), k);             // kappa n
  const Poly kn_m1 = lin(-one, k);               // kappa n - 1
  const Poly kn1 = lin(k, k);                    // kappa (n+1)
  const Poly kn1_m1 = lin(k - one, k);           // kappa (n+1) - 1
  const QSqrt2& a = hp.a;

  // T(r) = (q + Q_n)/R_n - P_n/(R_n r) is increasing in r, so it suffices to
  // push both ends of the bracket through T.  Each inequality below is the
  // corresponding comparison multiplied by a positive denominator.
  std::vector<InequalityWitness> w(4);
  w[0].name = "lower end maps above the next lower end";
  w[0].in_n = qQ * kn_m1 * kn1 - P * kn * kn1 - kn1_m1 * kn_m1 * R;
  w[1].name = "lower end maps below 1/a";
  w[1].in_n = R * kn_m1 - (qQ * kn_m1 - P * kn) * a;
  w[2].name = "upper end maps below 1/a";
  w[2].in_n = R - qQ * a + P * (a * a);
  w[3].name = "upper end maps above the next lower end";
  w[3].in_n = (qQ - P * a) * kn1 - kn1_m1 * R;

  const QSqrt2 shift(static_cast<long>(N0));
  for (auto& wit : w) {
    wit.in_m = wit.in_n.taylor_shift(shift);
    const auto& cs = wit.in_m.coeffs();
    bool ok = !cs.empty() && qsqrt2_sign(cs[0]) > 0;
    for (const auto& c : cs) ok = ok && qsqrt2_sign(c) >= 0;
    wit.certified = ok;
  }
  return w;
}

}  // namespace

std::optional<unsigned> scan_ratio_bracket(const HeunParams& params, unsigned N0,
                                           const Rational& kappa, unsigned n_last) {
  const HeunSeries s = heun_coeffs(params, n_last);
  const QSqrt2 upper = params.a.inverse();
  for (unsigned n = std::max(N0, 1U); n <= n_last; ++n) {
    if (qsqrt2_sign(s.coeffs[n - 1]) <= 0) return n;
    const QSqrt2 r = s.coeffs[n] / s.coeffs[n - 1];
    if (!(lower_bracket(kappa, n) < r && r < upper)) return n;
  }
  return std::nullopt;
}

PositivityCertificate certify_positive(const HeunParams& params, unsigned N0,
                                       const Rational& kappa) {
  PositivityCertificate cert;
  cert.params = params;
  cert.N0 = N0;
  cert.kappa = kappa;
  params.validate();

  if (!(qsqrt2_sign(params.a) > 0 && params.a < QSqrt2(1))) {
    cert.failure = CertificationFailure{"parameter range", std::nullopt,
                                        "the bracket argument needs 0 < a < 1"};
    return cert;
  }
  if (N0 == 0 || sgn(kappa) <= 0) {
    cert.failure = CertificationFailure{"parameter range", std::nullopt,
                                        "need N0 >= 1 and kappa > 0"};
    return cert;
  }

  // Base: p_0..p_N0 > 0 and the bracket at N0.
  const HeunSeries s = heun_coeffs(params, N0);
  for (unsigned n = 0; n <= N0; ++n) {
    if (qsqrt2_sign(s.coeffs[n]) <= 0) {
      std::ostringstream os;
      os << "p_" << n << " = " << s.coeffs[n] << " is not positive";
      cert.failure = CertificationFailure{"base positivity", static_cast<long>(n), os.str()};
      return cert;
    }
  }
  const QSqrt2 r = s.coeffs[N0] / s.coeffs[N0 - 1];
  const QSqrt2 lower = lower_bracket(kappa, N0);
  const QSqrt2 upper = params.a.inverse();
  if (!(lower < r && r < upper)) {
    std::ostringstream os;
    os << "r_" << N0 << " lies outside (1 - 1/(kappa N0), 1/a)";
    cert.failure = CertificationFailure{"base bracket", static_cast<long>(N0), os.str()};
    return cert;
  }
  cert.base_checked = true;

  cert.witnesses = induction_polynomials(params, N0, kappa);
  for (const auto& wit : cert.witnesses) {
    if (wit.certified) continue;
    CertificationFailure f{wit.name, std::nullopt, {}};
    for (long n = N0; n <= static_cast<long>(N0) + 1000; ++n) {
      if (qsqrt2_sign(wit.in_n(QSqrt2(n))) <= 0) {
        f.counterexample = n;
        break;
      }
    }
    f.message = f.counterexample
                    ? "inequality fails at n = " + std::to_string(*f.counterexample)
                    : "shift-and-expand inconclusive; no counterexample up to N0 + 1000";
    cert.failure = f;
    return cert;
  }
  cert.induction_checked = true;
  return cert;
}

// ---------------------------------------------------------------------------

HeunEvaluator::HeunEvaluator(HeunParams params) : params_(std::move(params)) {
  params_.validate();
}

void HeunEvaluator::attach_certificate(const PositivityCertificate& certificate) {
  if (!certificate.valid() || !(certificate.params.a == params_.a) ||
      !(certificate.params.q == params_.q)) {
    throw HeunError("certificate does not apply to these parameters");
  }
  certified_from_ = certificate.N0;
}

HeunEvaluator::Stream& HeunEvaluator::stream(Precision precision) {
  for (auto& s : streams_) {
    if (s.precision == precision) return s;
  }
  Stream s;
  s.precision = precision;
  s.a = params_.a.to_bigfloat(precision);
  s.q = params_.q.to_bigfloat(precision);
  s.alpha = params_.alpha.to_bigfloat(precision);
  s.beta = params_.beta.to_bigfloat(precision);
  s.gamma = params_.gamma.to_bigfloat(precision);
  s.delta = params_.delta.to_bigfloat(precision);
  s.epsilon = params_.epsilon().to_bigfloat(precision);
  s.p.emplace_back(1L, precision);
  s.p.push_back(s.q / (s.a * s.gamma));
  streams_.push_back(std::move(s));
  return streams_.back();
}

void HeunEvaluator::extend(Stream& s, std::size_t n) {
  // Forward recursion follows the dominant solution, so it is stable.
  const BigFloat one_plus_a = s.a + 1L;
  const BigFloat tail = s.a * s.delta + s.epsilon;
  while (s.p.size() <= n) {
    const std::size_t m = s.p.size() - 1;  // compute p_{m+1}
    const long mm = static_cast<long>(m);
    const BigFloat Rn = s.a * (mm + 1) * (s.gamma + mm);
    const BigFloat Qn = ((s.gamma + (mm - 1)) * one_plus_a + tail) * mm;
    const BigFloat Pn = (s.alpha + (mm - 1)) * (s.beta + (mm - 1));
    s.p.push_back(((s.q + Qn) * s.p[m] - Pn * s.p[m - 1]) / Rn);
  }
}

namespace {

long falling(long n, int k) {
  long r = 1;
  for (int j = 0; j < k; ++j) r *= (n - j);
  return r;
}

}  // namespace

HeunEval HeunEvaluator::eval_at(const BigFloat& z_in, const HeunEvalOptions& opt, Precision prec) {
  const Precision work = prec + 32;
  Stream& s = stream(work);
  const BigFloat z(z_in, work);
  const BigFloat az = abs(z);
  const int K = std::clamp(opt.derivatives, 0, 3);

  HeunEval out;
  out.precision_used = prec;
  std::array<BigFloat, 4> sum{BigFloat(work), BigFloat(work), BigFloat(work), BigFloat(work)};
  std::array<BigFloat, 4> abs_sum = sum;
  std::array<BigFloat, 4> pw = sum;  // pw[j] = z^(n-j)
  pw[0] = BigFloat(1L, work);
  const BigFloat abs_a = abs(s.a);
  const BigFloat tol(opt.rel_tolerance, work);
  const BigFloat u = unit_roundoff(work);

  std::size_t n = 0;
  BigFloat max_recent_ratio(work);
  for (; n < opt.max_terms; ++n) {
    extend(s, n + 1);
    const BigFloat& pn = s.p[n];
    for (int k = 0; k <= K; ++k) {
      if (static_cast<long>(n) < k) continue;
      const BigFloat t = pn * pw[k] * falling(static_cast<long>(n), k);
      sum[k] += t;
      abs_sum[k] += abs(t);
    }
    // Track the observed coefficient ratio for the heuristic tail.
    if (n >= 1 && !s.p[n].is_zero()) {
      const BigFloat ratio = abs(s.p[n + 1] / s.p[n]) * az;
      if (n % 64 == 0) max_recent_ratio = ratio;
      else if (ratio > max_recent_ratio) max_recent_ratio = ratio;
    }
    for (int j = 3; j > 0; --j) pw[j] = pw[j - 1];
    pw[0] *= z;

    if (n < 8 || (n + 1) % 32 != 0) continue;
    const std::size_t N = n + 1;  // first omitted index
    bool rigorous = certified_from_ && N >= *certified_from_;
    bool done = true;
    std::array<BigFloat, 4> tail = sum;
    for (int k = 0; k <= K; ++k) {
      const BigFloat growth = BigFloat(static_cast<long>(N + 1), work) / static_cast<long>(N + 1 - k);
      const BigFloat rho = rigorous ? growth * az / abs_a : growth * max_recent_ratio;
      if (!(rho < 1L)) {
        done = false;
        break;
      }
      const BigFloat next = abs(s.p[N] * pw[k]) * falling(static_cast<long>(N), k);
      tail[k] = next / (1L - rho);
      if (!rigorous) tail[k] *= 2L;
      if (tail[k] > tol * abs(sum[k])) {
        done = false;
        break;
      }
    }
    if (!done) continue;
    out.converged = true;
    out.rigorous_tail = rigorous;
    out.terms = N;
    for (int k = 0; k <= K; ++k) {
      const BigFloat roundoff = abs_sum[k] * u * static_cast<long>(8 * (N + 16));
      out.value[k] = BigFloat(sum[k], prec);
      out.error_bound[k] = BigFloat(tail[k] + roundoff, prec);
    }
    return out;
  }
  out.terms = n;
  for (int k = 0; k <= K; ++k) {
    out.value[k] = BigFloat(sum[k], prec);
    out.error_bound[k] = BigFloat(prec);
  }
  out.message = "max_terms exhausted before the tail bound met the tolerance";
  return out;
}

HeunEval HeunEvaluator::eval(const BigFloat& z, const HeunEvalOptions& options) {
  const BigFloat radius = min(BigFloat(1L, options.precision), abs(params_.a.to_bigfloat(options.precision)));
  if (!(abs(z) < radius)) throw HeunError("Heun series evaluated outside its disk of convergence");
  Precision prec = options.precision;
  while (true) {
    HeunEval r = eval_at(z, options, prec);
    if (!r.converged) return r;
    // Escalate when the roundoff allowance dominates the requested tolerance.
    bool roundoff_ok = true;
    for (int k = 0; k <= std::clamp(options.derivatives, 0, 3); ++k) {
      const BigFloat limit = BigFloat(options.rel_tolerance, prec) * abs(r.value[k]) * 2L;
      if (r.error_bound[k] > limit) roundoff_ok = false;
    }
    if (roundoff_ok || prec * 2 > options.max_precision) return r;
    prec *= 2;
  }
}

HeunEval heun_eval(const HeunParams& params, const BigFloat& z, const HeunEvalOptions& options) {
  HeunEvaluator ev(params);
  return ev.eval(z, options);
}

}  // namespace stieltjes
