#include "stieltjes/hyper.hpp"

#include "stieltjes/qsqrt2.hpp"

#include <algorithm>
#include <numeric>

namespace stieltjes {

namespace {

constexpr std::size_t kMaxTerms = 200000;

long falling(long n, int k) {
  long r = 1;
  for (int j = 0; j < k; ++j) r *= (n - j);
  return r;
}

long factorial(long n) {
  long r = 1;
  for (long j = 2; j <= n; ++j) r *= j;
  return r;
}

}  // namespace

const char* to_string(HyperBranch b) {
  return b == HyperBranch::series ? "series" : "connection";
}

GaussF21::GaussF21(Precision prec)
    : prec_(prec), work_(prec + 32), scale_(sqrt(BigFloat(3L, prec + 32)) / (const_pi(prec + 32) * 2L)) {
  f_.emplace_back(1L, work_);
  h_.push_back(log(BigFloat(3L, work_)) * 3L);
}

void GaussF21::ensure(std::size_t n) const {
  while (f_.size() <= n) {
    const long m = static_cast<long>(f_.size()) - 1;
    f_.push_back(f_[m] * ((3 * m + 1) * (3 * m + 2)) / (9 * (m + 1) * (m + 1)));
    BigFloat h = h_[m];
    h += BigFloat(2L, work_) / (m + 1);
    h -= BigFloat(3L, work_) / (3 * m + 1);
    h -= BigFloat(3L, work_) / (3 * m + 2);
    h_.push_back(std::move(h));
  }
}

const BigFloat& GaussF21::coefficient(std::size_t n) const {
  ensure(n);
  return f_[n];
}

HyperJetEval GaussF21::series(const BigFloat& z_in, int order) const {
  const int K = std::clamp(order, 0, 3);
  const BigFloat z(z_in, work_);
  if (z.sign() < 0 || !(z < 1L)) throw HyperError("2F1 series: need 0 <= z < 1");
  const BigFloat u = unit_roundoff(work_);
  const BigFloat target = ldexp(BigFloat(1L, work_), -static_cast<long>(work_));

  std::array<BigFloat, 4> sum{BigFloat(work_), BigFloat(work_), BigFloat(work_), BigFloat(work_)};
  std::array<BigFloat, 4> pw = sum;  // pw[j] = z^(n-j)
  pw[0] = BigFloat(1L, work_);
  HyperJetEval out;
  out.branch = HyperBranch::series;
  for (std::size_t n = 0; n < kMaxTerms; ++n) {
    ensure(n + 1);
    for (int k = 0; k <= K; ++k) {
      if (static_cast<long>(n) >= k) sum[k] += f_[n] * pw[k] * falling(static_cast<long>(n), k);
    }
    for (int j = 3; j > 0; --j) pw[j] = pw[j - 1];
    pw[0] *= z;
    if (n < 8) continue;
    const long N = static_cast<long>(n) + 1;
    bool done = true;
    std::array<BigFloat, 4> tail = sum;
    for (int k = 0; k <= K && done; ++k) {
      // Term ratios are bounded by ((N+1)/(N+1-k)) z since f_{n+1} < f_n.
      const BigFloat rho = z * (N + 1) / (N + 1 - k);
      if (!(rho < 1L)) {
        done = false;
        break;
      }
      tail[k] = f_[N] * pw[k] * falling(N, k) / (1L - rho);
      if (tail[k] > target * sum[k]) done = false;
    }
    if (!done) continue;
    for (int k = 0; k <= K; ++k) {
      out.d[k] = BigFloat(sum[k], prec_);
      out.error_bound[k] = BigFloat(tail[k] + sum[k] * u * (8 * (N + 8)), prec_);
    }
    return out;
  }
  throw HyperError("2F1 series: too many terms (z too close to 1)");
}

HyperJetEval GaussF21::connection(const BigFloat& delta_in, int order) const {
  const int K = std::clamp(order, 0, 3);
  const BigFloat delta(delta_in, work_);
  if (!(delta.sign() > 0) || !(delta < 1L)) throw HyperError("2F1 connection: need 0 < 1-z < 1");
  const BigFloat u = unit_roundoff(work_);
  const BigFloat target = ldexp(BigFloat(1L, work_), -static_cast<long>(work_));
  const BigFloat L = log(delta);
  const BigFloat inv = 1L / delta;
  const BigFloat majorant_factor = h_[0] - L + static_cast<long>(K);

  std::array<BigFloat, 4> sum{BigFloat(work_), BigFloat(work_), BigFloat(work_), BigFloat(work_)};
  std::array<BigFloat, 4> abs_sum = sum;
  std::array<BigFloat, 4> pw = sum;  // pw[k] = delta^(n-k)
  pw[0] = BigFloat(1L, work_);
  for (int k = 1; k <= 3; ++k) pw[k] = pw[k - 1] * inv;

  HyperJetEval out;
  out.branch = HyperBranch::connection;
  for (std::size_t n = 0; n < kMaxTerms; ++n) {
    ensure(n + 1);
    const long nl = static_cast<long>(n);
    const BigFloat hl = h_[n] - L;
    for (int k = 0; k <= K; ++k) {
      // d^k/d delta^k [delta^n (h_n - log delta)] = delta^(n-k) [n^(k) (h_n - L) - e_{n,k}]
      BigFloat e(work_);
      if (nl >= k) {
        for (long j = nl - k + 1; j <= nl; ++j) e += BigFloat(1L, work_) / j;
        e *= falling(nl, k);
      } else {
        const long sign = ((k - nl - 1) % 2 == 0) ? 1 : -1;
        e = BigFloat(sign * factorial(nl) * factorial(k - nl - 1), work_);
      }
      const BigFloat t = f_[n] * pw[k] * (hl * falling(nl, k) - e);
      sum[k] += t;
      abs_sum[k] += abs(t);
    }
    for (int k = 0; k <= 3; ++k) pw[k] *= delta;
    if (nl < K + 4) continue;
    const long N = nl + 1;
    bool done = true;
    std::array<BigFloat, 4> tail = sum;
    for (int k = 0; k <= K && done; ++k) {
      const BigFloat rho = delta * (N + 1) / (N + 1 - k);
      if (!(rho < 1L)) {
        done = false;
        break;
      }
      tail[k] = f_[N] * pw[k] * falling(N, k) * majorant_factor / (1L - rho);
      if (tail[k] > target * abs(sum[k])) done = false;
    }
    if (!done) continue;
    for (int k = 0; k <= K; ++k) {
      BigFloat v = sum[k] * scale_;
      if (k % 2 == 1) v = -v;  // d/dz = -d/d delta
      out.d[k] = BigFloat(v, prec_);
      out.error_bound[k] = BigFloat((tail[k] + abs_sum[k] * u * (8 * (N + 8))) * scale_, prec_);
    }
    return out;
  }
  throw HyperError("2F1 connection: too many terms");
}

HyperJetEval GaussF21::eval(const BigFloat& z, const BigFloat& one_minus_z, int order) const {
  if (z.sign() < 0 || !(z < 1L)) throw HyperError("2F1: argument must lie in [0, 1)");
  if (z <= BigFloat(kSwitch, work_)) return series(z, order);
  return connection(one_minus_z, order);
}

HyperJetEval GaussF21::eval(const BigFloat& z, int order) const {
  const BigFloat zz(z, work_);
  return eval(zz, 1L - zz, order);
}

HyperEval f21_eval(const BigFloat& z, Precision prec) {
  const GaussF21 f(prec);
  const HyperJetEval e = f.eval(z, 0);
  return {BigFloat(z, prec), e.d[0], e.error_bound[0], e.branch};
}

BigFloat f21_deriv(const BigFloat& z, Precision prec) {
  if (z > BigFloat(15L, prec) / 16L) {
    throw HyperError("2F1 derivative: z too close to 1 for the series (limit 15/16)");
  }
  const GaussF21 f(prec);
  return f.series(z, 1).d[1];
}

BigFloat digamma_rational(long p, long q, Precision prec) {
  if (p <= 0 || q <= 0 || p > q) throw HyperError("digamma_rational: need 0 < p <= q");
  const long g = std::gcd(p, q);
  p /= g;
  q /= g;
  const Precision w = prec + 32;
  const BigFloat gamma_e = const_euler(w);
  if (p == q) return BigFloat(-gamma_e, prec);
  const BigFloat pi = const_pi(w);
  // psi(p/q) = -gamma - log(2q) - (pi/2) cot(pi p/q)
  //            + 2 sum_{k=1}^{floor((q-1)/2)} cos(2 pi k p/q) log sin(pi k/q)
  BigFloat r = -gamma_e - log(BigFloat(2 * q, w)) - pi / 2L * cot(pi * p / q);
  for (long k = 1; 2 * k <= q - 1; ++k) {
    r += cos(pi * (2 * k * p) / q) * log(sin(pi * k / q)) * 2L;
  }
  return BigFloat(r, prec);
}

HyperEval constant_K(Precision prec) {
  const Precision w = prec + 32;
  const BigFloat target = ldexp(BigFloat(1L, w), -static_cast<long>(w));
  BigFloat term(1L, w);
  BigFloat sum(w);
  for (long n = 0; n < static_cast<long>(kMaxTerms); ++n) {
    sum += term;
    // (1/6)_n (1/3)_n / (n!)^2 (1/2)^n; the ratio is at most 1/2.
    term = term * ((6 * n + 1) * (3 * n + 1)) / (36 * (n + 1) * (n + 1));
    const BigFloat tail = term * 2L;
    if (tail <= target * sum) {
      const BigFloat err = tail + sum * unit_roundoff(w) * (4 * (n + 8));
      return {BigFloat(BigFloat(1L, w) / 2L, prec), BigFloat(sum, prec), BigFloat(err, prec),
              HyperBranch::series};
    }
  }
  throw HyperError("constant_K: series did not converge");
}

BigFloat constant_K_gamma_product(Precision prec) {
  const Precision w = prec + 32;
  const BigFloat pi = const_pi(w);
  BigFloat prod(1L, w);
  for (long k : {1L, 5L, 7L, 11L}) prod *= gamma(BigFloat(k, w) / 24L);
  const BigFloat pref = root(BigFloat(3L, w), 4) * sqrt(BigFloat(2L, w)) / (pow(pi, mpq_class(3, 2)) * 8L);
  return BigFloat(pref * sqrt(prod), prec);
}

SpecialConstants special_constants(Precision prec) {
  const GaussF21 f(prec);
  const BigFloat z0 = constants::z0().to_bigfloat(prec);
  const HyperJetEval at = f.series(z0, 1);
  return {BigFloat(const_euler(prec)),
          digamma_rational(1, 3, prec),
          digamma_rational(2, 3, prec),
          constant_K(prec).value,
          at.d[0],
          at.d[1],
          z0};
}

}  // namespace stieltjes
