#pragma once

#include "stieltjes/bigfloat.hpp"
#include "stieltjes/polynomial.hpp"
#include "stieltjes/qsqrt2.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stieltjes {

class HeunError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Parameters of HeunG(a, q; alpha, beta, gamma, delta; z).  epsilon is
// derived from alpha + beta + 1 = gamma + delta + epsilon.
struct HeunParams {
  QSqrt2 a;
  QSqrt2 q;
  QSqrt2 alpha;
  QSqrt2 beta;
  QSqrt2 gamma;
  QSqrt2 delta;

  QSqrt2 epsilon() const { return alpha + beta + QSqrt2(1) - gamma - delta; }
  // Throws HeunError if a = 0 or gamma is zero or a negative integer.
  void validate() const;

  // Recurrence data R_n p_{n+1} - (q + Q_n) p_n + P_n p_{n-1} = 0.
  QSqrt2 R(const QSqrt2& n) const;
  QSqrt2 Q(const QSqrt2& n) const;
  QSqrt2 P(const QSqrt2& n) const;

  // The same data as polynomials in n.
  Polynomial<QSqrt2> R_poly() const;
  Polynomial<QSqrt2> Q_poly() const;
  Polynomial<QSqrt2> P_poly() const;
};

namespace heun_cases {

HeunParams first_factor();   // (a1, q1; 3/2, 3/2, 3/2, 1)
HeunParams second_factor();  // (a1, q2; 1, 1, 1/2, 1)
HeunParams u0_root();        // (a2, q4; 1/2, 1/2, 1, 1/2)

}  // namespace heun_cases

struct HeunSeries {
  HeunParams params;
  std::vector<QSqrt2> coeffs;  // p_0 .. p_N

  // Residual R_n p_{n+1} - (q + Q_n) p_n + P_n p_{n-1}; n in [1, N-1].
  QSqrt2 residual(std::size_t n) const;
};

HeunSeries heun_coeffs(const HeunParams& params, std::size_t N);

// ---------------------------------------------------------------------------
// Positivity certificates.

struct InequalityWitness {
  std::string name;
  Polynomial<QSqrt2> in_n;  // must be > 0 for integers n >= N0
  Polynomial<QSqrt2> in_m;  // in_n(N0 + m), every coefficient >= 0
  bool certified = false;
};

struct CertificationFailure {
  std::string check;
  std::optional<long> counterexample;  // smallest failing n found, if any
  std::string message;
};

struct PositivityCertificate {
  HeunParams params;
  unsigned N0 = 0;
  Rational kappa;
  bool base_checked = false;
  bool induction_checked = false;
  std::vector<InequalityWitness> witnesses;
  std::optional<CertificationFailure> failure;

  bool valid() const { return base_checked && induction_checked && !failure; }
};

// Exact proof that every Maclaurin coefficient is positive, by induction on
// r_n = p_n / p_{n-1} with the bracket 1 - 1/(kappa n) < r_n < 1/a.
PositivityCertificate certify_positive(const HeunParams& params, unsigned N0,
                                       const Rational& kappa);

// First n in [N0, n_last] at which the bracket on r_n fails, if any.
std::optional<unsigned> scan_ratio_bracket(const HeunParams& params, unsigned N0,
                                           const Rational& kappa, unsigned n_last);

// ---------------------------------------------------------------------------
// Numeric evaluation.

struct HeunEvalOptions {
  Precision precision = kDefaultPrecision;
  double rel_tolerance = 1e-40;
  std::size_t max_terms = 1'000'000;
  Precision max_precision = 4096;
  int derivatives = 0;  // also return d^k/dz^k for k <= derivatives (<= 3)
};

struct HeunEval {
  std::array<BigFloat, 4> value;        // value and derivatives in z
  std::array<BigFloat, 4> error_bound;  // absolute bounds per entry
  bool converged = false;
  bool rigorous_tail = false;  // tail bound backed by a certificate
  std::size_t terms = 0;
  Precision precision_used = 0;
  std::string message;
};

// Caches numeric coefficient streams per precision.  Not thread-safe; build
// one per thread.
class HeunEvaluator {
public:
  explicit HeunEvaluator(HeunParams params);
  // Coefficient ratios are then bounded by 1/a beyond certificate.N0.
  void attach_certificate(const PositivityCertificate& certificate);

  const HeunParams& params() const { return params_; }
  HeunEval eval(const BigFloat& z, const HeunEvalOptions& options = {});

private:
  struct Stream {
    Precision precision;
    BigFloat a, q, alpha, beta, gamma, delta, epsilon;
    std::vector<BigFloat> p;
  };
  Stream& stream(Precision precision);
  void extend(Stream& s, std::size_t n);
  HeunEval eval_at(const BigFloat& z, const HeunEvalOptions& options, Precision prec);

  HeunParams params_;
  std::optional<unsigned> certified_from_;
  std::vector<Stream> streams_;
};

HeunEval heun_eval(const HeunParams& params, const BigFloat& z,
                   const HeunEvalOptions& options = {});

}  // namespace stieltjes
