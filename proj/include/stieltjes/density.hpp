#pragma once

#include "stieltjes/bigfloat.hpp"
#include "stieltjes/heun.hpp"
#include "stieltjes/hyper.hpp"
#include "stieltjes/jet.hpp"
#include "stieltjes/power_series.hpp"

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stieltjes {

class DensityError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// mu, mu2, lambda, lambda2 at a real x in (-1, c0], where all four are real.
// Beyond c the discriminant is positive again but mu^2 is negative.
struct AlgebraicMaps {
  BigFloat x;
  BigFloat discriminant;  // x^2 - 34x + 1
  BigFloat mu;
  BigFloat mu2;
  BigFloat lambda;
  BigFloat lambda2;
};

AlgebraicMaps algebraic_maps(const BigFloat& x, Precision prec);

enum class DensityBranch { left, right };

const char* to_string(DensityBranch b);

struct DensityPoint {
  BigFloat x;
  BigFloat value;
  BigFloat error_bound;
  DensityBranch branch = DensityBranch::left;
  bool local_expansion = false;  // right branch evaluated near c0 without the Heun product
  std::string route;             // "closed form", "heun", "frobenius at c0" or "continuation"
  bool converged = true;
  std::string message;
};

struct EndpointConstants {
  BigFloat B_right;      // -1 / (2^(5/4) (sqrt2+1)^4 pi)
  BigFloat C_left;       // -3 / pi^2
  BigFloat scale_right;  // 1 / (2^(5/4) (sqrt2+1)^4 pi^2)
  BigFloat scale_left;   // -6 / pi^2
};

EndpointConstants endpoint_constants(Precision prec);

struct DensityOptions {
  Precision precision = kDefaultPrecision;
  // Relative accuracy asked of the Heun factors.
  double heun_rel_tolerance = 1e-32;
  std::size_t max_terms = 1'000'000;
  // v2 switches to the local expansion at c0 below c0 * (1 + local_fraction).
  double local_fraction = 0.75;
  // Between that point and c0 + continuation_end, v2 is continued along a
  // chain of Taylor expansions of the third-order equation; there the Heun
  // series converge slowly.  Set use_continuation = false to sum them anyway.
  bool use_continuation = true;
  double continuation_end = 1.5;
};

// Evaluates the closed forms at one precision, caching coefficient streams.
// Not thread-safe; build one per thread.
class DensityEvaluator {
public:
  explicit DensityEvaluator(DensityOptions options = {});
  ~DensityEvaluator();
  DensityEvaluator(const DensityEvaluator&) = delete;
  DensityEvaluator& operator=(const DensityEvaluator&) = delete;

  Precision precision() const { return opt_.precision; }
  const DensityOptions& options() const { return opt_; }

  // Order-3 Taylor jets in x.  The error bound refers to the value.
  Jet u0_jet(const BigFloat& x, BigFloat* error = nullptr);
  Jet v0_jet(const BigFloat& x, BigFloat* error = nullptr);
  Jet uinf_jet(const BigFloat& x, BigFloat* error = nullptr);
  Jet v2_jet(const BigFloat& x, BigFloat* error = nullptr, bool* local = nullptr);
  // v2 from the product of the two Heun series only (no local expansion).
  Jet v2_heun_jet(const BigFloat& x, BigFloat* error = nullptr);

  DensityPoint u0(const BigFloat& x);
  DensityPoint v0(const BigFloat& x);
  DensityPoint v2(const BigFloat& x);
  DensityPoint uinf(const BigFloat& x);
  DensityPoint phi(const BigFloat& x);

  // Right-hand limit of phi at c0, from the local expansion.
  BigFloat phi_right_limit_at_c0();
  // Left-hand limit of phi at c0, from the closed form at x = c0.
  BigFloat phi_left_limit_at_c0();

  // Coefficients of v2 in the local basis t^0 S_0, t^(1/2) S_half, t S_1.
  const std::array<BigFloat, 3>& local_coefficients();

  // Relative disagreement between the continued v2 and the Heun product at
  // the far end of the continuation chain.
  BigFloat continuation_discrepancy();

private:
  struct LocalBasis;
  struct Continuation;
  // `order` is the number of derivatives carried; with order 0 only the
  // value of the returned jet is meaningful.
  Jet f_jet(const Jet& z, const BigFloat& one_minus_z, BigFloat* rel_error, int order);
  Jet u0_impl(const BigFloat& x, BigFloat* error, int order);
  Jet v0_impl(const BigFloat& x, BigFloat* error, int order);
  Jet uinf_impl(const BigFloat& x, BigFloat* error, int order);
  Jet v2_heun_impl(const BigFloat& x, BigFloat* error, int order);
  Jet v2_impl(const BigFloat& x, BigFloat* error, bool* local, int order);
  LocalBasis& local_basis();
  void ensure_matching();
  Continuation& continuation();
  Jet continued_jet(const BigFloat& x, BigFloat* error, int order);
  std::array<Jet, 3> local_basis_jets(const BigFloat& t, BigFloat* rel_error, int order);

  DensityOptions opt_;
  GaussF21 f21_;
  HeunEvaluator h1_;
  HeunEvaluator h2_;
  BigFloat c_, c0_, pi_;
  std::unique_ptr<LocalBasis> basis_;
  std::unique_ptr<Continuation> chain_;
  std::optional<Jet> anchor_;  // Heun jet of v2 at the matching point
  BigFloat anchor_rel_error_;
  std::optional<std::array<BigFloat, 3>> match_;
  BigFloat match_rel_error_;
};

// One-shot conveniences; each builds a fresh evaluator.
DensityPoint u0_eval(const BigFloat& x, Precision prec);
DensityPoint v0_eval(const BigFloat& x, Precision prec);
DensityPoint v2_eval(const BigFloat& x, Precision prec);
DensityPoint uinf_eval(const BigFloat& x, Precision prec);
DensityPoint phi(const BigFloat& x, Precision prec);

// Exact Taylor coefficients of mu^2 F(lambda)^2 at 0 through x^N, by series
// composition over the rationals.
std::vector<Rational> u0_coeffs(std::size_t N);

}  // namespace stieltjes
