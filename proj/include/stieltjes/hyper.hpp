#pragma once

// F(z) = 2F1(1/3, 2/3; 1; z) on [0, 1), its first three derivatives, and the
// constants built from it.

#include "stieltjes/bigfloat.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace stieltjes {

class HyperError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

enum class HyperBranch { series, connection };

const char* to_string(HyperBranch b);

struct HyperEval {
  BigFloat z;
  BigFloat value;
  BigFloat error_bound;
  HyperBranch branch = HyperBranch::series;
};

// Value and derivatives d^k F/dz^k for k <= order.
struct HyperJetEval {
  std::array<BigFloat, 4> d;
  std::array<BigFloat, 4> error_bound;
  HyperBranch branch = HyperBranch::series;
};

// Caches the Maclaurin coefficients f_n and the connection constants h_n at
// one precision.  Not thread-safe.
class GaussF21 {
public:
  explicit GaussF21(Precision prec);

  Precision precision() const { return prec_; }

  // Below this switch point the Maclaurin series is used.
  static constexpr double kSwitch = 0.75;

  // z in [0,1).  `one_minus_z` must equal 1 - z; pass it separately when it
  // is known more accurately than the rounded difference.
  HyperJetEval eval(const BigFloat& z, const BigFloat& one_minus_z, int order) const;
  HyperJetEval eval(const BigFloat& z, int order = 0) const;

  // Forced branches, for cross-checks.
  HyperJetEval series(const BigFloat& z, int order) const;
  HyperJetEval connection(const BigFloat& delta, int order) const;

  const BigFloat& coefficient(std::size_t n) const;

private:
  void ensure(std::size_t n) const;

  Precision prec_;
  Precision work_;
  BigFloat scale_;  // sqrt(3)/(2 pi)
  mutable std::vector<BigFloat> f_;
  mutable std::vector<BigFloat> h_;
};

HyperEval f21_eval(const BigFloat& z, Precision prec);
// First derivative from the differentiated Maclaurin series; z <= 15/16.
BigFloat f21_deriv(const BigFloat& z, Precision prec);

// psi(p/q) for 0 < p <= q by Gauss's digamma theorem.
BigFloat digamma_rational(long p, long q, Precision prec);

// K = 2F1(1/6, 1/3; 1; 1/2) by its Maclaurin series.
HyperEval constant_K(Precision prec);
// The closed form through Gamma(1/24) Gamma(5/24) Gamma(7/24) Gamma(11/24).
BigFloat constant_K_gamma_product(Precision prec);

struct SpecialConstants {
  BigFloat euler_gamma;
  BigFloat psi_third;
  BigFloat psi_twothirds;
  BigFloat K;
  BigFloat S0;  // F(z0)
  BigFloat S1;  // F'(z0)
  BigFloat z0;  // 1/2 - sqrt(2)/4
};

SpecialConstants special_constants(Precision prec);

}  // namespace stieltjes
