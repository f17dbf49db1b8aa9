#include "stieltjes/power_series.hpp"

namespace stieltjes::detail {

Rational exact_rational_root(const Rational& value, unsigned n) {
  if (sgn(value) < 0 && n % 2 == 0) throw SeriesError("nth_root: negative constant term");
  Integer num;
  Integer den;
  const bool num_exact = mpz_root(num.get_mpz_t(), value.get_num_mpz_t(), n) != 0;
  const bool den_exact = mpz_root(den.get_mpz_t(), value.get_den_mpz_t(), n) != 0;
  if (!num_exact || !den_exact) {
    throw SeriesError("nth_root: constant term is not a perfect power in Q");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace stieltjes::detail
