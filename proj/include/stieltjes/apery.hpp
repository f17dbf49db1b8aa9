#pragma once

#include "stieltjes/qsqrt2.hpp"

#include <stdexcept>
#include <vector>

namespace stieltjes {

enum class AperyProvenance { binomial, recurrence };

struct AperySequence {
  std::vector<Integer> values;  // A_0 .. A_n
  AperyProvenance provenance;
};

// Raised when the recurrence produces a non-integral value.
class InexactDivision : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// A_n = sum_k C(n,k)^2 C(n+k,k)^2.
Integer apery_binomial(unsigned n);

// A_0..A_{n_max} from (n+1)^3 A_{n+1} = (2n+1)(17n^2+17n+5) A_n - n^3 A_{n-1}.
AperySequence apery_recurrence(unsigned n_max);

// Exact determinant by fraction-free (Bareiss) elimination.
Integer bareiss_determinant(std::vector<std::vector<Integer>> m);

struct HankelReport {
  std::vector<Integer> hankel;          // det [A_{i+j}]_{0<=i,j<=m}
  std::vector<Integer> shifted_hankel;  // det [A_{i+j+1}]_{0<=i,j<=m}
  std::vector<int> hankel_signs;
  std::vector<int> shifted_signs;
  bool all_positive() const;
};

HankelReport hankel_positivity(unsigned m_max);

}  // namespace stieltjes
