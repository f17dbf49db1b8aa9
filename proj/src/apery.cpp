#include "stieltjes/apery.hpp"

#include <string>
#include <utility>

namespace stieltjes {

Integer apery_binomial(unsigned n) {
  Integer sum = 0;
  Integer a;
  Integer b;
  for (unsigned k = 0; k <= n; ++k) {
    mpz_bin_uiui(a.get_mpz_t(), n, k);
    mpz_bin_uiui(b.get_mpz_t(), n + k, k);
    const Integer t = a * b;
    sum += t * t;
  }
  return sum;
}

AperySequence apery_recurrence(unsigned n_max) {
  AperySequence seq{{Integer(1), Integer(5)}, AperyProvenance::recurrence};
  seq.values.reserve(n_max + 1);
  for (unsigned n = 1; n < n_max; ++n) {
    const Integer nn = n;
    const Integer rhs = (2 * nn + 1) * (17 * nn * nn + 17 * nn + 5) * seq.values[n] -
                        nn * nn * nn * seq.values[n - 1];
    const Integer d = (nn + 1) * (nn + 1) * (nn + 1);
    Integer q;
    Integer r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rhs.get_mpz_t(), d.get_mpz_t());
    if (r != 0) {
      throw InexactDivision("Apery recurrence: inexact division at n = " + std::to_string(n));
    }
    seq.values.push_back(std::move(q));
  }
  seq.values.resize(n_max + 1);
  return seq;
}

Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;  // exact
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

bool HankelReport::all_positive() const {
  for (int s : hankel_signs) {
    if (s <= 0) return false;
  }
  for (int s : shifted_signs) {
    if (s <= 0) return false;
  }
  return true;
}

HankelReport hankel_positivity(unsigned m_max) {
  const AperySequence seq = apery_recurrence(2 * m_max + 2);
  const auto& a = seq.values;
  HankelReport report;
  for (unsigned m = 0; m <= m_max; ++m) {
    std::vector<std::vector<Integer>> h(m + 1, std::vector<Integer>(m + 1));
    std::vector<std::vector<Integer>> hs(m + 1, std::vector<Integer>(m + 1));
    for (unsigned i = 0; i <= m; ++i) {
      for (unsigned j = 0; j <= m; ++j) {
        h[i][j] = a[i + j];
        hs[i][j] = a[i + j + 1];
      }
    }
    report.hankel.push_back(bareiss_determinant(std::move(h)));
    report.shifted_hankel.push_back(bareiss_determinant(std::move(hs)));
    report.hankel_signs.push_back(sgn(report.hankel.back()));
    report.shifted_signs.push_back(sgn(report.shifted_hankel.back()));
  }
  return report;
}

}  // namespace stieltjes
