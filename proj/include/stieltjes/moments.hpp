#pragma once

// Composite Gauss-Legendre quadrature on geometrically graded meshes, and the
// moments of the density phi on (0, c).

#include "stieltjes/bigfloat.hpp"
#include "stieltjes/qsqrt2.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stieltjes {

class QuadratureError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct QuadratureSpec {
  int rule_order = 30;        // Gauss-Legendre points per panel
  double grading_ratio = 0.5; // successive panel widths toward a graded endpoint
  int levels = 40;            // graded panels per endpoint
  double tolerance = 1e-6;    // relative target
  Precision precision = kDefaultPrecision;
  bool split_at_c0 = true;    // break the moment integral at c0
  // Relative accuracy asked of each phi evaluation.
  double phi_rel_tolerance = 1e-24;
  unsigned threads = 0;       // 0 picks the hardware concurrency

  void validate() const;  // throws QuadratureError
};

struct Panel {
  BigFloat a;
  BigFloat b;
};

// Panels covering [a, b].  With both ends graded the interval is first
// halved; each graded half gets `levels` panels shrinking by the grading
// ratio plus one innermost panel touching the endpoint.
std::vector<Panel> graded_mesh(const BigFloat& a, const BigFloat& b, bool grade_left, bool grade_right,
                               const QuadratureSpec& spec);

struct GaussRule {
  std::vector<BigFloat> nodes;    // on (-1, 1), ascending
  std::vector<BigFloat> weights;
};

GaussRule gauss_legendre(int order, Precision prec);

struct QuadResult {
  BigFloat value;           // on the bisected mesh
  BigFloat coarse_value;    // on the mesh itself
  BigFloat error_estimate;  // |value - coarse_value|
  std::size_t panels = 0;
  bool converged = false;   // error_estimate <= tolerance * |value|
  std::string message;
};

QuadResult integrate(const std::function<BigFloat(const BigFloat&)>& f, const BigFloat& a,
                     const BigFloat& b, bool grade_left, bool grade_right,
                     const QuadratureSpec& spec = {});

struct MomentReport {
  unsigned k = 0;
  BigFloat value;
  Integer exact;
  BigFloat relative_error;      // against the exact A_k
  BigFloat error_estimate;      // refinement disagreement, relative
  BigFloat coarse_relative_error;  // the unrefined mesh against A_k
  std::size_t panels = 0;
  bool passed = false;          // relative_error <= tolerance
  std::vector<BigFloat> panel_mass;  // contribution of each coarse panel
  BigFloat right_half_fraction;      // share of the moment from x > c/2
};

struct MomentSuite {
  std::vector<MomentReport> reports;
  std::size_t phi_evaluations = 0;
  double seconds = 0;
  bool all_passed() const;
};

MomentReport moment(unsigned k, const QuadratureSpec& spec = {});
// Shares phi samples across all k <= k_max.
MomentSuite moment_suite(unsigned k_max, const QuadratureSpec& spec = {});

}  // namespace stieltjes
