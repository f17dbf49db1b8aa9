#include "doctest.h"

#include "stieltjes/moments.hpp"
#include "stieltjes/qsqrt2.hpp"

#include <cmath>

using namespace stieltjes;

namespace {

BigFloat bf(double v, Precision p = kDefaultPrecision) { return BigFloat(v, p); }

// Smaller than the production mesh so the unit suite stays quick.
QuadratureSpec light_spec() {
  QuadratureSpec s;
  s.rule_order = 12;
  s.levels = 24;
  s.precision = 128;
  s.phi_rel_tolerance = 1e-16;
  return s;
}

}  // namespace

TEST_CASE("Gauss-Legendre rule") {
  const GaussRule g = gauss_legendre(5, 128);
  REQUIRE(g.nodes.size() == 5);
  // Closed-form nodes of P_5: 0, +-sqrt(5 -+ 2 sqrt(10/7)) / 3.
  const BigFloat s107 = sqrt(BigFloat(10L, 128) / 7L);
  CHECK(abs(g.nodes[2]) < bf(1e-35, 128));
  CHECK(abs(g.nodes[3] - sqrt(5L - s107 * 2L) / 3L) < bf(1e-35, 128));
  CHECK(abs(g.nodes[4] - sqrt(5L + s107 * 2L) / 3L) < bf(1e-35, 128));
  CHECK(abs(g.weights[2] - BigFloat(128L, 128) / 225L) < bf(1e-35, 128));
  // Exact for x^(2n-1) and x^(2n-2) on [-1, 1].
  BigFloat s(0L, 128);
  for (std::size_t i = 0; i < 5; ++i) s += g.weights[i] * pow(g.nodes[i], 8L);
  CHECK(abs(s - BigFloat(2L, 128) / 9L) < bf(1e-35, 128));
}

TEST_CASE("graded mesh covers the interval") {
  QuadratureSpec spec;
  spec.levels = 10;
  const BigFloat a(0L, 256), b(1L, 256);
  for (auto [gl, gr] : {std::pair{true, true}, {true, false}, {false, true}, {false, false}}) {
    const std::vector<Panel> mesh = graded_mesh(a, b, gl, gr, spec);
    REQUIRE(!mesh.empty());
    CHECK(mesh.front().a == a);
    CHECK(mesh.back().b == b);
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
      CHECK(mesh[i].b == mesh[i + 1].a);
      CHECK(mesh[i].a < mesh[i].b);
    }
  }
  CHECK(graded_mesh(a, b, true, true, spec).size() == 2 * (10 + 1));
  QuadratureSpec bad;
  bad.grading_ratio = 1.5;
  CHECK_THROWS_AS(graded_mesh(a, b, true, true, bad), QuadratureError);
  CHECK_THROWS_AS(graded_mesh(b, a, true, true, spec), QuadratureError);
}

TEST_CASE("integrate: endpoint singularities") {
  QuadratureSpec spec;
  spec.tolerance = 1e-10;
  const BigFloat zero(0L, 256), one(1L, 256);

  const QuadResult l = integrate([](const BigFloat& x) { return -log(x); }, zero, one, true, false, spec);
  CHECK(abs(l.value - 1L) <= bf(1e-10));
  CHECK(l.converged);

  const QuadResult r = integrate([](const BigFloat& x) { return sqrt(1L - x); }, zero, one, false, true, spec);
  CHECK(abs(r.value - BigFloat(2L, 256) / 3L) <= bf(1e-10));

  // Both singularities at once: -log(x) sqrt(1-x) integrates to
  // (2/3)(8/3 - 2 log 2), and -log(x)/sqrt(1-x) to 4 - 4 log 2.
  const BigFloat ln2 = const_log2(256);
  const QuadResult m1 = integrate([](const BigFloat& x) { return -log(x) * sqrt(1L - x); }, zero, one,
                                  true, true, spec);
  CHECK(abs(m1.value - (BigFloat(8L, 256) / 3L - ln2 * 2L) * 2L / 3L) <= bf(1e-8));
  const QuadResult m2 = integrate([](const BigFloat& x) { return -log(x) / sqrt(1L - x); }, zero, one,
                                  true, true, spec);
  CHECK(abs(m2.value - (4L - ln2 * 4L)) <= bf(1e-8));

  // Without grading the log singularity is not resolved and is flagged.
  QuadratureSpec plain = spec;
  plain.rule_order = 6;
  const QuadResult u = integrate([](const BigFloat& x) { return -log(x); }, zero, one, false, false, plain);
  CHECK_FALSE(u.converged);
  CHECK_FALSE(u.message.empty());
}

TEST_CASE("moments of phi on a light mesh") {
  const MomentSuite suite = moment_suite(4, light_spec());
  REQUIRE(suite.reports.size() == 5);
  CHECK(suite.all_passed());
  CHECK(suite.reports[0].exact == 1);
  CHECK(suite.reports[1].exact == 5);
  CHECK(suite.reports[4].exact == 33001);
  for (const MomentReport& r : suite.reports) {
    CAPTURE(r.k);
    CHECK(r.relative_error <= bf(1e-6));
    // Refinement improves on the coarse mesh.
    CHECK(r.relative_error < r.coarse_relative_error);
    for (const BigFloat& m : r.panel_mass) CHECK(m.sign() > 0);
  }
}

TEST_CASE("single moment and precision degradation") {
  QuadratureSpec spec = light_spec();
  spec.rule_order = 10;
  const MomentReport r = moment(1, spec);
  CHECK(r.k == 1);
  CHECK(r.passed);
  CHECK(abs(r.value - 5L) <= bf(5e-6, 128));

  QuadratureSpec half;
  half.precision = 128;
  half.tolerance = 1e-4;
  half.rule_order = 12;
  half.levels = 24;
  const MomentReport r0 = moment(0, half);
  CHECK(r0.passed);
}

TEST_CASE("unsplit mesh is flagged") {
  QuadratureSpec split = light_spec();
  split.rule_order = 20;
  QuadratureSpec unsplit = split;
  unsplit.split_at_c0 = false;
  const MomentSuite good = moment_suite(2, split);
  const MomentSuite bad = moment_suite(2, unsplit);
  CHECK(good.all_passed());
  CHECK_FALSE(bad.all_passed());
  CHECK(bad.reports[0].relative_error > good.reports[0].relative_error * 1000L);
}

TEST_CASE("mass concentrates at the right endpoint for large k") {
  QuadratureSpec spec = light_spec();
  spec.rule_order = 10;
  const MomentSuite s = moment_suite(12, spec);
  CHECK(s.reports[12].right_half_fraction > bf(0.99, 128));
  CHECK(s.reports[0].right_half_fraction < bf(0.5, 128));
  CHECK(s.reports[12].passed);
}
