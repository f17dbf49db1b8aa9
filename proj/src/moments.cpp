#include "stieltjes/moments.hpp"

#include "stieltjes/apery.hpp"
#include "stieltjes/density.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <thread>

namespace stieltjes {

void QuadratureSpec::validate() const {
  if (rule_order < 1) throw QuadratureError("quadrature: rule order must be positive");
  if (!(grading_ratio > 0 && grading_ratio < 1)) {
    throw QuadratureError("quadrature: grading ratio must lie in (0, 1)");
  }
  if (levels < 0) throw QuadratureError("quadrature: levels must be nonnegative");
  if (!(tolerance > 0)) throw QuadratureError("quadrature: tolerance must be positive");
  if (precision < 32) throw QuadratureError("quadrature: precision too small");
}

namespace {

void graded_half(const BigFloat& end, const BigFloat& other, const QuadratureSpec& spec,
                 std::vector<Panel>& out) {
  // Breakpoints end + (other - end) r^j, j = 0..levels, then end itself.
  const BigFloat len = other - end;
  const BigFloat r(spec.grading_ratio, spec.precision);
  std::vector<BigFloat> pts;
  BigFloat scale(1L, spec.precision);
  for (int j = 0; j <= spec.levels; ++j) {
    pts.push_back(end + len * scale);
    scale *= r;
  }
  pts.push_back(end);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i] < pts[i + 1]) {
      out.push_back({pts[i], pts[i + 1]});
    } else {
      out.push_back({pts[i + 1], pts[i]});
    }
  }
}

}  // namespace

std::vector<Panel> graded_mesh(const BigFloat& a_in, const BigFloat& b_in, bool grade_left,
                               bool grade_right, const QuadratureSpec& spec) {
  spec.validate();
  const BigFloat a(a_in, spec.precision), b(b_in, spec.precision);
  if (!(a < b)) throw QuadratureError("quadrature: need a < b");
  std::vector<Panel> left, right;
  if (grade_left && grade_right) {
    const BigFloat m = (a + b) / 2L;
    graded_half(a, m, spec, left);
    graded_half(b, m, spec, right);
  } else if (grade_left) {
    graded_half(a, b, spec, left);
  } else if (grade_right) {
    graded_half(b, a, spec, right);
  } else {
    left.push_back({a, b});
  }
  // Ascending order: the left half is generated from the middle outwards.
  std::reverse(left.begin(), left.end());
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

GaussRule gauss_legendre(int n, Precision prec) {
  if (n < 1) throw QuadratureError("gauss_legendre: order must be positive");
  const Precision w = prec + 32;
  const BigFloat eps = ldexp(BigFloat(1L, w), 8 - static_cast<long>(w));
  GaussRule rule;
  for (int i = 1; i <= n; ++i) {
    BigFloat x(std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5)), w);
    BigFloat dp(w);
    for (int it = 0; it < 200; ++it) {
      BigFloat p0(1L, w), p1 = x;
      for (int k = 2; k <= n; ++k) {
        BigFloat p2 = (x * p1 * (2 * k - 1) - p0 * (k - 1)) / k;
        p0 = std::move(p1);
        p1 = std::move(p2);
      }
      if (n == 1) p0 = BigFloat(1L, w);
      dp = (x * p1 - p0) * n / (x * x - 1L);
      const BigFloat dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= eps) {
        // One more derivative evaluation at the converged node.
        BigFloat q0(1L, w), q1 = x;
        for (int k = 2; k <= n; ++k) {
          BigFloat q2 = (x * q1 * (2 * k - 1) - q0 * (k - 1)) / k;
          q0 = std::move(q1);
          q1 = std::move(q2);
        }
        if (n == 1) q0 = BigFloat(1L, w);
        dp = (x * q1 - q0) * n / (x * x - 1L);
        break;
      }
    }
    rule.nodes.emplace_back(x, prec);
    rule.weights.emplace_back(BigFloat(2L, w) / ((1L - x * x) * dp * dp), prec);
  }
  std::reverse(rule.nodes.begin(), rule.nodes.end());
  std::reverse(rule.weights.begin(), rule.weights.end());
  return rule;
}

namespace {

// Nodes and weights of the rule mapped onto every panel, followed by those of
// every bisected panel.
struct NodeSet {
  std::vector<BigFloat> x, w;
  std::size_t per_panel = 0;
  std::size_t panels = 0;
};

void add_panel(const GaussRule& g, const BigFloat& a, const BigFloat& b, NodeSet& s) {
  const BigFloat half = (b - a) / 2L;
  const BigFloat mid = (a + b) / 2L;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    s.x.push_back(mid + half * g.nodes[i]);
    s.w.push_back(half * g.weights[i]);
  }
}

NodeSet build_nodes(const std::vector<Panel>& mesh, const QuadratureSpec& spec) {
  const GaussRule g = gauss_legendre(spec.rule_order, spec.precision);
  NodeSet s;
  s.per_panel = g.nodes.size();
  s.panels = mesh.size();
  for (const Panel& p : mesh) add_panel(g, p.a, p.b, s);
  for (const Panel& p : mesh) {
    const BigFloat m = (p.a + p.b) / 2L;
    add_panel(g, p.a, m, s);
    add_panel(g, m, p.b, s);
  }
  return s;
}

}  // namespace

QuadResult integrate(const std::function<BigFloat(const BigFloat&)>& f, const BigFloat& a,
                     const BigFloat& b, bool grade_left, bool grade_right, const QuadratureSpec& spec) {
  const std::vector<Panel> mesh = graded_mesh(a, b, grade_left, grade_right, spec);
  const NodeSet s = build_nodes(mesh, spec);
  const Precision acc = spec.precision + 32;
  const std::size_t coarse = s.panels * s.per_panel;
  BigFloat q1(0L, acc), q2(0L, acc);
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const BigFloat t = s.w[i] * f(s.x[i]);
    (i < coarse ? q1 : q2) += t;
  }
  QuadResult r;
  r.value = BigFloat(q2, spec.precision);
  r.coarse_value = BigFloat(q1, spec.precision);
  r.error_estimate = abs(r.value - r.coarse_value);
  r.panels = mesh.size();
  r.converged = r.error_estimate <= abs(r.value) * BigFloat(spec.tolerance, spec.precision);
  if (!r.converged) {
    r.message = "refinement did not reach the tolerance: estimate " + r.error_estimate.str(3);
  }
  return r;
}

bool MomentSuite::all_passed() const {
  return !reports.empty() &&
         std::all_of(reports.begin(), reports.end(), [](const MomentReport& m) { return m.passed; });
}

namespace {

std::vector<BigFloat> sample_phi(const std::vector<BigFloat>& xs, const QuadratureSpec& spec,
                                 std::size_t* failures) {
  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, 16);
  // MPFR caches constants such as pi; sharing them across threads needs
  // thread-local storage in the MPFR build.
  if (!mpfr_buildopt_tls_p()) threads = 1;
  std::vector<BigFloat> out(xs.size(), BigFloat(0L, spec.precision));
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> bad{0};
  auto worker = [&] {
    DensityOptions o;
    o.precision = spec.precision;
    o.heun_rel_tolerance = spec.phi_rel_tolerance;
    DensityEvaluator ev(o);
    for (std::size_t i = next++; i < xs.size(); i = next++) {
      const DensityPoint d = ev.phi(xs[i]);
      if (!d.converged) ++bad;
      out[i] = d.value;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failures) *failures = bad;
  return out;
}

}  // namespace

MomentSuite moment_suite(unsigned k_max, const QuadratureSpec& spec) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const Precision p = spec.precision;
  const BigFloat zero(0L, p);
  const BigFloat c0 = constants::c0().to_bigfloat(p);
  const BigFloat c = constants::c().to_bigfloat(p);

  std::vector<Panel> mesh;
  if (spec.split_at_c0) {
    mesh = graded_mesh(zero, c0, true, true, spec);
    const std::vector<Panel> right = graded_mesh(c0, c, true, true, spec);
    mesh.insert(mesh.end(), right.begin(), right.end());
  } else {
    mesh = graded_mesh(zero, c, true, true, spec);
  }
  const NodeSet s = build_nodes(mesh, spec);
  std::size_t failures = 0;
  const std::vector<BigFloat> phi = sample_phi(s.x, spec, &failures);

  const AperySequence exact = apery_recurrence(k_max);
  const Precision acc = p + 32;
  const BigFloat half_c = c / 2L;
  const std::size_t coarse = s.panels * s.per_panel;

  MomentSuite suite;
  suite.phi_evaluations = s.x.size();
  std::vector<BigFloat> xk(s.x.size(), BigFloat(1L, p));
  for (unsigned k = 0; k <= k_max; ++k) {
    if (k > 0) {
      for (std::size_t i = 0; i < xk.size(); ++i) xk[i] *= s.x[i];
    }
    MomentReport r;
    r.k = k;
    r.exact = exact.values[k];
    r.panels = s.panels;
    BigFloat q1(0L, acc), q2(0L, acc), right(0L, acc);
    r.panel_mass.assign(s.panels, BigFloat(0L, p));
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const BigFloat t = s.w[i] * xk[i] * phi[i];
      if (i < coarse) {
        q1 += t;
      } else {
        q2 += t;
        r.panel_mass[(i - coarse) / (2 * s.per_panel)] += t;
        if (s.x[i] > half_c) right += t;
      }
    }
    const BigFloat ex(r.exact, acc);
    r.value = BigFloat(q2, p);
    r.relative_error = BigFloat(abs(q2 - ex) / ex, p);
    r.error_estimate = BigFloat(abs(q2 - q1) / abs(q2), p);
    r.coarse_relative_error = BigFloat(abs(q1 - ex) / ex, p);
    r.right_half_fraction = BigFloat(right / q2, p);
    r.passed = failures == 0 && r.relative_error <= BigFloat(spec.tolerance, p);
    suite.reports.push_back(std::move(r));
  }
  suite.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return suite;
}

MomentReport moment(unsigned k, const QuadratureSpec& spec) {
  MomentSuite s = moment_suite(k, spec);
  return s.reports.back();
}

}  // namespace stieltjes
