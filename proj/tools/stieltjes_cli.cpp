// Command-line front end.  Exit codes: 0 when every requested check passes,
// 1 when a mathematical check fails, 2 on a usage error.

#include "stieltjes/acceptance.hpp"
#include "stieltjes/apery.hpp"
#include "stieltjes/density.hpp"
#include "stieltjes/heun.hpp"
#include "stieltjes/hyper.hpp"
#include "stieltjes/modular.hpp"
#include "stieltjes/moments.hpp"
#include "stieltjes/odecheck.hpp"
#include "stieltjes/qsqrt2.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace stieltjes;

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Precision precision = kDefaultPrecision;
  double tolerance = 1e-6;
  std::size_t max_terms = 1'000'000;
  std::string out_dir = ".";

  void validate() const {
    if (precision < 64) throw UsageError("--prec must be at least 64 bits");
    if (!(tolerance > 0)) throw UsageError("--tol must be positive");
    if (max_terms == 0) throw UsageError("--max-terms must be positive");
  }
};

Precision default_precision() {
  if (const char* env = std::getenv("APERY_PREC")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<Precision>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("APERY_PREC is not a positive integer: ") + env);
  }
  return kDefaultPrecision;
}

BigFloat parse_number(const std::string& text, Precision prec) {
  try {
    return BigFloat::parse(text, prec);
  } catch (const std::exception&) {
    throw UsageError("not a number: " + text);
  }
}

// Significant digits worth printing for a value with the given absolute error.
int meaningful_digits(const BigFloat& value, const BigFloat& error, Precision prec) {
  const int cap = static_cast<int>(static_cast<double>(prec) * 0.30103) - 2;
  if (value.is_zero() || error.is_zero()) return cap;
  const double rel = (error / abs(value)).to_double();
  const int d = rel > 0 ? static_cast<int>(-std::log10(rel)) : cap;
  return std::clamp(d, 3, cap);
}

void report_precision(std::ostream& os, const RunConfig& cfg) {
  os << "# precision: " << cfg.precision << " bits\n";
}

// --------------------------------------------------------------- apery

int run_apery(unsigned n, bool check, const RunConfig& cfg) {
  std::cerr << "# precision: exact integers (--prec " << cfg.precision << " not needed)\n";
  const AperySequence seq = apery_recurrence(n);
  for (const Integer& a : seq.values) std::cout << a.get_str() << '\n';
  if (!check) return kPass;
  for (unsigned k = 0; k <= n; ++k) {
    if (apery_binomial(k) != seq.values[k]) {
      std::cerr << "FAIL: binomial sum and recurrence differ at n = " << k << '\n';
      return kCheckFailed;
    }
  }
  std::cerr << "PASS: binomial sum equals recurrence for n <= " << n << '\n';
  return kPass;
}

// --------------------------------------------------------------- certify

int run_certify(const std::string& which, const RunConfig& cfg) {
  HeunParams params;
  unsigned N0 = 0;
  long kappa = 0;
  if (which == "L2" || which == "first") {
    params = heun_cases::first_factor();
    N0 = 45;
    kappa = 10;
  } else if (which == "L6" || which == "second") {
    params = heun_cases::second_factor();
    N0 = 18;
    kappa = 4;
  } else {
    throw UsageError("unknown case " + which);
  }
  std::cout << "# precision: exact arithmetic in Q(sqrt2) (--prec " << cfg.precision << " not needed)\n";
  const PositivityCertificate cert = certify_positive(params, N0, Rational(kappa));
  const auto scan = scan_ratio_bracket(params, N0, Rational(kappa), N0 + 500);
  const bool ok = cert.valid() && !scan;
  std::cout << (ok ? "PASS" : "FAIL") << " case " << which << ": N0 = " << N0 << ", kappa = " << kappa
            << '\n';
  std::cout << "  base case p_0..p_" << N0 << " positive: " << (cert.base_checked ? "yes" : "no") << '\n';
  std::cout << "  induction inequalities certified: " << (cert.induction_checked ? "yes" : "no") << '\n';
  for (const InequalityWitness& w : cert.witnesses) {
    std::cout << "  witness " << w.name << ": degree " << w.in_m.degree() << ", "
              << (w.certified ? "all shifted coefficients >= 0" : "NOT certified") << '\n';
  }
  if (cert.failure) std::cout << "  failure: " << cert.failure->check << ": " << cert.failure->message << '\n';
  std::cout << "  exact ratio scan to n = " << N0 + 500 << ": "
            << (scan ? "bracket fails at n = " + std::to_string(*scan) : std::string("bracket holds")) << '\n';
  return ok ? kPass : kCheckFailed;
}

// --------------------------------------------------------------- hyper

int run_hyper(const std::string& z_text, const RunConfig& cfg) {
  report_precision(std::cout, cfg);
  const BigFloat z = parse_number(z_text, cfg.precision);
  try {
    const HyperEval e = f21_eval(z, cfg.precision);
    std::cout << "F(" << z_text << ") = " << e.value.str(meaningful_digits(e.value, e.error_bound, cfg.precision)) << '\n'
              << "error bound: " << e.error_bound.str(3) << '\n'
              << "branch: " << to_string(e.branch) << '\n';
  } catch (const HyperError& e) {
    throw UsageError(e.what());
  }
  return kPass;
}

// --------------------------------------------------------------- phi

int run_phi(const std::string& x_text, const RunConfig& cfg) {
  report_precision(std::cout, cfg);
  const BigFloat x = parse_number(x_text, cfg.precision);
  DensityOptions opt;
  opt.precision = cfg.precision;
  opt.max_terms = cfg.max_terms;
  DensityEvaluator ev(opt);
  DensityPoint d;
  try {
    d = ev.phi(x);
  } catch (const DensityError& e) {
    throw UsageError(e.what());
  }
  std::cout << "phi(" << x_text << ") = " << d.value.str(meaningful_digits(d.value, d.error_bound, cfg.precision)) << '\n'
            << "error bound: " << d.error_bound.str(3) << '\n'
            << "branch: " << to_string(d.branch) << ", route: " << d.route << '\n';
  if (!d.converged) {
    std::cout << "NOT CONVERGED: " << d.message << '\n';
    return kCheckFailed;
  }
  return kPass;
}

// --------------------------------------------------------------- ode

int run_ode(const RunConfig& cfg) {
  report_precision(std::cout, cfg);
  DensityOptions opt;
  opt.precision = cfg.precision;
  opt.max_terms = cfg.max_terms;
  DensityEvaluator ev(opt);
  const BigFloat tol(1e-15, cfg.precision);
  const BigFloat c = constants::c().to_bigfloat(cfg.precision);
  bool ok = true;

  std::cout << "function,x,residual,scale\n";
  auto table = [&](const char* name, const std::function<Jet(const BigFloat&)>& fn, std::vector<BigFloat> xs) {
    for (const BigFloat& x : xs) {
      const De3Residual r = de3_residual(fn, x);
      ok = ok && abs(r.residual) <= tol;
      std::cout << name << ',' << x.str(8) << ',' << r.residual.str(3) << ',' << r.scale.str(3) << '\n';
    }
  };
  auto pts = [&](std::initializer_list<double> v) {
    std::vector<BigFloat> out;
    for (double d : v) out.emplace_back(d, cfg.precision);
    return out;
  };
  table("u0", [&](const BigFloat& x) { return ev.u0_jet(x); }, pts({0.002, 0.008, 0.014, 0.02, 0.027}));
  table("v0", [&](const BigFloat& x) { return ev.v0_jet(x); }, pts({0.002, 0.008, 0.014, 0.02, 0.027}));
  table("v2", [&](const BigFloat& x) { return ev.v2_jet(x); }, pts({0.04, 1.0, 10.0, 20.0, 30.0}));
  table("u_inf", [&](const BigFloat& x) { return ev.uinf_jet(x); },
        {BigFloat(-1L, cfg.precision), BigFloat(-0.5, cfg.precision), BigFloat(-0.1, cfg.precision), c * 2L,
         c * 3L});

  std::cout << "\npoint,exponents,log rank\n";
  for (SingularPoint p : {SingularPoint::zero, SingularPoint::c0, SingularPoint::c, SingularPoint::infinity}) {
    const IndicialData d = indicial_exponents(p);
    std::cout << to_string(p) << ",{";
    for (std::size_t i = 0; i < d.exponents.size(); ++i) std::cout << (i ? " " : "") << d.exponents[i].get_str();
    std::cout << "}," << d.log_rank << '\n';
  }
  std::cout << '\n';
  for (SingularPoint p : {SingularPoint::c0, SingularPoint::c}) {
    const SlopeCheck chk = frobenius_slope_check(p);
    std::cout << (chk.matches() ? "match: " : "mismatch: ") << chk.summary() << '\n';
  }
  std::cout << (ok ? "PASS" : "FAIL") << ": residuals <= 1e-15\n";
  return ok ? kPass : kCheckFailed;
}

// --------------------------------------------------------------- moments

int run_moments(unsigned kmax, unsigned threads, const RunConfig& cfg) {
  report_precision(std::cout, cfg);
  QuadratureSpec spec;
  spec.precision = cfg.precision;
  spec.tolerance = cfg.tolerance;
  spec.threads = threads;
  try {
    spec.validate();
  } catch (const QuadratureError& e) {
    throw UsageError(e.what());
  }
  const MomentSuite suite = moment_suite(kmax, spec);
  std::cout << "k,exact,computed,relative_error,error_estimate,status\n";
  for (const MomentReport& m : suite.reports) {
    std::cout << m.k << ',' << m.exact.get_str() << ',' << m.value.str(25) << ',' << m.relative_error.str(3) << ','
              << m.error_estimate.str(3) << ',' << (m.passed ? "PASS" : "FAIL") << '\n';
  }
  return suite.all_passed() ? kPass : kCheckFailed;
}

// --------------------------------------------------------------- modular

int run_modular(const std::string& which, std::size_t terms, const RunConfig& cfg) {
  report_precision(std::cout, cfg);
  bool ok = true;
  const bool all = which == "all";
  if (all || which == "theta") {
    const IdentityCheck r = theta_logderiv_identity(terms);
    ok = ok && r.passed;
    std::cout << (r.passed ? "PASS" : "FAIL") << " theta(j)/j = E2(tau)/2 - 3/2 E2(3 tau) through q^" << terms
              << (r.passed ? "" : ": " + r.message) << '\n';
  }
  if (all || which == "param") {
    const IdentityCheck r = parameterization_check(terms);
    ok = ok && r.passed;
    std::cout << (r.passed ? "PASS" : "FAIL") << " F(27/(j+27)) = eta(3tau)^3/eta(tau) (j+27)^(1/3) through q^"
              << terms << (r.passed ? "" : ": " + r.message) << '\n';
  }
  if (all || which == "specials") {
    for (const SpecialValue& v : special_values(cfg.precision, 1e-20)) {
      ok = ok && v.passed;
      std::cout << (v.passed ? "PASS " : "FAIL ") << v.name << " = " << v.computed.str(25) << "  [printed "
                << v.printed_formula << ", error " << v.error.str(3) << "]\n";
      if (!v.passed && v.corrected_formula)
        std::cout << "     holds instead: " << *v.corrected_formula << ", error "
                  << abs(*v.corrected - v.computed).str(3) << '\n';
    }
  }
  return ok ? kPass : kCheckFailed;
}

// --------------------------------------------------------------- figures

void write_csv(const std::filesystem::path& path, const std::vector<std::pair<BigFloat, BigFloat>>& rows) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << "x,value\n";
  for (const auto& [x, v] : rows) f << x.fixed(12) << ',' << v.fixed(12) << '\n';
}

// n points strictly inside (a, b), or including b when `closed_right`.
std::vector<BigFloat> grid(const BigFloat& a, const BigFloat& b, int n, bool closed_right = false) {
  std::vector<BigFloat> xs;
  const int denom = closed_right ? n : n + 1;
  for (int i = 1; i <= n; ++i) xs.push_back(a + (b - a) * BigFloat(static_cast<long>(i), a.precision()) / denom);
  return xs;
}

int run_figures(int points, const RunConfig& cfg) {
  report_precision(std::cout, cfg);
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  const Precision p = cfg.precision;
  DensityOptions opt;
  opt.precision = p;
  opt.max_terms = cfg.max_terms;
  DensityEvaluator ev(opt);
  const BigFloat zero(0L, p);
  const BigFloat c = constants::c().to_bigfloat(p);
  const BigFloat c0 = constants::c0().to_bigfloat(p);

  auto sample = [&](const std::string& name, const std::vector<BigFloat>& xs,
                    const std::function<BigFloat(const BigFloat&)>& f) {
    std::vector<std::pair<BigFloat, BigFloat>> rows;
    rows.reserve(xs.size());
    for (const BigFloat& x : xs) rows.emplace_back(x, f(x));
    write_csv(dir / name, rows);
    std::cout << "wrote " << (dir / name).string() << " (" << rows.size() << " rows)\n";
  };

  sample("uinf_right.csv", grid(c, c * 4L, points, true), [&](const BigFloat& x) { return ev.uinf(x).value; });
  sample("uinf_left.csv", grid(-c, zero, points), [&](const BigFloat& x) { return ev.uinf(x).value; });
  sample("u0.csv", grid(zero, c0, points), [&](const BigFloat& x) { return ev.u0(x).value; });
  sample("v0.csv", grid(zero, c0, points), [&](const BigFloat& x) { return ev.v0(x).value; });
  sample("v2.csv", grid(c0, c, points), [&](const BigFloat& x) { return ev.v2(x).value; });

  // phi on (0, c), with extra points clustered geometrically on both sides
  // of c0 and toward both endpoints.
  std::vector<BigFloat> xs = grid(zero, c, points);
  for (int k = 1; k <= 30; ++k) {
    const BigFloat d = c0 * ldexp(BigFloat(1L, p), -k);
    xs.push_back(c0 - d);
    xs.push_back(c0 + d);
  }
  for (int k = 2; k <= 12; ++k) {
    const BigFloat d = pow(BigFloat(10L, p), static_cast<long>(-k));
    xs.push_back(c * d);
    xs.push_back(c - d);
  }
  xs.push_back(c0);
  std::sort(xs.begin(), xs.end(), [](const BigFloat& a, const BigFloat& b) { return a < b; });
  sample("phi.csv", xs, [&](const BigFloat& x) { return ev.phi(x).value; });

  const std::vector<BigFloat> left = grid(zero, c0, points);
  sample("mu.csv", left, [&](const BigFloat& x) { return algebraic_maps(x, p).mu; });
  sample("mu2.csv", left, [&](const BigFloat& x) { return algebraic_maps(x, p).mu2; });
  sample("lambda.csv", left, [&](const BigFloat& x) { return algebraic_maps(x, p).lambda; });
  sample("lambda2.csv", left, [&](const BigFloat& x) { return algebraic_maps(x, p).lambda2; });
  return kPass;
}

// --------------------------------------------------------------- selfcheck

int run_selfcheck(bool timing, unsigned threads, const RunConfig& cfg) {
  report_precision(std::cout, cfg);
  AcceptanceOptions opt;
  opt.precision = cfg.precision;
  opt.threads = threads;
  std::size_t failed = 0, total = 0;
  run_acceptance(opt, [&](const CriterionResult& r) {
    print_result(std::cout, r, timing);
    std::cout.flush();
    ++total;
    if (!r.passed) ++failed;
  });
  std::cout << (total - failed) << "/" << total << " criteria pass\n";
  return failed == 0 ? kPass : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructive checks that the Apery numbers form a Stieltjes moment sequence"};
  app.require_subcommand(1);

  RunConfig cfg;
  try {
    cfg.precision = default_precision();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  app.add_option("--prec", cfg.precision, "working precision in bits (default 256, or $APERY_PREC)");
  app.add_option("--tol", cfg.tolerance, "relative tolerance (default 1e-6)");
  app.add_option("--max-terms", cfg.max_terms, "series term cap (default 1e6)");

  std::function<int()> action;

  auto* apery = app.add_subcommand("apery", "print A_0..A_N");
  unsigned apery_n = 10;
  bool apery_check = false;
  apery->add_option("--n", apery_n, "largest index")->required();
  apery->add_flag("--check", apery_check, "compare the binomial sum with the recurrence");
  apery->callback([&] { action = [&] { return run_apery(apery_n, apery_check, cfg); }; });

  auto* certify = app.add_subcommand("certify", "exact positivity certificate for a Heun factor");
  std::string certify_case;
  certify->add_option("--case", certify_case, "L2 (first factor, N0=45, kappa=10) or L6 (second, N0=18, kappa=4)")
      ->required()
      ->check(CLI::IsMember({"L2", "L6", "first", "second"}));
  certify->callback([&] { action = [&] { return run_certify(certify_case, cfg); }; });

  auto* hyper = app.add_subcommand("hyper", "evaluate 2F1(1/3, 2/3; 1; z) for z in [0, 1)");
  std::string hyper_z;
  hyper->add_option("--z", hyper_z, "argument")->required();
  hyper->callback([&] { action = [&] { return run_hyper(hyper_z, cfg); }; });

  auto* phi_cmd = app.add_subcommand("phi", "evaluate the moment density at x in (0, c)");
  std::string phi_x;
  phi_cmd->add_option("--x", phi_x, "abscissa")->required();
  phi_cmd->callback([&] { action = [&] { return run_phi(phi_x, cfg); }; });

  auto* ode = app.add_subcommand("ode", "third-order equation: residuals and local exponents");
  bool ode_all = false;
  ode->add_flag("--check-all", ode_all, "run every check (the default)");
  ode->callback([&] { action = [&] { return run_ode(cfg); }; });

  auto* mom = app.add_subcommand("moments", "recover A_0..A_K by quadrature of the density");
  unsigned kmax = 12, mom_threads = 0;
  mom->add_option("--kmax", kmax, "largest moment index");
  mom->add_option("--tol", cfg.tolerance, "relative tolerance per moment");
  mom->add_option("--threads", mom_threads, "worker threads (0: hardware concurrency)");
  mom->add_option("--prec", cfg.precision, "working precision in bits");
  mom->callback([&] { action = [&] { return run_moments(kmax, mom_threads, cfg); }; });

  auto* mod = app.add_subcommand("modular", "q-series identities and special values");
  std::string mod_check = "all";
  std::size_t mod_terms = 40;
  mod->add_option("--check", mod_check, "theta, param, specials or all")
      ->check(CLI::IsMember({"theta", "param", "specials", "all"}));
  mod->add_option("--terms", mod_terms, "check identities through q^N");
  mod->add_option("--prec", cfg.precision, "working precision in bits");
  mod->callback([&] { action = [&] { return run_modular(mod_check, mod_terms, cfg); }; });

  auto* fig = app.add_subcommand("figures", "write CSV samples of the density and its ingredients");
  int fig_points = 200;
  fig->add_option("--out", cfg.out_dir, "output directory");
  fig->add_option("--points", fig_points, "samples per curve")->check(CLI::Range(2, 100000));
  fig->add_option("--prec", cfg.precision, "working precision in bits");
  fig->callback([&] { action = [&] { return run_figures(fig_points, cfg); }; });

  auto* self = app.add_subcommand("selfcheck", "run the full acceptance suite");
  bool self_timing = false;
  unsigned self_threads = 0;
  self->add_flag("--timing", self_timing, "append timings (makes the output non-reproducible)");
  self->add_option("--threads", self_threads, "quadrature threads (0: hardware concurrency)");
  self->add_option("--prec", cfg.precision, "working precision in bits");
  self->callback([&] { action = [&] { return run_selfcheck(self_timing, self_threads, cfg); }; });

  // Subcommand-local copies of the global options.
  for (auto* sub : {hyper, phi_cmd, ode, certify, apery}) sub->add_option("--prec", cfg.precision, "precision in bits");
  for (auto* sub : {hyper, phi_cmd, ode, fig}) sub->add_option("--max-terms", cfg.max_terms, "series term cap");

  try {
    app.parse(argc, argv);
    cfg.validate();
    return action();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}
