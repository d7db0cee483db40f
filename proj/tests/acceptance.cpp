// Acceptance suite: end-to-end checks of every headline claim, one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fixiter/analysis.hpp"
#include "fixiter/mapping.hpp"
#include "fixiter/properties.hpp"
#include "fixiter/report.hpp"
#include "fixiter/schemes.hpp"

using namespace fixiter;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double ulp_of(double x) { return std::nextafter(std::abs(x), INFINITY) - std::abs(x); }

const ParamSchedule kQuarter = ParamSchedule::constant(0.25, 0.25);

// 1. Reference-table reproduction: 4 schemes x 12 rows within 1e-12 per
//    cell, in under a second.
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const ReferenceTable& ref = cbrt_reference_table();
  const Mapping m = builtin_cbrt_map();

  double worst = 0.0;
  for (std::size_t c = 0; c < ref.schemes.size(); ++c) {
    const Trajectory traj = run(ref.schemes[c], m, Point::scalar(ref.x0),
                                ParamSchedule::constant(ref.alpha, ref.beta),
                                StopRule::fixed_count(kReferenceRows - 1));
    for (std::size_t n = 0; n < kReferenceRows; ++n)
      worst = std::max(worst,
                       std::abs(traj.records[n].x.as_scalar() - ref.columns[c][n]));
  }
  const double elapsed = seconds_since(t0);
  report(1, worst <= 1e-12 && elapsed < 1.0,
         "reference table, 48 cells within 1e-12 (worst " + format_double(worst) +
             ", " + format_double(elapsed) + "s)");
}

// 2. Convergence ordering: first index at the converged value within
//    5e-16 is 6 / 8 / 9 / 9 for k / vatan / thakur / picard_s (+-1).
void criterion_2() {
  const Mapping m = builtin_cbrt_map();
  const double p = cbrt_reference_table().fixed_point;
  const struct {
    SchemeId id;
    long expect;
  } cases[] = {{SchemeId::k, 6},
               {SchemeId::vatan_two_step, 8},
               {SchemeId::thakur_new, 9},
               {SchemeId::picard_s, 9}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const Trajectory traj = run(c.id, m, Point::scalar(1.99), kQuarter,
                                StopRule::fixed_count(kReferenceRows - 1));
    long first = -1;
    for (const auto& rec : traj.records)
      if (std::abs(rec.x.as_scalar() - p) <= 5e-16) {
        first = static_cast<long>(rec.n);
        break;
      }
    detail += std::string(to_string(c.id)) + "=" + std::to_string(first) + " ";
    if (first < 0 || std::labs(first - c.expect) > 1) ok = false;
  }
  report(2, ok, "first converged index (" + detail + "expected 6/8/9/9 +-1)");
}

// 3. Bound domination: every main-scheme iterate is dominated by the
//    product bound (estimated and safety-inflated modulus), and the
//    product bound never exceeds the exponential bound on 1000 random
//    (theta, schedule) samples.
void criterion_3() {
  const Mapping m = builtin_cbrt_map();
  const double theta_hat = estimate_contraction_modulus(m, 10000);
  const Point p = fixed_point_reference(m, 0.0);
  const double e0 = distance(Point::scalar(1.99), p);
  const Trajectory traj =
      run(SchemeId::k, m, Point::scalar(1.99), kQuarter, StopRule::fixed_count(200));

  bool dominated = true;
  for (const double theta : {theta_hat, theta_hat * (1.0 + 1e-6)}) {
    for (std::size_t n = 0; n + 1 < traj.records.size(); ++n) {
      const double lhs = distance(traj.records[n + 1].x, p);
      if (!(lhs <= bound_k_product(n, e0, theta, kQuarter) + 1e-12)) dominated = false;
    }
  }
  report(3, dominated,
         "main-scheme error dominated by product bound at theta_hat " +
             format_double(theta_hat) + " (and inflated theta_hat)");

  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> theta_d(0.01, 0.99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> n_d(0, 60);
  bool le = true;
  for (int i = 0; i < 1000; ++i) {
    const double theta = theta_d(rng);
    const ParamSchedule s = ParamSchedule::constant(unit(rng), unit(rng));
    const std::size_t n = n_d(rng);
    if (!(bound_k_product(n, 1.0, theta, s) <= bound_k_exponential(n, 1.0, theta, s)))
      le = false;
  }
  report(3, le, "product bound <= exponential bound on 1000 random samples");
}

// 4. Rate identity and comparison verdict.
void criterion_4() {
  bool identity_ok = true;
  bool verdict_ok = true;
  for (const double theta : {0.1, 0.21, 0.5, 0.9}) {
    for (std::size_t n = 0; n <= 50; ++n) {
      const double ratio = bound_k_product(n, 1.0, theta, kQuarter) /
                           bound_picard_s_product(n, 1.0, theta, kQuarter);
      const double expect = rate_ratio(theta, n);
      if (!(std::abs(ratio - expect) <= 4.0 * ulp_of(expect))) identity_ok = false;
    }
    for (const double a : {0.25, 0.5, 0.75}) {
      for (const double b : {0.25, 0.5, 0.9}) {
        const RateReport rr =
            compare_bound_rates(theta, ParamSchedule::constant(a, b), 1.0, 100);
        if (rr.verdict != RateReport::Verdict::A_faster) verdict_ok = false;
      }
    }
  }
  report(4, identity_ok,
         "bound ratio equals theta^(n+1) to 4 ulp for n <= 50, theta in {0.1,0.21,0.5,0.9}");
  report(4, verdict_ok, "rate comparison verdict is A_faster in all sampled cases");
}

// 5. Stability: geometric approach and vanishing noise converge, the
//    oscillating sequence does neither; each case under a second.
void criterion_5() {
  const Mapping m = builtin_cbrt_map();
  const double p = m.fixed_point_hint()->as_scalar();

  auto t0 = std::chrono::steady_clock::now();
  const StabilityReport fwd = stability_forward(
      m, kQuarter,
      [p](std::size_t n) { return Point::scalar(p + 0.3 * std::pow(0.5, static_cast<double>(n))); },
      100);
  const double fwd_s = seconds_since(t0);
  double fwd_window = 0.0;
  for (std::size_t i = fwd.eps.size() - 10; i < fwd.eps.size(); ++i)
    fwd_window = std::max(fwd_window, fwd.eps[i]);
  report(5, fwd.eps_converges && fwd_window < 1e-8 && fwd_s < 1.0,
         "forward harness: eps window max " + format_double(fwd_window) + " < 1e-8 (" +
             format_double(fwd_s) + "s)");

  t0 = std::chrono::steady_clock::now();
  const StabilityReport bwd = stability_backward(
      m, kQuarter,
      [](std::size_t n) { return Point::scalar(0.1 * std::pow(0.5, static_cast<double>(n))); },
      100);
  const double bwd_s = seconds_since(t0);
  report(5, bwd.t_converges && bwd.t_error.back() < 1e-8 && bwd_s < 1.0,
         "backward harness: final |t_n - p| " + format_double(bwd.t_error.back()) +
             " < 1e-8 (" + format_double(bwd_s) + "s)");

  t0 = std::chrono::steady_clock::now();
  const StabilityReport osc = stability_forward(
      m, kQuarter,
      [p](std::size_t n) { return Point::scalar(p + (n % 2 == 0 ? 0.3 : -0.3)); }, 100);
  const double osc_s = seconds_since(t0);
  report(5, !osc.t_converges && !osc.eps_converges && osc.equivalence_holds && osc_s < 1.0,
         "oscillating sequence: neither t nor eps converges (" + format_double(osc_s) +
             "s)");
}

// 6. Data dependence drift bound for clamped perturbations.
void criterion_6() {
  const Mapping m = builtin_cbrt_map();
  const ParamSchedule s = ParamSchedule::constant(0.75, 0.75);
  bool ok = true;
  std::string detail;
  for (const double eps : {1e-4, 1e-3, 1e-2}) {
    const DataDependenceReport rep = data_dependence(m, make_perturbed(m, eps), eps, s, 100000);
    detail += "eps=" + format_double(eps) + " gap=" + format_double(rep.observed_gap) +
              " bound=" + format_double(rep.theoretical_bound) + "; ";
    if (!(rep.applicable && rep.bound_holds)) ok = false;
  }
  report(6, ok, "drift bound 7*eps/(1-theta) holds: " + detail);
}

// 7. Property suites and orbit diagnostics.
void criterion_7() {
  bool pass_ok = true;
  for (const char* id : {"cbrt", "half", "cosine"}) {
    const Mapping m = catalog_mapping(id);
    const Point p = *m.fixed_point_hint();
    if (!check_condition_c(m, 10000).passed) pass_ok = false;
    if (!check_quasi_nonexpansive(m, p, 10000).passed) pass_ok = false;
    if (!check_prop1_iii(m, 10000).passed) pass_ok = false;
  }
  report(7, pass_ok, "condition (C), quasi-nonexpansive, p1(iii) pass on cbrt/half/cosine");

  const Mapping dbl = catalog_mapping("double");
  const PropertyReport c = check_condition_c(dbl, 10000);
  const PropertyReport q = check_quasi_nonexpansive(dbl, Point::scalar(0.0), 10000);
  const PropertyReport t = check_prop1_iii(dbl, 10000);
  bool fail_ok = !c.passed && !q.passed && !t.passed;
  // Witnesses must reproduce the violations when re-evaluated.
  if (fail_ok) {
    fail_ok = condition_c_violated(dbl, c.witness->first, c.witness->second,
                                   kPropertyTolerance) &&
              quasi_nonexpansive_violated(dbl, q.witness->first, Point::scalar(0.0),
                                          kPropertyTolerance) &&
              prop1_iii_violated(dbl, t.witness->first, t.witness->second,
                                 kPropertyTolerance);
  }
  report(7, fail_ok, "all three checks fail on 'double' with reproducible witnesses");

  bool diag_ok = true;
  std::string detail;
  for (const char* id : {"cbrt", "half", "cosine", "identity"}) {
    const Mapping m = catalog_mapping(id);
    const Point x0 = m.domain().midpoint();
    // identity has no unique fixed point; its orbit is constant at x0.
    const Point p = m.fixed_point_hint() ? *m.fixed_point_hint() : x0;
    const Trajectory traj = run(SchemeId::k, m, x0, kQuarter, StopRule::fixed_count(200));
    const TrajectoryDiagnostics d = trajectory_diagnostics(traj, p);
    detail += std::string(id) + ": viol=" + format_double(d.max_monotonicity_violation) +
              " res=" + format_double(d.final_residual) + "; ";
    if (!(d.max_monotonicity_violation <= 1e-15 && d.final_residual <= 1e-10))
      diag_ok = false;
  }
  report(7, diag_ok, "main-scheme diagnostics on condition-(C) maps: " + detail);
}

} // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  std::printf("%s: %d failing check(s), %.2fs total\n",
              g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED", g_failures,
              seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
