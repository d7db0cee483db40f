#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fixiter/analysis.hpp"
#include "fixiter/properties.hpp"
#include "fixiter/report.hpp"

using namespace fixiter;

namespace {

const ParamSchedule kOnes = ParamSchedule::constant(1.0, 1.0);
const ParamSchedule kQuarter = ParamSchedule::constant(0.25, 0.25);

double ulp_of(double x) { return std::nextafter(std::abs(x), INFINITY) - std::abs(x); }

} // namespace

TEST_CASE("bound_k_product direct instantiations") {
  CHECK(bound_k_product(0, 1.0, 0.5, kOnes) == 0.0625);  // 0.5^3 * 0.5
  for (std::size_t n : {0u, 3u, 17u}) CHECK(bound_k_product(n, 0.0, 0.3, kQuarter) == 0.0);
  CHECK_THROWS_AS(bound_k_product(0, 1.0, 0.0, kOnes), std::invalid_argument);
  CHECK_THROWS_AS(bound_k_product(0, 1.0, 1.0, kOnes), std::invalid_argument);
  CHECK_THROWS_AS(bound_k_product(0, -1.0, 0.5, kOnes), std::invalid_argument);
}

TEST_CASE("bound_k_exponential direct instantiation") {
  // 0.125 * e^-0.5, evaluated literally.
  const double expect = (1.0 * 0.125) * std::exp(-0.5);
  CHECK(bound_k_exponential(0, 1.0, 0.5, kOnes) == expect);
  CHECK(expect == doctest::Approx(0.0758163).epsilon(1e-5));

  // Zero schedule: both bounds collapse to e0 * theta^(3(n+1)) exactly.
  const ParamSchedule zero = ParamSchedule::constant(0.0, 0.7);
  for (std::size_t n : {0u, 4u}) {
    const double r = std::pow(0.3, static_cast<double>(n) + 1.0);
    CHECK(bound_k_exponential(n, 2.0, 0.3, zero) == (2.0 * ((r * r) * r)));
    CHECK(bound_k_product(n, 2.0, 0.3, zero) == bound_k_exponential(n, 2.0, 0.3, zero));
  }
}

TEST_CASE("product bound never exceeds exponential bound") {
  std::mt19937 rng(20260811);
  std::uniform_real_distribution<double> theta_d(0.01, 0.99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> n_d(0, 60);
  for (int i = 0; i < 2000; ++i) {
    const double theta = theta_d(rng);
    const ParamSchedule s = ParamSchedule::constant(unit(rng), unit(rng));
    const std::size_t n = n_d(rng);
    CHECK(bound_k_product(n, 1.0, theta, s) <= bound_k_exponential(n, 1.0, theta, s));
  }
}

TEST_CASE("bound_picard_s_product direct instantiation") {
  CHECK(bound_picard_s_product(0, 1.0, 0.5, kOnes) == 0.125);  // 0.5^2 * 0.5
}

TEST_CASE("rate identity: product-bound ratio equals theta^(n+1) to 4 ulp") {
  for (double theta : {0.1, 0.21, 0.5, 0.9}) {
    for (const auto& s : {kQuarter, ParamSchedule::constant(0.75, 0.9)}) {
      for (std::size_t n = 0; n <= 50; ++n) {
        const double ratio = bound_k_product(n, 0.468620293195432, theta, s) /
                             bound_picard_s_product(n, 0.468620293195432, theta, s);
        const double expect = rate_ratio(theta, n);
        CHECK(std::abs(ratio - expect) <= 4.0 * ulp_of(expect));
      }
    }
  }
}

TEST_CASE("rate_ratio") {
  CHECK(rate_ratio(0.5, 0) == 0.5);
  CHECK(rate_ratio(0.5, 3) == 0.0625);
  for (std::size_t n = 0; n < 40; ++n) {
    const double succ = rate_ratio(0.37, n + 1) / rate_ratio(0.37, n);
    CHECK(std::abs(succ - 0.37) <= 4.0 * ulp_of(0.37));
    CHECK(rate_ratio(0.37, n + 1) < rate_ratio(0.37, n));
  }
  CHECK_THROWS_AS(rate_ratio(1.0, 3), std::invalid_argument);
}

TEST_CASE("bounds dominate the benchmark trajectories") {
  const Mapping m = builtin_cbrt_map();
  const double theta = estimate_contraction_modulus(m, 4001);
  const Point p = fixed_point_reference(m, 0.0);
  const double e0 = distance(Point::scalar(1.99), p);

  const Trajectory k_traj =
      run(SchemeId::k, m, Point::scalar(1.99), kQuarter, StopRule::fixed_count(11));
  for (std::size_t n = 0; n + 1 < k_traj.records.size(); ++n)
    CHECK(distance(k_traj.records[n + 1].x, p) <=
          bound_k_product(n, e0, theta, kQuarter) + 1e-12);

  const Trajectory ps_traj =
      run(SchemeId::picard_s, m, Point::scalar(1.99), kQuarter, StopRule::fixed_count(11));
  CHECK(distance(ps_traj.records[4].x, p) <=
        bound_picard_s_product(3, e0, theta, kQuarter) + 1e-12);
}

TEST_CASE("berinde comparison") {
  // Bound sequences for a benchmark-sized modulus: the main scheme wins.
  const RateReport r = compare_bound_rates(0.21, ParamSchedule::constant(0.5, 0.5), 1.0, 80);
  CHECK(r.verdict == RateReport::Verdict::A_faster);
  CHECK(r.theta == 0.21);

  // Equal sequences are inconclusive.
  std::vector<double> same(50, 0.25);
  CHECK(berinde_compare(same, same, 50).verdict == RateReport::Verdict::inconclusive);

  // 1/n^2 beats 1/n over a long horizon.
  std::vector<double> a, b;
  for (std::size_t n = 1; n <= 10000; ++n) {
    const double dn = static_cast<double>(n);
    a.push_back(1.0 / (dn * dn));
    b.push_back(1.0 / dn);
  }
  CHECK(berinde_compare(a, b, a.size()).verdict == RateReport::Verdict::A_faster);
  CHECK(berinde_compare(b, a, a.size()).verdict == RateReport::Verdict::B_faster);

  std::vector<double> bad{1.0, 0.0, 1.0};
  CHECK_THROWS_AS(berinde_compare(bad, bad, 3), std::invalid_argument);
}

TEST_CASE("ratio positivity invariant") {
  const RateReport r = compare_bound_rates(0.9, kQuarter, 2.0, 60);
  REQUIRE(r.ratio.size() == 60);
  for (std::size_t n = 0; n < r.ratio.size(); ++n) {
    CHECK(r.b[n] > 0.0);
    CHECK(r.ratio[n] > 0.0);
  }
}

TEST_CASE("forward stability: sequence at the fixed point has zero defect") {
  const Mapping m = builtin_cbrt_map();
  const Point q = fixed_point_reference(m, 0.0);
  const StabilityReport rep =
      stability_forward(m, kQuarter, [q](std::size_t) { return q; }, 60);
  for (double e : rep.eps) CHECK(e == 0.0);
  CHECK(rep.t_converges);
  CHECK(rep.eps_converges);
  CHECK(rep.equivalence_holds);
}

TEST_CASE("forward stability: geometric approach") {
  const Mapping m = builtin_cbrt_map();
  const double p = m.fixed_point_hint()->as_scalar();
  const auto t = [p](std::size_t n) {
    return Point::scalar(p + 0.3 * std::pow(0.5, static_cast<double>(n)));
  };
  const StabilityReport rep = stability_forward(m, kQuarter, t, 100);
  CHECK(rep.t_converges);
  CHECK(rep.eps_converges);
  CHECK(rep.equivalence_holds);
  CHECK(rep.applicable);
}

TEST_CASE("forward stability: oscillating sequence converges in neither sense") {
  const Mapping m = builtin_cbrt_map();
  const double p = m.fixed_point_hint()->as_scalar();
  const auto t = [p](std::size_t n) {
    return Point::scalar(p + (n % 2 == 0 ? 0.3 : -0.3));
  };
  const StabilityReport rep = stability_forward(m, kQuarter, t, 50);
  CHECK_FALSE(rep.t_converges);
  CHECK_FALSE(rep.eps_converges);
  CHECK(rep.equivalence_holds);  // biconditional: both sides false
}

TEST_CASE("backward stability: exact orbit and vanishing noise converge") {
  const Mapping m = builtin_cbrt_map();
  const StabilityReport exact = stability_backward(
      m, kQuarter, [](std::size_t) { return Point::scalar(0.0); }, 100);
  CHECK(exact.t_converges);
  CHECK(exact.eps_converges);
  CHECK(exact.applicable);

  const StabilityReport noisy = stability_backward(
      m, kQuarter,
      [](std::size_t n) { return Point::scalar(0.1 * std::pow(0.5, static_cast<double>(n))); },
      100);
  CHECK(noisy.t_converges);
  CHECK(noisy.eps_converges);
  CHECK(noisy.equivalence_holds);
  CHECK(noisy.t_error.back() < 1e-8);
}

TEST_CASE("backward stability: constant noise is flagged not applicable") {
  const Mapping m = builtin_cbrt_map();
  const StabilityReport rep = stability_backward(
      m, kQuarter, [](std::size_t) { return Point::scalar(0.1); }, 80);
  CHECK_FALSE(rep.applicable);
  CHECK_FALSE(rep.eps_converges);
  CHECK_FALSE(rep.t_converges);
  CHECK(rep.equivalence_holds);
  CHECK_FALSE(rep.note.empty());
}

TEST_CASE("data dependence: identical operators") {
  const Mapping m = builtin_cbrt_map();
  const ParamSchedule s = ParamSchedule::constant(0.75, 0.75);
  const DataDependenceReport rep = data_dependence(m, m, 0.0, s, 100000);
  CHECK(rep.applicable);
  CHECK(rep.observed_gap == 0.0);
  CHECK(rep.theoretical_bound == 0.0);
  CHECK(rep.bound_holds);
  CHECK(rep.grid_gap == 0.0);
}

TEST_CASE("data dependence formula arithmetic") {
  CHECK(7.0 * 0.01 / (1.0 - 0.21) == doctest::Approx(0.0886075949).epsilon(1e-9));
}

TEST_CASE("data dependence bound holds for clamped perturbations") {
  const Mapping m = builtin_cbrt_map();
  const ParamSchedule s = ParamSchedule::constant(0.75, 0.75);
  for (double eps : {1e-4, 1e-3, 1e-2}) {
    const Mapping mt = make_perturbed(m, eps);
    const DataDependenceReport rep = data_dependence(m, mt, eps, s, 100000);
    CHECK(rep.applicable);
    CHECK(rep.schedule_half_ok);
    CHECK(rep.schedule_divergent);
    CHECK(std::abs(rep.grid_gap - eps) <= 1e-12);
    CHECK(rep.bound_holds);
    CHECK(rep.observed_gap <= 7.0 * eps / (1.0 - rep.theta) + 1e-12);
  }
}

TEST_CASE("data dependence refuses to fabricate a verdict off-assumption") {
  const Mapping m = builtin_cbrt_map();
  const Mapping mt = make_perturbed(m, 1e-3);
  // alpha*beta = 0.0625 < 1/2.
  const DataDependenceReport rep = data_dependence(m, mt, 1e-3, kQuarter, 1000);
  CHECK_FALSE(rep.applicable);
  CHECK_FALSE(rep.schedule_half_ok);
  CHECK_FALSE(rep.bound_holds);
  CHECK(std::isnan(rep.observed_gap));
  CHECK_FALSE(rep.note.empty());

  // Operators that violate the declared gap are a configuration error.
  CHECK_THROWS_AS(
      data_dependence(m, make_perturbed(m, 1e-2), 1e-3,
                      ParamSchedule::constant(0.75, 0.75), 1000),
      std::invalid_argument);
}

TEST_CASE("perturbed operator construction") {
  const Mapping m = builtin_cbrt_map();
  const Mapping mt = make_perturbed(m, 0.5);
  CHECK(mt.domain().upper()[0] == 4.0);
  CHECK(mt(Point::scalar(1.0)).as_scalar() ==
        doctest::Approx(std::cbrt(3.0) + 0.5).epsilon(1e-15));
  CHECK_THROWS_AS(make_perturbed(m, -0.1), std::invalid_argument);
}

TEST_CASE("trajectory diagnostics") {
  const Mapping m = builtin_cbrt_map();
  const Point p = fixed_point_reference(m, 0.0);

  const Trajectory k_traj =
      run(SchemeId::k, m, Point::scalar(1.99), kQuarter, StopRule::fixed_count(11));
  const TrajectoryDiagnostics d = trajectory_diagnostics(k_traj, p);
  CHECK(d.max_monotonicity_violation <= 1e-15);
  CHECK(d.final_residual <= 1e-15);
  CHECK(d.max_norm <= 4.0);

  // Constant orbit at the machine fixed point: every diagnostic is zero.
  const Point q = fixed_point_reference(m, 0.0);
  const Trajectory at_q = run(SchemeId::k, m, q, kQuarter, StopRule{});
  const TrajectoryDiagnostics dq = trajectory_diagnostics(at_q, q);
  CHECK(dq.max_monotonicity_violation == 0.0);
  CHECK(dq.final_residual == 0.0);

  // picard on the halving map: errors are 2^-n, strictly decreasing.
  const Trajectory halves = run(SchemeId::picard, catalog_mapping("half"),
                                Point::scalar(1.0), kQuarter, StopRule::fixed_count(40));
  const TrajectoryDiagnostics dh = trajectory_diagnostics(halves, Point::scalar(0.0));
  CHECK(dh.max_monotonicity_violation == 0.0);
  CHECK(dh.max_norm == 1.0);
}
