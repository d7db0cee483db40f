#include "fixiter/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fixiter/errors.hpp"
#include "fixiter/kernels.hpp"
#include "fixiter/properties.hpp"

namespace fixiter {

namespace {

void check_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("bound: theta must lie in (0,1)");
}

double schedule_product(std::size_t n, double theta, const ParamSchedule& s) {
  double prod = 1.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const auto [a, b] = s.at(k);
    prod *= 1.0 - a * b * (1.0 - theta);
  }
  return prod;
}

bool window_below(std::span<const double> values, double tol) {
  if (values.empty()) return false;
  const std::size_t w = std::min<std::size_t>(kStabilityWindow, values.size());
  for (std::size_t i = values.size() - w; i < values.size(); ++i)
    if (!(values[i] < tol)) return false;
  return true;
}

Point add_clamped(const BoxDomain& box, const Point& x, const Point& delta) {
  if (x.dimension() != delta.dimension())
    throw std::invalid_argument("stability: noise dimension mismatch");
  std::vector<double> c(x.coords());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += delta[i];
  for (double v : c)
    if (!std::isfinite(v)) throw NumericError("stability: non-finite perturbed iterate");
  return box.clamp(Point(std::move(c)));
}

} // namespace

double bound_k_product(std::size_t n, double e0, double theta, const ParamSchedule& s) {
  check_theta(theta);
  if (!(e0 >= 0.0)) throw std::invalid_argument("bound: e0 must be >= 0");
  const double r = std::pow(theta, static_cast<double>(n) + 1.0);
  const double tp = (r * r) * r;
  return (e0 * tp) * schedule_product(n, theta, s);
}

double bound_k_exponential(std::size_t n, double e0, double theta, const ParamSchedule& s) {
  check_theta(theta);
  if (!(e0 >= 0.0)) throw std::invalid_argument("bound: e0 must be >= 0");
  const double r = std::pow(theta, static_cast<double>(n) + 1.0);
  const double tp = (r * r) * r;
  double sum = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const auto [a, b] = s.at(k);
    sum += a * b;
  }
  return (e0 * tp) * std::exp(-(1.0 - theta) * sum);
}

double bound_picard_s_product(std::size_t n, double e0, double theta,
                              const ParamSchedule& s) {
  check_theta(theta);
  if (!(e0 >= 0.0)) throw std::invalid_argument("bound: e0 must be >= 0");
  const double r = std::pow(theta, static_cast<double>(n) + 1.0);
  const double tp = r * r;
  return (e0 * tp) * schedule_product(n, theta, s);
}

double rate_ratio(double theta, std::size_t n) {
  check_theta(theta);
  return std::pow(theta, static_cast<double>(n) + 1.0);
}

std::string_view to_string(RateReport::Verdict v) {
  switch (v) {
    case RateReport::Verdict::A_faster: return "A_faster";
    case RateReport::Verdict::B_faster: return "B_faster";
    case RateReport::Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

RateReport berinde_compare(std::span<const double> a, std::span<const double> b,
                           std::size_t horizon) {
  if (horizon < 2)
    throw std::invalid_argument("berinde_compare: horizon must be >= 2");
  if (a.size() < horizon || b.size() < horizon)
    throw std::invalid_argument("berinde_compare: sequences shorter than horizon");

  RateReport rep;
  rep.a.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(horizon));
  rep.b.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(horizon));
  rep.ratio.resize(horizon);
  for (std::size_t n = 0; n < horizon; ++n) {
    if (!(rep.a[n] > 0.0) || !(rep.b[n] > 0.0))
      throw std::invalid_argument("berinde_compare: entries must be positive");
    rep.ratio[n] = rep.a[n] / rep.b[n];
  }

  // Finite-horizon stand-in for lim ratio = 0: monotone decrease with a
  // 1e-3 overall decay. Documented, deterministic, symmetric.
  constexpr double kDecay = 1e-3;
  const bool non_increasing =
      std::is_sorted(rep.ratio.rbegin(), rep.ratio.rend());
  const bool non_decreasing = std::is_sorted(rep.ratio.begin(), rep.ratio.end());
  if (non_increasing && rep.ratio.back() < kDecay * rep.ratio.front())
    rep.verdict = RateReport::Verdict::A_faster;
  else if (non_decreasing && rep.ratio.front() < kDecay * rep.ratio.back())
    rep.verdict = RateReport::Verdict::B_faster;
  else
    rep.verdict = RateReport::Verdict::inconclusive;
  return rep;
}

RateReport compare_bound_rates(double theta, const ParamSchedule& s, double e0,
                               std::size_t horizon) {
  check_theta(theta);
  std::vector<double> a(horizon), b(horizon);
  for (std::size_t n = 0; n < horizon; ++n) {
    a[n] = bound_k_product(n, e0, theta, s);
    b[n] = bound_picard_s_product(n, e0, theta, s);
  }
  RateReport rep = berinde_compare(a, b, horizon);
  rep.theta = theta;
  rep.schedule_summary = s.describe();
  return rep;
}

namespace {

Point reference_point(const Mapping& m) {
  if (m.fixed_point_hint()) return *m.fixed_point_hint();
  return fixed_point_reference(m, 1e-12);
}

} // namespace

StabilityReport stability_forward(const Mapping& m, const ParamSchedule& s,
                                  const std::function<Point(std::size_t)>& t,
                                  std::size_t horizon) {
  if (horizon < 1) throw std::invalid_argument("stability_forward: horizon must be >= 1");
  const Point p = reference_point(m);

  StabilityReport rep;
  rep.t_error.reserve(horizon + 1);
  rep.eps.reserve(horizon);

  Point tn = t(0);
  if (!m.domain().contains(tn, 0.0))
    throw std::invalid_argument("stability_forward: t_0 leaves the domain");
  rep.t_error.push_back(distance(tn, p));
  for (std::size_t n = 0; n < horizon; ++n) {
    const auto [alpha, beta] = schedule_at(s, n);
    const Point f_tn = step_k(m, tn, alpha, beta).output;
    Point tn1 = t(n + 1);
    if (!m.domain().contains(tn1, 0.0))
      throw std::invalid_argument("stability_forward: t leaves the domain");
    rep.eps.push_back(distance(tn1, f_tn));
    rep.t_error.push_back(distance(tn1, p));
    tn = std::move(tn1);
  }

  rep.t_converges = window_below(rep.t_error, kStabilityWindowTol);
  rep.eps_converges = window_below(rep.eps, kStabilityWindowTol);
  rep.equivalence_holds = rep.t_converges == rep.eps_converges;
  rep.applicable = true;
  return rep;
}

StabilityReport stability_backward(const Mapping& m, const ParamSchedule& s,
                                   const std::function<Point(std::size_t)>& noise,
                                   std::size_t horizon, std::optional<Point> t0) {
  if (horizon < 1) throw std::invalid_argument("stability_backward: horizon must be >= 1");
  const Point p = reference_point(m);

  StabilityReport rep;
  rep.t_error.reserve(horizon + 1);
  rep.eps.reserve(horizon);

  Point tn = t0.value_or(m.domain().midpoint());
  if (!m.domain().contains(tn, 0.0))
    throw std::invalid_argument("stability_backward: t_0 outside the domain");
  rep.t_error.push_back(distance(tn, p));
  for (std::size_t n = 0; n < horizon; ++n) {
    const auto [alpha, beta] = schedule_at(s, n);
    const Point f_tn = step_k(m, tn, alpha, beta).output;
    Point tn1 = add_clamped(m.domain(), f_tn, noise(n));
    rep.eps.push_back(distance(tn1, f_tn));
    rep.t_error.push_back(distance(tn1, p));
    tn = std::move(tn1);
  }

  rep.t_converges = window_below(rep.t_error, kStabilityWindowTol);
  rep.eps_converges = window_below(rep.eps, kStabilityWindowTol);
  rep.equivalence_holds = rep.t_converges == rep.eps_converges;
  rep.applicable = rep.eps_converges;
  if (!rep.applicable)
    rep.note = "noise does not vanish: the tested direction's hypothesis eps_n -> 0 fails";
  return rep;
}

DataDependenceReport data_dependence(const Mapping& m, const Mapping& m_tilde, double eps,
                                     const ParamSchedule& s, std::size_t horizon) {
  if (!(eps >= 0.0)) throw std::invalid_argument("data_dependence: eps must be >= 0");
  if (horizon < 1) throw std::invalid_argument("data_dependence: horizon must be >= 1");
  if (m.domain().lower() != m_tilde.domain().lower() ||
      m.domain().upper() != m_tilde.domain().upper())
    throw std::invalid_argument("data_dependence: operators must share one domain");

  DataDependenceReport rep;
  rep.eps = eps;

  const GridEval ga = evaluate_on_grid(m, kDefaultGridSize);
  const GridEval gb = evaluate_on_grid(m_tilde, kDefaultGridSize);
  rep.grid_gap = kernels::max_pointwise_gap(ga, gb);
  if (rep.grid_gap > eps + kPropertyTolerance)
    throw std::invalid_argument(
        "data_dependence: approximate operator violates the eps gap on the grid");

  rep.schedule_half_ok = true;
  for (std::size_t n = 0; n < horizon && rep.schedule_half_ok; ++n) {
    const auto [a, b] = s.at(n);
    if (!(a * b >= 0.5)) rep.schedule_half_ok = false;
  }
  rep.schedule_divergent = s.divergent_sum_certified();

  if (!rep.schedule_half_ok || !rep.schedule_divergent) {
    rep.applicable = false;
    rep.bound_holds = false;
    rep.observed_gap = std::numeric_limits<double>::quiet_NaN();
    rep.theoretical_bound = std::numeric_limits<double>::quiet_NaN();
    rep.note = !rep.schedule_half_ok
                   ? "schedule violates alpha_n beta_n >= 1/2; no verdict"
                   : "schedule divergence not certified; no verdict";
    return rep;
  }

  rep.theta = estimate_contraction_modulus(m, kDefaultGridSize);
  if (!(rep.theta > 0.0 && rep.theta < 1.0)) {
    rep.applicable = false;
    rep.bound_holds = false;
    rep.observed_gap = std::numeric_limits<double>::quiet_NaN();
    rep.theoretical_bound = std::numeric_limits<double>::quiet_NaN();
    rep.note = "mapping is not a contraction on the grid (estimated modulus " +
               std::to_string(rep.theta) + "); no verdict";
    return rep;
  }
  // tol = 0: iterate the oracle all the way to the machine fixed point,
  // so that identical operators report a gap of exactly zero.
  rep.p = fixed_point_reference(m, 0.0);

  // Iterate the main scheme on the approximate operator to a machine
  // stall; the final iterate stands in for lim x~_n.
  const Trajectory traj = run(SchemeId::k, m_tilde, m_tilde.domain().midpoint(), s,
                              StopRule{horizon, 0.0, 0.0});
  rep.p_tilde = traj.records.back().x;
  if (traj.stop_reason == StopReason::max_iter)
    rep.note = "approximate orbit hit the horizon before stalling";

  rep.observed_gap = distance(*rep.p, *rep.p_tilde);
  rep.theoretical_bound = 7.0 * eps / (1.0 - rep.theta);
  rep.bound_holds = rep.observed_gap <= rep.theoretical_bound + kPropertyTolerance;
  return rep;
}

Mapping make_perturbed(const Mapping& m, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("make_perturbed: eps must be >= 0");
  const BoxDomain box = m.domain();
  auto eval = [m, eps, box](const Point& x) {
    Point y = m(x);
    std::vector<double> c(y.coords());
    c[0] += eps;
    return box.clamp(Point(std::move(c)));
  };
  // Clamping is 1-Lipschitz, so the perturbed map inherits m's modulus.
  return Mapping(m.id() + "_plus_eps", box, std::move(eval), m.theta_hint());
}

TrajectoryDiagnostics trajectory_diagnostics(const Trajectory& traj, const Point& p) {
  if (traj.records.empty())
    throw std::invalid_argument("trajectory_diagnostics: empty trajectory");
  TrajectoryDiagnostics d;
  d.final_residual = traj.records.back().residual;
  double prev_err = distance(traj.records.front().x, p);
  d.max_norm = norm(traj.records.front().x);
  for (std::size_t i = 1; i < traj.records.size(); ++i) {
    const double err = distance(traj.records[i].x, p);
    d.max_monotonicity_violation = std::max(d.max_monotonicity_violation, err - prev_err);
    d.max_norm = std::max(d.max_norm, norm(traj.records[i].x));
    prev_err = err;
  }
  return d;
}

} // namespace fixiter
