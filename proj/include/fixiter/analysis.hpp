#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fixiter/core.hpp"
#include "fixiter/mapping.hpp"
#include "fixiter/schemes.hpp"

namespace fixiter {

// ---------------------------------------------------------------------------
// Theoretical error bounds for a contraction with modulus theta.
//
// The theta powers are computed as r = pow(theta, n+1) raised by repeated
// multiplication (r*r*r and r*r), and the schedule product is accumulated
// identically in every bound. This keeps the exact rate identity
// bound_k_product / bound_picard_s_product == theta^(n+1) within a few ulp,
// which the test suite asserts at 4 ulp.
// ---------------------------------------------------------------------------

/// e0 * theta^(3(n+1)) * prod_{k=0}^{n} (1 - alpha_k beta_k (1-theta)).
double bound_k_product(std::size_t n, double e0, double theta, const ParamSchedule& s);

/// e0 * theta^(3(n+1)) * exp(-(1-theta) * sum_{k=0}^{n} alpha_k beta_k).
/// Dominates bound_k_product termwise (1 - x <= e^-x).
double bound_k_exponential(std::size_t n, double e0, double theta, const ParamSchedule& s);

/// e0 * theta^(2(n+1)) * prod_{k=0}^{n} (1 - alpha_k beta_k (1-theta)).
double bound_picard_s_product(std::size_t n, double e0, double theta,
                              const ParamSchedule& s);

/// theta^(n+1): the exact ratio of the two product bounds.
double rate_ratio(double theta, std::size_t n);

/// Outcome of a Berinde-style rate comparison between two positive bound
/// sequences converging to zero.
struct RateReport {
  enum class Verdict { A_faster, B_faster, inconclusive };

  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> ratio;  // a_n / b_n
  Verdict verdict = Verdict::inconclusive;
  std::optional<double> theta;
  std::string schedule_summary;
};

std::string_view to_string(RateReport::Verdict v);

/// Finite-horizon decision rule for "a_n/b_n -> 0": A_faster when the
/// ratio is non-increasing over the horizon and the final ratio is below
/// 1e-3 of the initial one; B_faster symmetrically; inconclusive
/// otherwise. Entries must be positive over the horizon.
RateReport berinde_compare(std::span<const double> a, std::span<const double> b,
                           std::size_t horizon);

/// Builds the two product-bound sequences for the same (e0, schedule) and
/// runs berinde_compare on them.
RateReport compare_bound_rates(double theta, const ParamSchedule& s, double e0,
                               std::size_t horizon);

// ---------------------------------------------------------------------------
// Stability harness. f(T, .) is one full step of the main scheme under the
// given schedule; eps_n = ||t_{n+1} - f(T, t_n)||.
// ---------------------------------------------------------------------------

/// Trailing-window limit criterion: limits are undecidable from finite
/// data, so "-> 0" means the max over the last kStabilityWindow computed
/// terms is below kStabilityWindowTol.
inline constexpr std::size_t kStabilityWindow = 10;
inline constexpr double kStabilityWindowTol = 1e-8;

struct StabilityReport {
  std::vector<double> t_error;  // ||t_n - p||
  std::vector<double> eps;      // eps_n
  bool t_converges = false;
  bool eps_converges = false;
  bool equivalence_holds = false;  // t_converges == eps_converges
  bool applicable = true;          // hypothesis of the tested direction held
  std::string note;
};

/// Direction t_n -> p implies eps_n -> 0: evaluates eps_n for a given
/// deterministic sequence t and reports both window verdicts.
StabilityReport stability_forward(const Mapping& m, const ParamSchedule& s,
                                  const std::function<Point(std::size_t)>& t,
                                  std::size_t horizon);

/// Direction eps_n -> 0 implies t_n -> p: generates
/// t_{n+1} = clamp(step(t_n) + noise(n)) so that eps_n <= ||noise(n)||,
/// and reports whether t_n reaches p. When the noise does not vanish the
/// report is flagged not applicable rather than given a verdict.
StabilityReport stability_backward(const Mapping& m, const ParamSchedule& s,
                                   const std::function<Point(std::size_t)>& noise,
                                   std::size_t horizon,
                                   std::optional<Point> t0 = std::nullopt);

// ---------------------------------------------------------------------------
// Data dependence: how far the fixed point of an approximate operator can
// drift, against the 7 eps / (1 - theta) bound.
// ---------------------------------------------------------------------------

struct DataDependenceReport {
  double eps = 0.0;        // operator gap bound
  double grid_gap = 0.0;   // measured sup ||Tx - T~x|| over the grid
  double theta = 0.0;      // estimated contraction modulus of m
  std::optional<Point> p;
  std::optional<Point> p_tilde;
  double observed_gap = 0.0;
  double theoretical_bound = 0.0;
  bool bound_holds = false;
  bool schedule_half_ok = false;  // alpha_n beta_n >= 1/2 over the horizon
  bool schedule_divergent = false;
  bool applicable = true;
  std::string note;
};

/// Verifies the operator gap on a grid, checks the schedule assumptions
/// (alpha_n beta_n >= 1/2 and certified divergence), computes p by the
/// independent fixed-point oracle and p~ by iterating the main scheme on
/// m_tilde to a machine stall, then tests the drift bound. When a
/// schedule assumption fails the report is flagged not applicable and no
/// verdict is fabricated.
DataDependenceReport data_dependence(const Mapping& m, const Mapping& m_tilde, double eps,
                                     const ParamSchedule& s, std::size_t horizon);

/// T~ = clamp(T(x) + eps in the first coordinate): a concrete family of
/// approximate operators; the clamp preserves ||Tx - T~x|| <= eps.
Mapping make_perturbed(const Mapping& m, double eps);

// ---------------------------------------------------------------------------
// Orbit diagnostics.
// ---------------------------------------------------------------------------

struct TrajectoryDiagnostics {
  double max_monotonicity_violation = 0.0;  // max over n of ||x_{n+1}-p|| - ||x_n-p||, floored at 0
  double final_residual = 0.0;
  double max_norm = 0.0;  // boundedness certificate
};

TrajectoryDiagnostics trajectory_diagnostics(const Trajectory& traj, const Point& p);

} // namespace fixiter
