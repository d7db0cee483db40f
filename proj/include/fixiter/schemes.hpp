#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixiter/core.hpp"
#include "fixiter/mapping.hpp"

namespace fixiter {

/// Closed scheme enumeration; serialized as the exact lowercase strings.
enum class SchemeId {
  k,
  picard_s,
  thakur_new,
  vatan_two_step,
  picard,
  mann,
  ishikawa,
  noor,
};

std::string_view to_string(SchemeId id);
std::optional<SchemeId> scheme_from_string(std::string_view s);
std::vector<SchemeId> all_schemes();

/// One step of a scheme: the input iterate, the named intermediate
/// points in evaluation order, and the output iterate.
struct StepTrace {
  std::size_t n = 0;
  Point input;
  std::vector<std::pair<std::string, Point>> intermediates;
  Point output;
};

// Step functions. Convex combinations are evaluated literally as
// (1-t)*x + t*y in display order; T-evaluation counts per step are part
// of the contract and are verified by the instrumented Mapping counter.

/// z = (1-b)x + bTx; y = T((1-a)Tx + aTz); out = Ty.   4 evaluations of T.
StepTrace step_k(const Mapping& m, const Point& x, double alpha, double beta);

/// w = (1-b)u + bTu; v = (1-a)Tu + aTw; out = Tv.      3 evaluations of T.
StepTrace step_picard_s(const Mapping& m, const Point& u, double alpha, double beta);

/// w = (1-b)u + bTu; v = T((1-a)u + aw); out = Tv.     3 evaluations of T.
StepTrace step_thakur_new(const Mapping& m, const Point& u, double alpha, double beta);

/// v = T((1-b)u + bTu); out = T((1-a)v + aTv).         4 evaluations of T.
StepTrace step_vatan_two_step(const Mapping& m, const Point& u, double alpha, double beta);

/// Classic one-to-three-stage schemes:
///   picard:   out = Tx                                 1 evaluation
///   mann:     out = (1-a)x + aTx                       1 evaluation
///   ishikawa: y = (1-b)x + bTx; out = (1-a)x + aTy     2 evaluations
///   noor:     z = (1-g)x + gTx; y = (1-b)x + bTz;
///             out = (1-a)x + aTy                       3 evaluations
/// gamma is ignored except for noor.
StepTrace step_classic(SchemeId id, const Mapping& m, const Point& x, double alpha,
                       double beta, double gamma);

/// Dispatch on any SchemeId.
StepTrace step(SchemeId id, const Mapping& m, const Point& x, double alpha, double beta,
               double gamma);

enum class StopReason { tol_reached, residual_reached, max_iter, stalled };

std::string_view to_string(StopReason r);

/// Orbit termination. A disengaged tolerance (nullopt) turns the run
/// into a pure fixed-count iteration: reference-table reproduction
/// iterates a fixed count even though the orbit stalls bitwise earlier.
/// With the default tol_step = 0 an exact stall stops the run as
/// tol_reached; a bitwise 2-cycle stops it as stalled.
struct StopRule {
  std::size_t max_iter = 100;
  std::optional<double> tol_step = 0.0;  // ||x_{n+1} - x_n|| <= tol_step
  std::optional<double> tol_res = 0.0;   // ||T x_{n+1} - x_{n+1}|| <= tol_res

  static StopRule fixed_count(std::size_t n) {
    return StopRule{n, std::nullopt, std::nullopt};
  }
  void validate() const;
};

struct TrajectoryRecord {
  std::size_t n = 0;
  Point x;
  double residual = 0.0;                 // ||T x_n - x_n||
  std::optional<double> error;           // ||x_n - p|| when p is known
  std::optional<StepTrace> trace;        // the step that produced x_n; none for n = 0
};

struct Trajectory {
  SchemeId scheme = SchemeId::k;
  std::string mapping_id;
  std::string schedule;
  Point x0;
  std::vector<TrajectoryRecord> records;
  StopReason stop_reason = StopReason::max_iter;
};

/// Generates the orbit of a scheme from x0 under schedule s. Records the
/// residual at every step and the error to the mapping's reference fixed
/// point when one is known. Throws NumericError on a non-finite iterate.
/// gamma applies to noor only and defaults to beta_n at each step.
Trajectory run(SchemeId id, const Mapping& m, const Point& x0, const ParamSchedule& s,
               const StopRule& stop, std::optional<double> gamma = std::nullopt);

} // namespace fixiter
