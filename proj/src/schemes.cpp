#include "fixiter/schemes.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fixiter/errors.hpp"

namespace fixiter {

std::string_view to_string(SchemeId id) {
  switch (id) {
    case SchemeId::k: return "k";
    case SchemeId::picard_s: return "picard_s";
    case SchemeId::thakur_new: return "thakur_new";
    case SchemeId::vatan_two_step: return "vatan_two_step";
    case SchemeId::picard: return "picard";
    case SchemeId::mann: return "mann";
    case SchemeId::ishikawa: return "ishikawa";
    case SchemeId::noor: return "noor";
  }
  return "?";
}

std::optional<SchemeId> scheme_from_string(std::string_view s) {
  for (SchemeId id : all_schemes())
    if (to_string(id) == s) return id;
  return std::nullopt;
}

std::vector<SchemeId> all_schemes() {
  return {SchemeId::k,      SchemeId::picard_s, SchemeId::thakur_new,
          SchemeId::vatan_two_step, SchemeId::picard,   SchemeId::mann,
          SchemeId::ishikawa, SchemeId::noor};
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::tol_reached: return "tol_reached";
    case StopReason::residual_reached: return "residual_reached";
    case StopReason::max_iter: return "max_iter";
    case StopReason::stalled: return "stalled";
  }
  return "?";
}

namespace {

void check_params(double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("step: alpha, beta must lie in [0,1]");
}

} // namespace

StepTrace step_k(const Mapping& m, const Point& x, double alpha, double beta) {
  check_params(alpha, beta);
  StepTrace t;
  t.input = x;
  const Point tx = m(x);
  const Point z = convex_combine(beta, x, tx);
  const Point tz = m(z);
  const Point y = m(convex_combine(alpha, tx, tz));
  t.output = m(y);
  t.intermediates = {{"z", z}, {"y", y}};
  return t;
}

StepTrace step_picard_s(const Mapping& m, const Point& u, double alpha, double beta) {
  check_params(alpha, beta);
  StepTrace t;
  t.input = u;
  const Point tu = m(u);
  const Point w = convex_combine(beta, u, tu);
  const Point tw = m(w);
  const Point v = convex_combine(alpha, tu, tw);
  t.output = m(v);
  t.intermediates = {{"w", w}, {"v", v}};
  return t;
}

StepTrace step_thakur_new(const Mapping& m, const Point& u, double alpha, double beta) {
  check_params(alpha, beta);
  StepTrace t;
  t.input = u;
  const Point tu = m(u);
  const Point w = convex_combine(beta, u, tu);
  const Point v = m(convex_combine(alpha, u, w));
  t.output = m(v);
  t.intermediates = {{"w", w}, {"v", v}};
  return t;
}

StepTrace step_vatan_two_step(const Mapping& m, const Point& u, double alpha, double beta) {
  check_params(alpha, beta);
  StepTrace t;
  t.input = u;
  const Point tu = m(u);
  const Point v = m(convex_combine(beta, u, tu));
  const Point tv = m(v);
  t.output = m(convex_combine(alpha, v, tv));
  t.intermediates = {{"v", v}};
  return t;
}

StepTrace step_classic(SchemeId id, const Mapping& m, const Point& x, double alpha,
                       double beta, double gamma) {
  check_params(alpha, beta);
  StepTrace t;
  t.input = x;
  switch (id) {
    case SchemeId::picard:
      t.output = m(x);
      break;
    case SchemeId::mann:
      t.output = convex_combine(alpha, x, m(x));
      break;
    case SchemeId::ishikawa: {
      const Point y = convex_combine(beta, x, m(x));
      t.output = convex_combine(alpha, x, m(y));
      t.intermediates = {{"y", y}};
      break;
    }
    case SchemeId::noor: {
      if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::invalid_argument("step: gamma must lie in [0,1]");
      const Point z = convex_combine(gamma, x, m(x));
      const Point y = convex_combine(beta, x, m(z));
      t.output = convex_combine(alpha, x, m(y));
      t.intermediates = {{"z", z}, {"y", y}};
      break;
    }
    default:
      throw std::invalid_argument("step_classic: not a classic scheme id");
  }
  return t;
}

StepTrace step(SchemeId id, const Mapping& m, const Point& x, double alpha, double beta,
               double gamma) {
  switch (id) {
    case SchemeId::k: return step_k(m, x, alpha, beta);
    case SchemeId::picard_s: return step_picard_s(m, x, alpha, beta);
    case SchemeId::thakur_new: return step_thakur_new(m, x, alpha, beta);
    case SchemeId::vatan_two_step: return step_vatan_two_step(m, x, alpha, beta);
    default: return step_classic(id, m, x, alpha, beta, gamma);
  }
}

void StopRule::validate() const {
  if (max_iter < 1)
    throw std::invalid_argument("StopRule: max_iter must be >= 1");
  if (tol_step && !(*tol_step >= 0.0))
    throw std::invalid_argument("StopRule: tol_step must be >= 0");
  if (tol_res && !(*tol_res >= 0.0))
    throw std::invalid_argument("StopRule: tol_res must be >= 0");
}

Trajectory run(SchemeId id, const Mapping& m, const Point& x0, const ParamSchedule& s,
               const StopRule& stop, std::optional<double> gamma) {
  stop.validate();
  if (!m.domain().contains(x0, 0.0))
    throw std::invalid_argument("run: x0 outside the domain of '" + m.id() + "'");
  if (gamma && !(*gamma >= 0.0 && *gamma <= 1.0))
    throw std::invalid_argument("run: gamma must lie in [0,1]");

  const std::optional<Point>& p = m.fixed_point_hint();
  const auto residual_of = [&m](const Point& x) { return distance(m(x), x); };

  Trajectory traj;
  traj.scheme = id;
  traj.mapping_id = m.id();
  traj.schedule = s.describe();
  traj.x0 = x0;

  TrajectoryRecord r0;
  r0.n = 0;
  r0.x = x0;
  r0.residual = residual_of(x0);
  if (p) r0.error = distance(x0, *p);
  traj.records.push_back(std::move(r0));

  traj.stop_reason = StopReason::max_iter;
  const bool dynamic_rules = stop.tol_step.has_value() || stop.tol_res.has_value();

  for (std::size_t n = 0; n < stop.max_iter; ++n) {
    const auto [alpha, beta] = schedule_at(s, n);
    const Point& xn = traj.records.back().x;
    StepTrace trace = step(id, m, xn, alpha, beta, gamma.value_or(beta));
    trace.n = n;

    for (double c : trace.output.coords())
      if (!std::isfinite(c)) {
        std::ostringstream os;
        os << "run: scheme '" << to_string(id) << "' on '" << m.id()
           << "' produced a non-finite iterate at step " << n + 1;
        throw NumericError(os.str());
      }

    TrajectoryRecord rec;
    rec.n = n + 1;
    rec.x = trace.output;
    rec.residual = residual_of(rec.x);
    if (p) rec.error = distance(rec.x, *p);
    rec.trace = std::move(trace);

    const double step_norm = distance(rec.x, xn);
    const bool two_cycle = traj.records.size() >= 2 &&
                           rec.x == traj.records[traj.records.size() - 2].x &&
                           step_norm != 0.0;
    const double res = rec.residual;
    traj.records.push_back(std::move(rec));

    if (dynamic_rules) {
      if (stop.tol_step && step_norm <= *stop.tol_step) {
        traj.stop_reason = StopReason::tol_reached;
        break;
      }
      if (stop.tol_res && res <= *stop.tol_res) {
        traj.stop_reason = StopReason::residual_reached;
        break;
      }
      if (two_cycle) {
        traj.stop_reason = StopReason::stalled;
        break;
      }
    }
  }
  return traj;
}

} // namespace fixiter
