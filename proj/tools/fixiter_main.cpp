// fixiter: fixed-point iteration laboratory CLI.
//
// Subcommands: run, compare, table1, stability, datadep, check-map, bounds.
// Exit codes: 0 success, 1 reference-table mismatch, 2 configuration error,
// 3 numeric failure.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fixiter/analysis.hpp"
#include "fixiter/errors.hpp"
#include "fixiter/kernels.hpp"
#include "fixiter/mapping.hpp"
#include "fixiter/properties.hpp"
#include "fixiter/report.hpp"
#include "fixiter/schemes.hpp"

namespace {

using namespace fixiter;

constexpr double kGoldenCellTol = 1e-12;
constexpr double kConvergedTol = 5e-16;

std::size_t property_grid_size() {
  if (const char* env = std::getenv("FIXITER_GRID")) {
    std::size_t v = 0;
    try {
      v = static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw std::invalid_argument("FIXITER_GRID: not a number: '" + std::string(env) + "'");
    }
    if (v < 2) throw std::invalid_argument("FIXITER_GRID must be >= 2");
    return v;
  }
  return kDefaultGridSize;
}

struct CommonOptions {
  std::string map = "cbrt";
  std::vector<std::string> schemes;
  double x0 = std::numeric_limits<double>::quiet_NaN();  // NaN = domain midpoint
  double alpha = 0.25;
  double beta = 0.25;
  std::optional<double> gamma;
  std::size_t max_iter = 100;
  double tol_step = 0.0;
  double tol_res = 0.0;
  std::string out;
  std::string format = "csv";
  std::string svg;
};

void add_map_option(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--map", o.map, "mapping id (cbrt, half, cosine, identity, double)")
      ->capture_default_str();
}

void add_schedule_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--alpha", o.alpha, "constant alpha_n")->capture_default_str();
  cmd->add_option("--beta", o.beta, "constant beta_n")->capture_default_str();
}

void add_output_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--out", o.out, "output file (default <command>.<format>)");
  cmd->add_option("--format", o.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

Point resolve_x0(const Mapping& m, double x0_flag) {
  if (std::isnan(x0_flag)) return m.domain().midpoint();
  const Point p = Point::scalar(x0_flag);
  if (!m.domain().contains(p, 0.0))
    throw std::invalid_argument("--x0 outside the domain of '" + m.id() + "'");
  return p;
}

SchemeId parse_scheme(const std::string& s) {
  const auto id = scheme_from_string(s);
  if (!id)
    throw std::invalid_argument("unknown scheme '" + s +
                                "' (known: k, picard_s, thakur_new, vatan_two_step, "
                                "picard, mann, ishikawa, noor)");
  return *id;
}

std::string out_path(const CommonOptions& o, const std::string& command) {
  if (!o.out.empty()) return o.out;
  return command + "." + o.format;
}

Json config_json(const std::string& command, const CommonOptions& o) {
  Json c;
  c["command"] = command;
  c["map"] = o.map;
  if (!o.schemes.empty()) c["schemes"] = o.schemes;
  if (!std::isnan(o.x0)) c["x0"] = o.x0;
  c["alpha"] = o.alpha;
  c["beta"] = o.beta;
  if (o.gamma) c["gamma"] = *o.gamma;
  c["max_iter"] = o.max_iter;
  c["tol_step"] = o.tol_step;
  c["tol_res"] = o.tol_res;
  c["format"] = o.format;
  return c;
}

Json point_json(const Point& p) { return Json(p.coords()); }

Json property_json(const PropertyReport& rep) {
  Json j;
  j["property"] = std::string(to_string(rep.property));
  j["verdict"] = rep.passed ? "pass" : "fail";
  j["samples_checked"] = rep.samples_checked;
  if (rep.estimated_modulus) j["estimated_modulus"] = *rep.estimated_modulus;
  if (rep.witness) {
    j["witness"] = Json::object();
    j["witness"]["x"] = point_json(rep.witness->first);
    j["witness"]["y"] = point_json(rep.witness->second);
  }
  return j;
}

// --- table1 -----------------------------------------------------------------

int cmd_table1(const CommonOptions& o) {
  const ReferenceTable& ref = cbrt_reference_table();
  const Mapping m = builtin_cbrt_map();
  const ParamSchedule s = ParamSchedule::constant(ref.alpha, ref.beta);
  const Point x0 = Point::scalar(ref.x0);

  std::vector<Trajectory> trajs;
  for (SchemeId id : ref.schemes)
    trajs.push_back(run(id, m, x0, s, StopRule::fixed_count(kReferenceRows - 1)));

  write_file(out_path(o, "table1"), iterate_table(trajs).to_string());

  for (std::size_t c = 0; c < ref.schemes.size(); ++c)
    for (std::size_t n = 0; n < kReferenceRows; ++n) {
      const double got = trajs[c].records[n].x.as_scalar();
      const double want = ref.columns[c][n];
      if (!(std::abs(got - want) <= kGoldenCellTol)) {
        std::cerr << "table1: mismatch at scheme " << to_string(ref.schemes[c])
                  << ", row x_" << n << ": computed " << format_double(got)
                  << ", reference " << format_double(want) << " (|diff| "
                  << format_double(std::abs(got - want)) << " > 1e-12)\n";
        return 1;
      }
    }
  std::cout << "table1: all " << ref.schemes.size() * kReferenceRows
            << " cells match the reference within 1e-12\n";
  return 0;
}

// --- run ---------------------------------------------------------------------

int cmd_run(const CommonOptions& o) {
  if (o.schemes.size() != 1)
    throw std::invalid_argument("run: exactly one --scheme required");
  const SchemeId id = parse_scheme(o.schemes[0]);
  const Mapping m = catalog_mapping(o.map);
  const Point x0 = resolve_x0(m, o.x0);
  const ParamSchedule s = ParamSchedule::constant(o.alpha, o.beta);
  const StopRule stop{o.max_iter, o.tol_step, o.tol_res};

  const Trajectory traj = run(id, m, x0, s, stop, o.gamma);

  const std::string path = out_path(o, "run");
  if (o.format == "csv") {
    write_file(path, trajectory_table(traj).to_string());
  } else {
    Json results;
    results["trajectory"] = to_json(traj);
    Json checks;
    checks["final_residual"] = traj.records.back().residual;
    checks["stop_reason"] = std::string(to_string(traj.stop_reason));
    write_file(path, make_envelope(config_json("run", o), results, checks).dump(2) + "\n");
  }
  std::cout << "run: " << to_string(id) << " on " << o.map << ", "
            << traj.records.size() - 1 << " steps, stop_reason "
            << to_string(traj.stop_reason) << ", final residual "
            << format_double(traj.records.back().residual) << " -> " << path << "\n";
  return 0;
}

// --- compare -----------------------------------------------------------------

int cmd_compare(const CommonOptions& o) {
  if (o.schemes.size() < 2)
    throw std::invalid_argument("compare: at least two --scheme values required");
  std::vector<SchemeId> ids;
  for (const auto& s : o.schemes) ids.push_back(parse_scheme(s));

  const Mapping m = catalog_mapping(o.map);
  const Point x0 = resolve_x0(m, o.x0);
  const ParamSchedule sched = ParamSchedule::constant(o.alpha, o.beta);

  // Ground truth for error curves: the reference fixed point.
  Point p;
  if (m.fixed_point_hint()) {
    p = *m.fixed_point_hint();
  } else {
    const double modulus = estimate_contraction_modulus(m, property_grid_size());
    if (!(modulus < 1.0))
      throw std::invalid_argument(
          "compare: mapping '" + m.id() +
          "' has no reference fixed point and is not contractive (estimated modulus " +
          format_double(modulus) + "); error curves have no ground truth");
    p = fixed_point_reference(m, 1e-12);
  }

  std::vector<Trajectory> trajs;
  for (SchemeId id : ids)
    trajs.push_back(run(id, m, x0, sched, StopRule::fixed_count(o.max_iter), o.gamma));

  // First index at which each scheme's iterate equals the converged value.
  Json first_idx = Json::object();
  std::cout << "compare on " << o.map << " (p = " << format_double(p.as_scalar())
            << "):\n";
  for (const auto& traj : trajs) {
    long first = -1;
    for (const auto& rec : traj.records)
      if (distance(rec.x, p) <= kConvergedTol) {
        first = static_cast<long>(rec.n);
        break;
      }
    first_idx[std::string(to_string(traj.scheme))] = first;
    std::cout << "  " << to_string(traj.scheme) << ": first index at converged value "
              << (first < 0 ? std::string("none") : std::to_string(first)) << "\n";
  }

  // Theoretical bound comparison (main scheme vs picard_s) at the
  // grid-estimated modulus, when the map is contractive.
  Json rate = Json::object();
  const double modulus = estimate_contraction_modulus(m, property_grid_size());
  if (modulus > 0.0 && modulus < 1.0) {
    const double e0 = distance(x0, p);
    if (e0 > 0.0) {
      const RateReport rr = compare_bound_rates(modulus, sched, e0, o.max_iter + 1);
      rate["theta"] = modulus;
      rate["schedule"] = rr.schedule_summary;
      rate["verdict"] = std::string(to_string(rr.verdict));
      rate["ratio_first"] = rr.ratio.front();
      rate["ratio_last"] = rr.ratio.back();
      std::cout << "  bound rate verdict (k vs picard_s): " << to_string(rr.verdict)
                << " at theta " << format_double(modulus) << "\n";
    }
  } else {
    rate["note"] = "map not contractive on the grid; bound comparison skipped";
  }

  const std::string path = out_path(o, "compare");
  if (o.format == "csv") {
    write_file(path, error_table(trajs, p).to_string());
  } else {
    Json results;
    results["fixed_point"] = point_json(p);
    results["first_converged_index"] = first_idx;
    results["rate_report"] = rate;
    Json curves = Json::object();
    for (const auto& traj : trajs) {
      std::vector<double> errs;
      for (const auto& rec : traj.records) errs.push_back(distance(rec.x, p));
      curves[std::string(to_string(traj.scheme))] = errs;
    }
    results["error_curves"] = curves;
    Json checks;
    checks["schemes_compared"] = o.schemes.size();
    write_file(path,
               make_envelope(config_json("compare", o), results, checks).dump(2) + "\n");
  }

  if (!o.svg.empty()) {
    std::vector<ChartSeries> series;
    for (const auto& traj : trajs) {
      ChartSeries cs;
      cs.name = to_string(traj.scheme);
      for (const auto& rec : traj.records) cs.values.push_back(distance(rec.x, p));
      series.push_back(std::move(cs));
    }
    write_file(o.svg, svg_log_chart(series, "|x_n - p|"));
    std::cout << "  chart -> " << o.svg << "\n";
  }
  std::cout << "  -> " << path << "\n";
  return 0;
}

// --- stability ---------------------------------------------------------------

int cmd_stability(const CommonOptions& o, const std::string& direction,
                  const std::string& kind, double magnitude) {
  const Mapping m = catalog_mapping(o.map);
  const ParamSchedule s = ParamSchedule::constant(o.alpha, o.beta);
  const Point p = m.fixed_point_hint() ? *m.fixed_point_hint()
                                       : fixed_point_reference(m, 1e-12);
  const BoxDomain box = m.domain();

  StabilityReport rep;
  if (direction == "forward") {
    std::function<Point(std::size_t)> t;
    if (kind == "decay") {
      t = [p, magnitude, box](std::size_t n) {
        return box.clamp(Point::scalar(p.as_scalar() + magnitude * std::pow(0.5, static_cast<double>(n))));
      };
    } else if (kind == "oscillate") {
      t = [p, magnitude, box](std::size_t n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        return box.clamp(Point::scalar(p.as_scalar() + sign * magnitude));
      };
    } else if (kind == "at-p") {
      t = [p](std::size_t) { return p; };
    } else {
      throw std::invalid_argument("stability: forward --kind must be decay, oscillate or at-p");
    }
    rep = stability_forward(m, s, t, o.max_iter);
  } else if (direction == "backward") {
    std::function<Point(std::size_t)> noise;
    if (kind == "decay") {
      noise = [magnitude](std::size_t n) {
        return Point::scalar(magnitude * std::pow(0.5, static_cast<double>(n)));
      };
    } else if (kind == "constant") {
      noise = [magnitude](std::size_t) { return Point::scalar(magnitude); };
    } else if (kind == "zero") {
      noise = [](std::size_t) { return Point::scalar(0.0); };
    } else {
      throw std::invalid_argument("stability: backward --kind must be decay, constant or zero");
    }
    rep = stability_backward(m, s, noise, o.max_iter);
  } else {
    throw std::invalid_argument("stability: --direction must be forward or backward");
  }

  const std::string path = out_path(o, "stability");
  if (o.format == "csv") {
    CsvTable t;
    t.header = {"n", "t_error", "eps"};
    for (std::size_t n = 0; n < rep.t_error.size(); ++n) {
      std::vector<std::string> row{std::to_string(n), format_double(rep.t_error[n]),
                                   n < rep.eps.size() ? format_double(rep.eps[n]) : ""};
      t.rows.push_back(std::move(row));
    }
    write_file(path, t.to_string());
  } else {
    Json cfg = config_json("stability", o);
    cfg["direction"] = direction;
    cfg["kind"] = kind;
    cfg["magnitude"] = magnitude;
    Json results;
    results["t_converges"] = rep.t_converges;
    results["eps_converges"] = rep.eps_converges;
    results["equivalence_holds"] = rep.equivalence_holds;
    results["applicable"] = rep.applicable;
    if (!rep.note.empty()) results["note"] = rep.note;
    results["t_error"] = rep.t_error;
    results["eps"] = rep.eps;
    Json checks;
    checks["window"] = kStabilityWindow;
    checks["window_tol"] = kStabilityWindowTol;
    write_file(path, make_envelope(std::move(cfg), results, checks).dump(2) + "\n");
  }
  std::cout << "stability " << direction << "/" << kind << " on " << o.map
            << ": t_converges=" << (rep.t_converges ? "yes" : "no")
            << " eps_converges=" << (rep.eps_converges ? "yes" : "no")
            << " equivalence=" << (rep.equivalence_holds ? "holds" : "violated");
  if (!rep.applicable) std::cout << " [not applicable: " << rep.note << "]";
  std::cout << " -> " << path << "\n";
  return 0;
}

// --- datadep -----------------------------------------------------------------

int cmd_datadep(const CommonOptions& o, double eps) {
  const Mapping m = catalog_mapping(o.map);
  const Mapping m_tilde = make_perturbed(m, eps);
  const ParamSchedule s = ParamSchedule::constant(o.alpha, o.beta);

  const DataDependenceReport rep = data_dependence(m, m_tilde, eps, s, o.max_iter);

  const std::string path = out_path(o, "datadep");
  Json cfg = config_json("datadep", o);
  cfg["eps"] = eps;
  Json results;
  results["applicable"] = rep.applicable;
  results["schedule_half_ok"] = rep.schedule_half_ok;
  results["schedule_divergent"] = rep.schedule_divergent;
  results["grid_gap"] = rep.grid_gap;
  if (rep.applicable) {
    results["theta"] = rep.theta;
    results["p"] = point_json(*rep.p);
    results["p_tilde"] = point_json(*rep.p_tilde);
    results["observed_gap"] = rep.observed_gap;
    results["theoretical_bound"] = rep.theoretical_bound;
    results["bound_holds"] = rep.bound_holds;
  }
  if (!rep.note.empty()) results["note"] = rep.note;
  Json checks;
  checks["tolerance"] = kPropertyTolerance;
  if (o.format == "csv") {
    CsvTable t;
    t.header = {"eps", "observed_gap", "theoretical_bound", "bound_holds", "applicable"};
    t.rows.push_back({format_double(eps), format_double(rep.observed_gap),
                      format_double(rep.theoretical_bound), rep.bound_holds ? "1" : "0",
                      rep.applicable ? "1" : "0"});
    write_file(path, t.to_string());
  } else {
    write_file(path, make_envelope(std::move(cfg), results, checks).dump(2) + "\n");
  }

  if (!rep.applicable) {
    std::cout << "datadep on " << o.map << ": not applicable (" << rep.note << ") -> "
              << path << "\n";
  } else {
    std::cout << "datadep on " << o.map << ": eps=" << format_double(eps)
              << " observed_gap=" << format_double(rep.observed_gap)
              << " bound=" << format_double(rep.theoretical_bound) << " holds="
              << (rep.bound_holds ? "yes" : "no") << " -> " << path << "\n";
  }
  return 0;
}

// --- check-map ---------------------------------------------------------------

int cmd_check_map(const CommonOptions& o) {
  const Mapping m = catalog_mapping(o.map);
  const std::size_t grid = property_grid_size();

  const double modulus = estimate_contraction_modulus(m, grid);
  PropertyReport contraction;
  contraction.property = MapProperty::contraction;
  contraction.passed = modulus < 1.0;
  contraction.samples_checked = grid * (grid - 1) / 2;
  contraction.estimated_modulus = modulus;

  const PropertyReport nonexp = check_nonexpansive(m, grid);
  const PropertyReport cond_c = check_condition_c(m, grid);
  const PropertyReport p1iii = check_prop1_iii(m, grid);

  std::optional<PropertyReport> quasi;
  std::optional<Point> p = m.fixed_point_hint();
  if (!p && modulus < 1.0) p = fixed_point_reference(m, 1e-12);
  if (p) quasi = check_quasi_nonexpansive(m, *p, grid);

  std::vector<const PropertyReport*> reports{&contraction, &nonexp, &cond_c, &p1iii};
  if (quasi) reports.push_back(&*quasi);

  const std::string path = out_path(o, "check-map");
  if (o.format == "csv") {
    CsvTable t;
    t.header = {"property", "verdict", "samples_checked", "estimated_modulus",
                "witness_x", "witness_y"};
    for (const auto* rep : reports) {
      std::vector<std::string> row{
          std::string(to_string(rep->property)), rep->passed ? "pass" : "fail",
          std::to_string(rep->samples_checked),
          rep->estimated_modulus ? format_double(*rep->estimated_modulus) : "",
          rep->witness ? format_double(rep->witness->first.as_scalar()) : "",
          rep->witness ? format_double(rep->witness->second.as_scalar()) : ""};
      t.rows.push_back(std::move(row));
    }
    write_file(path, t.to_string());
  } else {
    Json cfg = config_json("check-map", o);
    cfg["grid"] = grid;
    Json results = Json::array();
    for (const auto* rep : reports) results.push_back(property_json(*rep));
    Json checks;
    checks["tolerance"] = kPropertyTolerance;
    if (p) checks["fixed_point"] = point_json(*p);
    write_file(path, make_envelope(std::move(cfg), results, checks).dump(2) + "\n");
  }

  std::cout << "check-map " << o.map << " (grid " << grid << "):\n";
  for (const auto* rep : reports) {
    std::cout << "  " << to_string(rep->property) << ": "
              << (rep->passed ? "pass" : "fail");
    if (rep->estimated_modulus)
      std::cout << " (estimated modulus " << format_double(*rep->estimated_modulus) << ")";
    if (rep->witness)
      std::cout << " witness x=" << format_double(rep->witness->first.as_scalar())
                << " y=" << format_double(rep->witness->second.as_scalar());
    std::cout << "\n";
  }
  if (!quasi) std::cout << "  quasi_nonexpansive: skipped (no reference fixed point)\n";
  std::cout << "  -> " << path << "\n";
  return 0;
}

// --- bounds ------------------------------------------------------------------

int cmd_bounds(const CommonOptions& o) {
  const Mapping m = catalog_mapping(o.map);
  const double theta = estimate_contraction_modulus(m, property_grid_size());
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("bounds: '" + o.map +
                                "' is not contractive on the grid (estimated modulus " +
                                format_double(theta) + ")");
  const Point p = m.fixed_point_hint() ? *m.fixed_point_hint()
                                       : fixed_point_reference(m, 1e-12);
  const Point x0 = resolve_x0(m, o.x0);
  const double e0 = distance(x0, p);
  const ParamSchedule s = ParamSchedule::constant(o.alpha, o.beta);
  const std::size_t horizon = o.max_iter;

  const std::string path = out_path(o, "bounds");
  CsvTable t;
  t.header = {"n", "bound_k_product", "bound_k_exponential", "bound_picard_s_product",
              "rate_ratio"};
  for (std::size_t n = 0; n < horizon; ++n) {
    t.rows.push_back({std::to_string(n), format_double(bound_k_product(n, e0, theta, s)),
                      format_double(bound_k_exponential(n, e0, theta, s)),
                      format_double(bound_picard_s_product(n, e0, theta, s)),
                      format_double(rate_ratio(theta, n))});
  }

  RateReport rr;
  bool have_rate = e0 > 0.0 && horizon >= 2;
  if (have_rate) rr = compare_bound_rates(theta, s, e0, horizon);

  if (o.format == "csv") {
    write_file(path, t.to_string());
  } else {
    Json cfg = config_json("bounds", o);
    Json results;
    results["theta"] = theta;
    results["e0"] = e0;
    Json rows = Json::array();
    for (std::size_t n = 0; n < horizon; ++n) {
      Json r;
      r["n"] = n;
      r["bound_k_product"] = bound_k_product(n, e0, theta, s);
      r["bound_k_exponential"] = bound_k_exponential(n, e0, theta, s);
      r["bound_picard_s_product"] = bound_picard_s_product(n, e0, theta, s);
      r["rate_ratio"] = rate_ratio(theta, n);
      rows.push_back(std::move(r));
    }
    results["rows"] = std::move(rows);
    if (have_rate) results["verdict"] = std::string(to_string(rr.verdict));
    Json checks;
    checks["schedule"] = s.describe();
    write_file(path, make_envelope(std::move(cfg), results, checks).dump(2) + "\n");
  }

  std::cout << "bounds on " << o.map << ": theta " << format_double(theta) << ", e0 "
            << format_double(e0);
  if (have_rate) std::cout << ", verdict " << to_string(rr.verdict);
  std::cout << " -> " << path << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixiter: fixed-point iteration laboratory"};
  app.require_subcommand(1);

  CommonOptions o;
  std::string direction = "forward";
  std::string kind = "decay";
  double magnitude = 0.3;
  double eps = 1e-3;

  CLI::App* c_run = app.add_subcommand("run", "run one scheme and record its orbit");
  c_run->add_option("--scheme", o.schemes, "scheme id")->expected(1);
  add_map_option(c_run, o);
  c_run->add_option("--x0", o.x0, "start iterate (default: domain midpoint)");
  add_schedule_options(c_run, o);
  c_run->add_option("--gamma", o.gamma, "noor third parameter (default: beta)");
  c_run->add_option("--max-iter", o.max_iter, "iteration cap")->capture_default_str();
  c_run->add_option("--tol-step", o.tol_step, "stop when ||x_{n+1}-x_n|| <= tol")
      ->capture_default_str();
  c_run->add_option("--tol-res", o.tol_res, "stop when ||Tx_n-x_n|| <= tol")
      ->capture_default_str();
  add_output_options(c_run, o);

  CLI::App* c_cmp = app.add_subcommand("compare", "error curves for several schemes");
  c_cmp->add_option("--scheme", o.schemes, "scheme ids (repeat; at least two)");
  add_map_option(c_cmp, o);
  c_cmp->add_option("--x0", o.x0, "start iterate (default: domain midpoint)");
  add_schedule_options(c_cmp, o);
  c_cmp->add_option("--gamma", o.gamma, "noor third parameter (default: beta)");
  c_cmp->add_option("--max-iter", o.max_iter, "steps per scheme")->capture_default_str();
  add_output_options(c_cmp, o);
  c_cmp->add_option("--svg", o.svg, "write a log-error line chart to this path");

  CLI::App* c_tab = app.add_subcommand(
      "table1", "reproduce the built-in reference table and verify every cell");
  c_tab->add_option("--out", o.out, "output CSV (default table1.csv)");

  CLI::App* c_stab = app.add_subcommand("stability", "perturbed-orbit stability harness");
  add_map_option(c_stab, o);
  add_schedule_options(c_stab, o);
  c_stab->add_option("--max-iter", o.max_iter, "horizon")->capture_default_str();
  c_stab->add_option("--direction", direction, "forward or backward")
      ->check(CLI::IsMember({"forward", "backward"}))
      ->capture_default_str();
  c_stab
      ->add_option("--kind", kind,
                   "forward: decay|oscillate|at-p; backward: decay|constant|zero")
      ->capture_default_str();
  c_stab->add_option("--magnitude", magnitude, "perturbation magnitude")
      ->capture_default_str();
  add_output_options(c_stab, o);

  CLI::App* c_dd = app.add_subcommand("datadep", "approximate-operator drift bound check");
  add_map_option(c_dd, o);
  c_dd->add_option("--eps", eps, "uniform operator gap")->capture_default_str();
  add_schedule_options(c_dd, o);
  c_dd->add_option("--max-iter", o.max_iter, "orbit horizon")->capture_default_str();
  add_output_options(c_dd, o);

  CLI::App* c_chk = app.add_subcommand("check-map", "grid property checks for one map");
  add_map_option(c_chk, o);
  add_output_options(c_chk, o);

  CLI::App* c_bnd = app.add_subcommand("bounds", "theoretical bound series and rate verdict");
  add_map_option(c_bnd, o);
  c_bnd->add_option("--x0", o.x0, "start iterate for e0 (default: domain midpoint)");
  add_schedule_options(c_bnd, o);
  c_bnd->add_option("--max-iter", o.max_iter, "bound horizon")->capture_default_str();
  add_output_options(c_bnd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_tab->parsed()) return cmd_table1(o);
    if (c_run->parsed()) return cmd_run(o);
    if (c_cmp->parsed()) return cmd_compare(o);
    if (c_stab->parsed()) return cmd_stability(o, direction, kind, magnitude);
    if (c_dd->parsed()) {
      // datadep defaults match the drift theorem's schedule assumption.
      if (c_dd->count("--alpha") == 0) o.alpha = 0.75;
      if (c_dd->count("--beta") == 0) o.beta = 0.75;
      return cmd_datadep(o, eps);
    }
    if (c_chk->parsed()) return cmd_check_map(o);
    if (c_bnd->parsed()) return cmd_bounds(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
