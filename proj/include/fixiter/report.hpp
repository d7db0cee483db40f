#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "fixiter/schemes.hpp"

#include "json.hpp"

namespace fixiter {

using Json = nlohmann::ordered_json;

/// Shortest decimal representation that parses back to the same
/// binary64 value. All data files use this so that a re-parse equals
/// the in-memory value exactly.
std::string format_double(double v);

/// Inverse of format_double; throws std::invalid_argument on malformed
/// input or trailing junk.
double parse_double(const std::string& s);

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
};

CsvTable parse_csv(const std::string& text);

/// Side-by-side iterate table, header "n,<scheme1>,<scheme2>,...":
/// the main iterate of each trajectory per row. Trajectories must share
/// a common record count (shorter ones end the table). 1-D only.
CsvTable iterate_table(const std::vector<Trajectory>& trajectories);

/// Error-curve table, header "n,<scheme1>,...", one |x_n - p| column
/// per trajectory.
CsvTable error_table(const std::vector<Trajectory>& trajectories, const Point& p);

/// Single-trajectory table: n, x (one column per coordinate), residual,
/// and error when known.
CsvTable trajectory_table(const Trajectory& traj);

// ---------------------------------------------------------------------------
// JSON report envelope: {config, results, invariant_checks} with stable
// key order, no timestamps, so identical configs give identical bytes.
// ---------------------------------------------------------------------------

Json make_envelope(Json config, Json results, Json invariant_checks);

Json to_json(const Trajectory& traj);

// ---------------------------------------------------------------------------
// SVG: self-contained log-error line chart (no plotting dependency).
// ---------------------------------------------------------------------------

struct ChartSeries {
  std::string name;
  std::vector<double> values;  // y per integer x = 0,1,2,...
};

/// Fixed 800x600 viewbox; one polyline per series; legend uses the
/// series names verbatim. y values are plotted as log10(max(v, floor))
/// with floor = 1e-17, so exact zeros stay on the chart.
std::string svg_log_chart(const std::vector<ChartSeries>& series,
                          const std::string& y_label);

// ---------------------------------------------------------------------------
// Built-in reference table for the cube-root benchmark: columns in the
// order k, vatan_two_step, thakur_new, picard_s; rows x_0..x_11 for
// x0 = 1.99 under the constant alpha = beta = 1/4 schedule.
// ---------------------------------------------------------------------------

inline constexpr std::size_t kReferenceRows = 12;

struct ReferenceTable {
  std::array<SchemeId, 4> schemes;
  std::array<std::array<double, kReferenceRows>, 4> columns;
  double x0;
  double alpha;
  double beta;
  double fixed_point;
};

const ReferenceTable& cbrt_reference_table();

/// Writes text to path atomically enough for our purposes (truncate +
/// write); throws NumericError on I/O failure.
void write_file(const std::string& path, const std::string& text);

std::string read_file(const std::string& path);

} // namespace fixiter
