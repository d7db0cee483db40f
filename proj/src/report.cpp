#include "fixiter/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fixiter/errors.hpp"

namespace fixiter {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw std::invalid_argument("parse_double: malformed number '" + s + "'");
  return v;
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i)
    os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream is(text);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        cells.push_back(line.substr(start));
        break;
      }
      cells.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

namespace {

std::size_t common_rows(const std::vector<Trajectory>& trajectories) {
  std::size_t n = trajectories.front().records.size();
  for (const auto& tr : trajectories) n = std::min(n, tr.records.size());
  return n;
}

} // namespace

CsvTable iterate_table(const std::vector<Trajectory>& trajectories) {
  if (trajectories.empty())
    throw std::invalid_argument("iterate_table: no trajectories");
  CsvTable t;
  t.header.push_back("n");
  for (const auto& tr : trajectories) t.header.emplace_back(to_string(tr.scheme));
  const std::size_t rows = common_rows(trajectories);
  for (std::size_t n = 0; n < rows; ++n) {
    std::vector<std::string> row;
    row.push_back(std::to_string(n));
    for (const auto& tr : trajectories)
      row.push_back(format_double(tr.records[n].x.as_scalar()));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable error_table(const std::vector<Trajectory>& trajectories, const Point& p) {
  if (trajectories.empty())
    throw std::invalid_argument("error_table: no trajectories");
  CsvTable t;
  t.header.push_back("n");
  for (const auto& tr : trajectories) t.header.emplace_back(to_string(tr.scheme));
  const std::size_t rows = common_rows(trajectories);
  for (std::size_t n = 0; n < rows; ++n) {
    std::vector<std::string> row;
    row.push_back(std::to_string(n));
    for (const auto& tr : trajectories)
      row.push_back(format_double(distance(tr.records[n].x, p)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable trajectory_table(const Trajectory& traj) {
  CsvTable t;
  const std::size_t dim = traj.x0.dimension();
  t.header.push_back("n");
  if (dim == 1) {
    t.header.push_back("x");
  } else {
    for (std::size_t i = 0; i < dim; ++i) t.header.push_back("x" + std::to_string(i));
  }
  t.header.push_back("residual");
  const bool with_error = !traj.records.empty() && traj.records.front().error.has_value();
  if (with_error) t.header.push_back("error");
  for (const auto& rec : traj.records) {
    std::vector<std::string> row;
    row.push_back(std::to_string(rec.n));
    for (std::size_t i = 0; i < dim; ++i) row.push_back(format_double(rec.x[i]));
    row.push_back(format_double(rec.residual));
    if (with_error) row.push_back(format_double(rec.error.value_or(0.0)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Json make_envelope(Json config, Json results, Json invariant_checks) {
  Json j;
  j["config"] = std::move(config);
  j["results"] = std::move(results);
  j["invariant_checks"] = std::move(invariant_checks);
  return j;
}

Json to_json(const Trajectory& traj) {
  Json j;
  j["scheme"] = std::string(to_string(traj.scheme));
  j["map"] = traj.mapping_id;
  j["schedule"] = traj.schedule;
  j["x0"] = traj.x0.coords();
  j["stop_reason"] = std::string(to_string(traj.stop_reason));
  Json records = Json::array();
  for (const auto& rec : traj.records) {
    Json r;
    r["n"] = rec.n;
    r["x"] = rec.x.coords();
    r["residual"] = rec.residual;
    if (rec.error) r["error"] = *rec.error;
    if (rec.trace) {
      Json inter = Json::object();
      for (const auto& [name, pt] : rec.trace->intermediates) inter[name] = pt.coords();
      r["intermediates"] = std::move(inter);
    }
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  return j;
}

namespace {

constexpr double kChartFloor = 1e-17;
constexpr int kWidth = 800;
constexpr int kHeight = 600;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 160;
constexpr int kMarginTop = 30;
constexpr int kMarginBottom = 50;

const char* series_color(std::size_t i) {
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
}

std::string fmt_coord(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << v;
  return os.str();
}

} // namespace

std::string svg_log_chart(const std::vector<ChartSeries>& series,
                          const std::string& y_label) {
  if (series.empty())
    throw std::invalid_argument("svg_log_chart: no series");

  std::size_t max_len = 0;
  double ymin = 0.0, ymax = -400.0;
  for (const auto& s : series) {
    max_len = std::max(max_len, s.values.size());
    for (double v : s.values) {
      const double ly = std::log10(std::max(v, kChartFloor));
      ymin = std::min(ymin, ly);
      ymax = std::max(ymax, ly);
    }
  }
  if (max_len < 2)
    throw std::invalid_argument("svg_log_chart: series need at least two points");
  if (ymax <= ymin) ymax = ymin + 1.0;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto sx = [&](double n) {
    return kMarginLeft + plot_w * n / static_cast<double>(max_len - 1);
  };
  const auto sy = [&](double ly) {
    return kMarginTop + plot_h * (ymax - ly) / (ymax - ymin);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << " "
     << kHeight << "\">\n";
  os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" fill=\"white\"/>\n";
  // axes
  os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
     << kMarginLeft << "\" y2=\"" << kMarginTop + plot_h
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h
     << "\" x2=\"" << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
     << "\" stroke=\"black\"/>\n";
  // y ticks at integer decades (at most ~8 labels)
  const int lo_dec = static_cast<int>(std::floor(ymin));
  const int hi_dec = static_cast<int>(std::ceil(ymax));
  const int stride = std::max(1, (hi_dec - lo_dec) / 8);
  for (int d = lo_dec; d <= hi_dec; d += stride) {
    if (d < ymin || d > ymax) continue;
    const double y = sy(d);
    os << "<line x1=\"" << kMarginLeft - 4 << "\" y1=\"" << fmt_coord(y) << "\" x2=\""
       << kMarginLeft << "\" y2=\"" << fmt_coord(y) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << fmt_coord(y + 4)
       << "\" font-size=\"12\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  // x ticks
  const std::size_t xstride = std::max<std::size_t>(1, (max_len - 1) / 10);
  for (std::size_t n = 0; n < max_len; n += xstride) {
    const double x = sx(static_cast<double>(n));
    os << "<line x1=\"" << fmt_coord(x) << "\" y1=\"" << kMarginTop + plot_h
       << "\" x2=\"" << fmt_coord(x) << "\" y2=\"" << kMarginTop + plot_h + 4
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt_coord(x) << "\" y=\"" << kMarginTop + plot_h + 18
       << "\" font-size=\"12\" text-anchor=\"middle\">" << n << "</text>\n";
  }
  os << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
     << "\" font-size=\"13\" text-anchor=\"middle\">n</text>\n";
  os << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2
     << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << kMarginTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    os << "<polyline fill=\"none\" stroke=\"" << series_color(si)
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t n = 0; n < s.values.size(); ++n) {
      const double ly = std::log10(std::max(s.values[n], kChartFloor));
      os << fmt_coord(sx(static_cast<double>(n))) << "," << fmt_coord(sy(ly)) << " ";
    }
    os << "\"/>\n";
    // legend row
    const double ly0 = kMarginTop + 10 + 18.0 * static_cast<double>(si);
    os << "<line x1=\"" << kWidth - kMarginRight + 10 << "\" y1=\"" << fmt_coord(ly0)
       << "\" x2=\"" << kWidth - kMarginRight + 34 << "\" y2=\"" << fmt_coord(ly0)
       << "\" stroke=\"" << series_color(si) << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << kWidth - kMarginRight + 40 << "\" y=\"" << fmt_coord(ly0 + 4)
       << "\" font-size=\"12\">" << s.name << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

const ReferenceTable& cbrt_reference_table() {
  static const ReferenceTable table = {
      {SchemeId::k, SchemeId::vatan_two_step, SchemeId::thakur_new, SchemeId::picard_s},
      {{
          {1.99, 1.522643193061496, 1.521383278248461, 1.521379716901169,
           1.521379706833111, 1.521379706804648, 1.521379706804568, 1.521379706804568,
           1.521379706804568, 1.521379706804568, 1.521379706804568, 1.521379706804568},
          {1.99, 1.527152378405542, 1.521453635507796, 1.521380654057891,
           1.521379718941864, 1.521379706960085, 1.521379706806560, 1.521379706804593,
           1.521379706804568, 1.521379706804568, 1.521379706804568, 1.521379706804568},
          {1.99, 1.530163443560674, 1.521551978236029, 1.521383088492668,
           1.521379773188262, 1.521379708107703, 1.521379706830149, 1.521379706805070,
           1.521379706804577, 1.521379706804568, 1.521379706804568, 1.521379706804568},
          {1.99, 1.530160376515624, 1.521551916843118, 1.521383087287047,
           1.521379773164595, 1.521379708107238, 1.521379706830139, 1.521379706805069,
           1.521379706804577, 1.521379706804568, 1.521379706804568, 1.521379706804568},
      }},
      1.99,
      0.25,
      0.25,
      1.521379706804568,
  };
  return table;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw NumericError("write_file: cannot open '" + path + "'");
  os << text;
  if (!os) throw NumericError("write_file: write failed for '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw NumericError("read_file: cannot open '" + path + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

} // namespace fixiter
