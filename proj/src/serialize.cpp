#include "adoptsim/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "adoptsim/errors.hpp"

namespace adoptsim {
namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kStatNames[] = {"mean", "std", "min", "max", "median"};

double stat_value(const Stats& s, int which) {
  switch (which) {
    case 0: return s.mean;
    case 1: return s.std;
    case 2: return s.min;
    case 3: return s.max;
    default: return s.median;
  }
}

ojson json_number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

void emit_json(std::ostream& out, const ojson& doc) { out << doc.dump(2) << '\n'; }

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = line.find(sep);
    out.push_back(line.substr(0, pos));
    if (pos == std::string_view::npos) return out;
    line.remove_prefix(pos + 1);
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string trajectory_csv_header() {
  std::string h = "t";
  for (auto name : kVariableNames) (h += ',') += name;
  return h;
}

std::string summary_csv_header() {
  std::string h = "t";
  for (auto name : kVariableNames)
    for (const char* stat : kStatNames) ((h += ',') += name) += std::string("_") + stat;
  return h;
}

void write_trajectory(std::ostream& out, const Trajectory& traj, OutputFormat format) {
  if (format == OutputFormat::csv) {
    out << trajectory_csv_header() << '\n';
    for (const auto& row : traj.rows) {
      out << format_double(row.t);
      for (double v : row.values) out << ',' << format_double(v);
      out << '\n';
    }
    return;
  }
  ojson doc;
  doc["params_fingerprint"] = fingerprint_hex(traj.params_fingerprint);
  doc["run_index"] = traj.run_index;
  ojson rows = ojson::array();
  for (const auto& row : traj.rows) {
    ojson r;
    r["t"] = row.t;
    for (std::size_t v = 0; v < kVariableCount; ++v) r[std::string(kVariableNames[v])] = row.values[v];
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  emit_json(out, doc);
}

void write_summary(std::ostream& out, const EnsembleSummary& summary, OutputFormat format) {
  if (format == OutputFormat::csv) {
    out << summary_csv_header() << '\n';
    for (std::size_t k = 0; k < summary.t.size(); ++k) {
      out << format_double(summary.t[k]);
      for (const auto& s : summary.stats[k])
        for (int i = 0; i < 5; ++i) out << ',' << format_double(stat_value(s, i));
      out << '\n';
    }
    return;
  }
  ojson doc;
  doc["n_runs"] = summary.n_runs;
  ojson rows = ojson::array();
  for (std::size_t k = 0; k < summary.t.size(); ++k) {
    ojson r;
    r["t"] = summary.t[k];
    for (std::size_t v = 0; v < kVariableCount; ++v)
      for (int i = 0; i < 5; ++i)
        r[std::string(kVariableNames[v]) + "_" + kStatNames[i]] = stat_value(summary.stats[k][v], i);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  emit_json(out, doc);
}

void write_shape_report(std::ostream& out, const ShapeReport& report, OutputFormat format) {
  if (format == OutputFormat::csv) {
    out << "check,passed,diagnostic\n";
    for (const ShapeCheck* c : report.checks())
      out << c->name << ',' << (c->passed ? "true" : "false") << ',' << format_double(c->diagnostic) << '\n';
    return;
  }
  ojson doc;
  ojson checks = ojson::array();
  for (const ShapeCheck* c : report.checks())
    checks.push_back({{"name", c->name}, {"passed", c->passed}, {"diagnostic", json_number(c->diagnostic)}});
  doc["checks"] = std::move(checks);
  doc["education_saturation_time"] = json_number(report.education_saturation_time);
  doc["skill_saturation_time"] = json_number(report.skill_saturation_time);
  doc["skill_asymptote"] = report.skill_asymptote;
  doc["employment_peak"] = report.employment_peak;
  doc["employment_final"] = report.employment_final;
  doc["all_passed"] = report.all_passed();
  emit_json(out, doc);
}

void write_fit_result(std::ostream& out, const FitSpec& spec, const FitResult& result,
                      OutputFormat format) {
  if (format == OutputFormat::csv) {
    out << "parameter,value\n";
    for (std::size_t i = 0; i < spec.free.size(); ++i)
      out << name_of(spec.free[i].param) << ',' << format_double(result.values[i]) << '\n';
    out << "loss," << format_double(result.loss) << '\n';
    out << "evaluations," << result.evaluations << '\n';
    return;
  }
  ojson doc;
  ojson params = ojson::object();
  for (std::size_t i = 0; i < spec.free.size(); ++i)
    params[std::string(name_of(spec.free[i].param))] = result.values[i];
  doc["parameters"] = std::move(params);
  doc["loss"] = result.loss;
  doc["evaluations"] = result.evaluations;
  emit_json(out, doc);
}

void write_convergence(std::ostream& out, const std::vector<ConvergenceReport>& reports,
                       OutputFormat format) {
  if (format == OutputFormat::csv) {
    out << "check,dt,max_error,bound,ratio\n";
    for (const auto& r : reports) {
      for (std::size_t i = 0; i < r.levels.size(); ++i) {
        const auto& l = r.levels[i];
        out << r.name << ',' << format_double(l.dt) << ',' << format_double(l.max_error) << ','
            << format_double(l.bound) << ',';
        if (i > 0) out << format_double(r.ratios[i - 1]);
        out << '\n';
      }
    }
    return;
  }
  ojson doc = ojson::array();
  for (const auto& r : reports) {
    ojson levels = ojson::array();
    for (const auto& l : r.levels)
      levels.push_back({{"dt", l.dt}, {"max_error", l.max_error}, {"bound", l.bound}});
    ojson ratios = ojson::array();
    for (double x : r.ratios) ratios.push_back(json_number(x));
    doc.push_back({{"check", r.name},
                   {"rate", r.rate},
                   {"t_end", r.t_end},
                   {"levels", std::move(levels)},
                   {"ratios", std::move(ratios)},
                   {"passed", r.passed}});
  }
  emit_json(out, doc);
}

TrajectoryTable read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ShapeError("trajectory CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split(line, ',');
  if (header.empty() || header[0] != "t") throw ShapeError("trajectory CSV header must start with 't'");

  TrajectoryTable table;
  for (std::size_t c = 1; c < header.size(); ++c) {
    bool found = false;
    for (std::size_t v = 0; v < kVariableCount; ++v) {
      if (kVariableNames[v] == header[c]) {
        const auto var = static_cast<Variable>(v);
        for (Variable seen : table.columns)
          if (seen == var) throw ShapeError("duplicate column " + std::string(header[c]));
        table.columns.push_back(var);
        found = true;
      }
    }
    if (!found) throw ShapeError("unknown column '" + std::string(header[c]) + "'");
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size())
      throw ShapeError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                       " fields");
    std::vector<double> parsed(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto [ptr, ec] = std::from_chars(cells[c].data(), cells[c].data() + cells[c].size(), parsed[c]);
      if (ec != std::errc{} || ptr != cells[c].data() + cells[c].size())
        throw ShapeError("line " + std::to_string(line_no) + ": bad number '" + std::string(cells[c]) + "'");
    }
    Row row;
    row.t = parsed[0];
    row.values.fill(std::numeric_limits<double>::quiet_NaN());
    for (std::size_t c = 1; c < parsed.size(); ++c) row[table.columns[c - 1]] = parsed[c];
    table.trajectory.rows.push_back(row);
  }
  if (table.trajectory.rows.empty()) throw ShapeError("trajectory CSV has no data rows");
  return table;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

TrajectoryTable read_trajectory_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_trajectory_csv(in);
}

}  // namespace adoptsim
