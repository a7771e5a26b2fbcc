#include "qsync/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

#include <omp.h>

#include <json.hpp>

#include "qsync/error.hpp"
#include "qsync/grid.hpp"

namespace qsync {

using nlohmann::json;

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::s_pcoh: return "s_pcoh";
    case Measure::s_peak: return "s_peak";
    case Measure::mrl1: return "mrl1";
    case Measure::mrl2: return "mrl2";
    case Measure::qfi: return "qfi";
    case Measure::cfi: return "cfi";
  }
  return "?";
}

Measure measure_from_name(std::string_view name) {
  for (Measure m : kAllMeasures) {
    if (measure_name(m) == name) return m;
  }
  throw DomainError("unknown measure '" + std::string(name) + "'");
}

double measure_value(const MeasureSet& set, Measure m) {
  switch (m) {
    case Measure::s_pcoh: return set.s_pcoh;
    case Measure::s_peak: return set.s_peak;
    case Measure::mrl1: return set.mrl1;
    case Measure::mrl2: return set.mrl2;
    case Measure::qfi: return set.qfi;
    case Measure::cfi: return set.cfi;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> Axis::values() const {
  return spacing == Spacing::log ? logspace(min, max, points) : linspace(min, max, points);
}

void SweepSpec::validate() const {
  base.validate();
  if (axes.empty() || axes.size() > 2) throw DomainError("a sweep needs one or two axes");
  if (measures.empty()) throw DomainError("a sweep needs at least one measure");
  for (const auto& axis : axes) {
    if (!is_param_name(axis.parameter)) throw DomainError("axis parameter '" + axis.parameter + "' is not a field");
    if (axis.points < 1) throw DomainError("axis '" + axis.parameter + "' needs at least one point");
    if (axis.points == 1 && axis.min != axis.max) {
      throw DomainError("axis '" + axis.parameter + "' has one point but min != max");
    }
    if (axis.spacing == Spacing::log && !(axis.min > 0.0 && axis.max > 0.0)) {
      throw DomainError("log-spaced axis '" + axis.parameter + "' needs positive bounds");
    }
    for (double v : {axis.min, axis.max}) {
      OscillatorParams probe = base;
      set_param(probe, axis.parameter, v);
      try {
        probe.validate();
      } catch (const DomainError& e) {
        throw DomainError("axis '" + axis.parameter + "' leaves the parameter domain: " + e.what());
      }
    }
  }
  if (axes.size() == 2 && axes[0].parameter == axes[1].parameter) throw DomainError("axes must differ");
}

std::size_t SweepSpec::point_count() const {
  std::size_t n = 1;
  for (const auto& axis : axes) n *= static_cast<std::size_t>(axis.points);
  return n;
}

OscillatorParams SweepSpec::point(std::size_t index) const {
  OscillatorParams p = base;
  for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
    const auto count = static_cast<std::size_t>(it->points);
    set_param(p, it->parameter, it->values()[index % count]);
    index /= count;
  }
  return p;
}

std::vector<std::string> SweepSpec::column_names() const {
  std::vector<std::string> cols;
  for (const auto& axis : axes) cols.push_back(axis.parameter);
  for (Measure m : measures) cols.emplace_back(measure_name(m));
  cols.emplace_back("converged");
  cols.emplace_back("residual");
  return cols;
}

namespace {

json params_to_json(const OscillatorParams& p) {
  return {{"delta", p.delta},   {"drive", p.drive},   {"eta", p.eta},       {"phi", p.phi},
          {"gamma1", p.gamma1}, {"gamma2", p.gamma2}, {"gamma3", p.gamma3}, {"white_noise", p.white_noise},
          {"fock_dim", p.fock_dim}};
}

template <typename T>
void read_key(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

OscillatorParams params_from_json(const json& j) {
  OscillatorParams p;
  read_key(j, "delta", p.delta);
  read_key(j, "drive", p.drive);
  read_key(j, "eta", p.eta);
  read_key(j, "phi", p.phi);
  read_key(j, "gamma1", p.gamma1);
  read_key(j, "gamma2", p.gamma2);
  read_key(j, "gamma3", p.gamma3);
  read_key(j, "white_noise", p.white_noise);
  read_key(j, "fock_dim", p.fock_dim);
  for (const auto& item : j.items()) {
    if (item.key() != "fock_dim" && !is_param_name(item.key())) {
      throw DomainError("unknown parameter key '" + item.key() + "'");
    }
  }
  return p;
}

json spec_to_json(const SweepSpec& spec) {
  json axes = json::array();
  for (const auto& a : spec.axes) {
    axes.push_back({{"parameter", a.parameter},
                    {"min", a.min},
                    {"max", a.max},
                    {"points", a.points},
                    {"spacing", a.spacing == Spacing::log ? "log" : "linear"}});
  }
  json measures = json::array();
  for (Measure m : spec.measures) measures.push_back(std::string(measure_name(m)));
  json solver = {{"residual_tol", spec.solver.residual_tol},
                 {"truncation_tol", spec.solver.truncation_tol},
                 {"psd_tol", spec.solver.psd_tol},
                 {"max_dim_retries", spec.solver.max_dim_retries}};
  json mc = {{"grid_size", spec.measure_config.grid_size},
             {"cfi_floor", spec.measure_config.cfi_floor},
             {"qfi_cutoff", spec.measure_config.qfi_cutoff},
             {"vacuum_threshold", spec.measure_config.vacuum_threshold}};
  return {{"base", params_to_json(spec.base)},
          {"axes", std::move(axes)},
          {"measures", std::move(measures)},
          {"solver", std::move(solver)},
          {"measure_config", std::move(mc)}};
}

bool nonzero_spread(std::span<const double> v, double sigma) {
  double scale = 1.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  return sigma > 1e-12 * scale;
}

}  // namespace

std::string sweep_spec_to_json(const SweepSpec& spec) { return spec_to_json(spec).dump(2); }

SweepSpec sweep_spec_from_json(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 1, e.what());
  }
  SweepSpec spec;
  try {
    if (!doc.is_object()) throw DomainError("sweep config must be a JSON object");
    for (const auto& item : doc.items()) {
      static constexpr std::array<std::string_view, 5> kKeys{"base", "axes", "measures", "solver", "measure_config"};
      if (std::find(kKeys.begin(), kKeys.end(), item.key()) == kKeys.end()) {
        throw DomainError("unknown config key '" + item.key() + "'");
      }
    }
    if (doc.contains("base")) spec.base = params_from_json(doc.at("base"));
    if (doc.contains("axes")) {
      spec.axes.clear();
      for (const auto& a : doc.at("axes")) {
        Axis axis;
        axis.parameter = a.at("parameter").get<std::string>();
        axis.min = a.at("min").get<double>();
        axis.max = a.at("max").get<double>();
        axis.points = a.at("points").get<int>();
        const std::string spacing = a.value("spacing", std::string("linear"));
        if (spacing != "linear" && spacing != "log") throw DomainError("spacing must be 'linear' or 'log'");
        axis.spacing = spacing == "log" ? Spacing::log : Spacing::linear;
        spec.axes.push_back(std::move(axis));
      }
    }
    if (doc.contains("measures")) {
      spec.measures.clear();
      for (const auto& m : doc.at("measures")) spec.measures.push_back(measure_from_name(m.get<std::string>()));
    }
    if (doc.contains("solver")) {
      const auto& s = doc.at("solver");
      read_key(s, "residual_tol", spec.solver.residual_tol);
      read_key(s, "truncation_tol", spec.solver.truncation_tol);
      read_key(s, "psd_tol", spec.solver.psd_tol);
      read_key(s, "max_dim_retries", spec.solver.max_dim_retries);
    }
    if (doc.contains("measure_config")) {
      const auto& m = doc.at("measure_config");
      read_key(m, "grid_size", spec.measure_config.grid_size);
      read_key(m, "cfi_floor", spec.measure_config.cfi_floor);
      read_key(m, "qfi_cutoff", spec.measure_config.qfi_cutoff);
      read_key(m, "vacuum_threshold", spec.measure_config.vacuum_threshold);
    }
  } catch (const json::exception& e) {
    throw ParseError(source, 1, e.what());
  } catch (const DomainError& e) {
    throw ParseError(source, 1, e.what());
  }
  return spec;
}

std::string spec_hash(const SweepSpec& spec) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : spec_to_json(spec).dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::size_t SweepTable::column_index(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw DomainError("table has no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> SweepTable::column(std::string_view name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[c]);
  return out;
}

std::vector<double> evaluate_sweep_point(const SweepSpec& spec, std::size_t index) {
  const OscillatorParams params = spec.point(index);
  std::vector<double> row;
  row.reserve(spec.axes.size() + spec.measures.size() + 2);
  for (const auto& axis : spec.axes) row.push_back(get_param(params, axis.parameter));

  try {
    const SteadyStateReport report = solve_steady_state(params, spec.solver);
    const DensityMatrix rho =
        params.white_noise > 0.0 ? apply_white_noise(report.rho, params.white_noise) : report.rho;
    const MeasureSet ms = measure_all(rho, spec.measure_config);
    for (Measure m : spec.measures) row.push_back(measure_value(ms, m));
    row.push_back(report.converged ? 1.0 : 0.0);
    row.push_back(report.residual);
  } catch (const Error&) {
    row.resize(spec.axes.size());
    for (std::size_t k = 0; k < spec.measures.size(); ++k) row.push_back(std::numeric_limits<double>::quiet_NaN());
    row.push_back(0.0);
    row.push_back(std::numeric_limits<double>::quiet_NaN());
  }
  return row;
}

namespace {

void require_some_converged(const SweepTable& table) {
  const std::size_t c = table.column_index("converged");
  const bool any = std::any_of(table.rows.begin(), table.rows.end(), [c](const auto& r) { return r[c] == 1.0; });
  if (!any) throw SweepError("no grid point of the sweep converged");
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  const auto count = static_cast<long>(spec.point_count());
  SweepTable table{spec.column_names(), std::vector<std::vector<double>>(static_cast<std::size_t>(count))};
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    table.rows[static_cast<std::size_t>(i)] = evaluate_sweep_point(spec, static_cast<std::size_t>(i));
  }
  require_some_converged(table);
  return table;
}

SweepTable run_sweep_serial(const SweepSpec& spec) {
  spec.validate();
  SweepTable table{spec.column_names(), {}};
  table.rows.reserve(spec.point_count());
  for (std::size_t i = 0; i < spec.point_count(); ++i) table.rows.push_back(evaluate_sweep_point(spec, i));
  require_some_converged(table);
  return table;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("pearson: sequences differ in length");
  if (x.size() < 2) throw DomainError("pearson: need at least two samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  const double sigma_x = std::sqrt(sxx / n);
  const double sigma_y = std::sqrt(syy / n);
  if (!nonzero_spread(x, sigma_x) || !nonzero_spread(y, sigma_y)) return std::nullopt;
  return std::clamp(sxy / n / (sigma_x * sigma_y), -1.0, 1.0);
}

CorrelationMatrix correlation_matrix(const SweepTable& table, const std::vector<std::string>& columns) {
  const std::size_t conv = table.column_index("converged");
  std::vector<std::vector<double>> data(columns.size());
  std::vector<std::size_t> idx;
  for (const auto& name : columns) idx.push_back(table.column_index(name));
  for (const auto& row : table.rows) {
    if (row[conv] != 1.0) continue;
    for (std::size_t k = 0; k < idx.size(); ++k) data[k].push_back(row[idx[k]]);
  }
  if (!data.empty() && data[0].size() < 2) throw DomainError("correlation needs at least two converged rows");

  CorrelationMatrix out{columns, std::vector<std::optional<double>>(columns.size() * columns.size())};
  for (std::size_t i = 0; i < columns.size(); ++i) {
    for (std::size_t j = i; j < columns.size(); ++j) {
      std::optional<double> r = pearson(data[i], data[j]);
      if (i == j && r) r = 1.0;
      out.entries[i * columns.size() + j] = r;
      out.entries[j * columns.size() + i] = r;
    }
  }
  return out;
}

}  // namespace qsync
