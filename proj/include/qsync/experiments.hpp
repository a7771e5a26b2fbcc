#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsync/hilbert.hpp"
#include "qsync/measures.hpp"
#include "qsync/steady_state.hpp"

namespace qsync {

enum class Measure { s_pcoh, s_peak, mrl1, mrl2, qfi, cfi };

inline constexpr std::array<Measure, 6> kAllMeasures{Measure::s_pcoh, Measure::s_peak, Measure::mrl1,
                                                     Measure::mrl2,  Measure::qfi,    Measure::cfi};

std::string_view measure_name(Measure m);
/// Throws DomainError for unknown names.
Measure measure_from_name(std::string_view name);
double measure_value(const MeasureSet& set, Measure m);

enum class Spacing { linear, log };

/// One swept parameter: `points` values from min to max.
struct Axis {
  std::string parameter;
  double min = 0.0;
  double max = 0.0;
  int points = 2;
  Spacing spacing = Spacing::linear;

  std::vector<double> values() const;
};

/// Declarative parameter grid over one or two OscillatorParams fields.
struct SweepSpec {
  OscillatorParams base;
  std::vector<Axis> axes;
  std::vector<Measure> measures{kAllMeasures.begin(), kAllMeasures.end()};
  SolverOptions solver;
  MeasureConfig measure_config;

  /// Throws DomainError; every grid point's parameters must validate.
  void validate() const;
  std::size_t point_count() const;
  /// Parameters at flat index `index`, row-major over axes (last axis fastest).
  OscillatorParams point(std::size_t index) const;
  /// Axis names, measure names, "converged", "residual".
  std::vector<std::string> column_names() const;
};

std::string sweep_spec_to_json(const SweepSpec& spec);
/// Missing keys keep their defaults. Throws ParseError on malformed input.
SweepSpec sweep_spec_from_json(std::string_view text, const std::string& source = "<string>");
/// FNV-1a 64 of the canonical JSON form, as 16 hex digits.
std::string spec_hash(const SweepSpec& spec);

/// Long-format table: one row per grid point. The converged column holds 1 or 0.
struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Throws DomainError when the column is missing.
  std::size_t column_index(std::string_view name) const;
  std::vector<double> column(std::string_view name) const;
  bool operator==(const SweepTable&) const = default;
};

/// Row for one grid point: solve, apply white noise when p > 0, measure.
/// Solver failures are recorded as NaN measures with converged = 0.
std::vector<double> evaluate_sweep_point(const SweepSpec& spec, std::size_t index);

/// Grid points distributed over an OpenMP pool of `workers` threads
/// (<= 0: all available). Throws SweepError when no point converges.
SweepTable run_sweep(const SweepSpec& spec, int workers = 0);

/// Single-threaded reference for run_sweep; identical output.
SweepTable run_sweep_serial(const SweepSpec& spec);

/// Population Pearson correlation cov(X, Y) / (sigma_X sigma_Y).
/// nullopt when either input has zero variance (undefined, distinct from 0).
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct CorrelationMatrix {
  std::vector<std::string> names;
  std::vector<std::optional<double>> entries;  // row-major, names.size()^2

  std::optional<double> at(std::size_t row, std::size_t col) const { return entries[row * names.size() + col]; }
};

/// Pairwise Pearson correlations of the named columns over converged rows.
CorrelationMatrix correlation_matrix(const SweepTable& table, const std::vector<std::string>& columns);

}  // namespace qsync
