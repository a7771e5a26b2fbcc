#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "qsync/experiments.hpp"

namespace qsync {

// Sweep tables are CSV: a header of column names, then one row per grid
// point with every value at 17 significant digits. Every line, including
// the last, ends in '\n'; a missing final newline marks a truncated file.

void write_table(const SweepTable& table, std::ostream& out);
SweepTable read_table(std::istream& in, const std::string& source = "<stream>");

/// Sidecar written next to a table: <csv>.meta.json.
std::filesystem::path metadata_path(const std::filesystem::path& csv);

/// Writes the CSV and, when `spec` is given, the metadata sidecar.
void write_table(const SweepTable& table, const std::filesystem::path& path,
                 const std::optional<SweepSpec>& spec = std::nullopt);
SweepTable read_table(const std::filesystem::path& path);

struct SweepMetadata {
  SweepSpec spec;
  std::string spec_hash;
  std::string library_version;

  /// The stored hash matches the stored spec.
  bool consistent() const { return qsync::spec_hash(spec) == spec_hash; }
};

SweepMetadata read_metadata(const std::filesystem::path& csv);

/// "column,<names...>" header, then one row per name; undefined entries read "undefined".
void write_correlation_csv(const CorrelationMatrix& matrix, std::ostream& out);

}  // namespace qsync
