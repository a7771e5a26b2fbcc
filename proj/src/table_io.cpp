#include "qsync/table_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qsync/error.hpp"
#include "qsync/format.hpp"

namespace qsync {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_cell(const std::string& cell, const std::string& source, long line) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || cell.empty()) {
    throw ParseError(source, line, "not a number: '" + cell + "'");
  }
  return v;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

void write_table(const SweepTable& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
}

SweepTable read_table(std::istream& in, const std::string& source) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.empty()) throw ParseError(source, 1, "empty file");

  SweepTable table;
  long line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) throw ParseError(source, line_no, "truncated line (no terminating newline)");
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    if (line_no == 1) {
      table.columns = split(line);
      for (const auto& name : table.columns) {
        if (name.empty()) throw ParseError(source, line_no, "empty column name in header");
      }
      continue;
    }
    if (line.empty()) {
      if (pos == text.size()) break;
      throw ParseError(source, line_no, "blank line inside table");
    }
    const auto cells = split(line);
    if (cells.size() != table.columns.size()) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(table.columns.size()) + " fields, found " +
                           std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) row.push_back(parse_cell(cell, source, line_no));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::filesystem::path metadata_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p += ".meta.json";
  return p;
}

void write_table(const SweepTable& table, const std::filesystem::path& path, const std::optional<SweepSpec>& spec) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write_table(table, out);
    if (!out) throw Error("failed writing " + path.string());
  }
  if (spec) {
    nlohmann::json meta = {{"library", "qsync"},
                           {"version", QSYNC_VERSION},
                           {"spec", nlohmann::json::parse(sweep_spec_to_json(*spec))},
                           {"spec_hash", spec_hash(*spec)}};
    std::ofstream out(metadata_path(path), std::ios::binary);
    if (!out) throw Error("cannot open " + metadata_path(path).string() + " for writing");
    out << meta.dump(2) << '\n';
  }
}

SweepTable read_table(const std::filesystem::path& path) {
  std::istringstream in(slurp(path));
  return read_table(in, path.string());
}

SweepMetadata read_metadata(const std::filesystem::path& csv) {
  const auto path = metadata_path(csv);
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(slurp(path));
    return {sweep_spec_from_json(meta.at("spec").dump(), path.string()), meta.at("spec_hash").get<std::string>(),
            meta.at("version").get<std::string>()};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), 1, e.what());
  }
}

void write_correlation_csv(const CorrelationMatrix& matrix, std::ostream& out) {
  out << "column";
  for (const auto& name : matrix.names) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < matrix.names.size(); ++i) {
    out << matrix.names[i];
    for (std::size_t j = 0; j < matrix.names.size(); ++j) {
      const auto v = matrix.at(i, j);
      out << ',' << (v ? format_double(*v) : std::string("undefined"));
    }
    out << '\n';
  }
}

}  // namespace qsync
