#include "qsync/density_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qsync/error.hpp"

namespace qsync {

using nlohmann::json;

std::string density_to_json(const DensityMatrix& rho) {
  const int dim = rho.dim();
  json entries = json::array();
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) entries.push_back({rho(r, c).real(), rho(r, c).imag()});
  }
  json doc = {{"dim", dim}, {"entries", std::move(entries)}};
  return doc.dump();
}

DensityMatrix density_from_json(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 1, e.what());
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) throw ParseError(source, 1, "missing integer 'dim'");
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw ParseError(source, 1, "missing array 'entries'");
  const int dim = doc["dim"].get<int>();
  const auto& entries = doc["entries"];
  if (dim < 2 || entries.size() != static_cast<std::size_t>(dim) * dim) {
    throw ParseError(source, 1, "entries must hold dim*dim [re, im] pairs");
  }
  ComplexMatrix m(dim, dim);
  std::size_t k = 0;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c, ++k) {
      const auto& e = entries[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ParseError(source, 1, "entry " + std::to_string(k) + " is not a [re, im] pair");
      }
      m(r, c) = cplx{e[0].get<double>(), e[1].get<double>()};
    }
  }
  return DensityMatrix(std::move(m), DensityMatrix::Check::structural);
}

void write_density_matrix(const DensityMatrix& rho, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << density_to_json(rho) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

DensityMatrix read_density_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return density_from_json(buf.str(), path.string());
}

}  // namespace qsync
