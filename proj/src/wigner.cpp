#include "qsync/wigner.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "qsync/error.hpp"
#include "qsync/format.hpp"

namespace qsync {

namespace {

// g[j] = sqrt(j!/(j+k)!) x^{k/2} e^{-x/2} L_j^{(k)}(x) for j = 0..count-1, i.e. the
// modulus-carrying part of <j+k|D(beta)|j> with x = |beta|^2. Forward Laguerre
// recurrence on the normalized values keeps everything O(1).
void displacement_column(double x, int k, int count, std::vector<double>& g) {
  g.assign(static_cast<std::size_t>(count), 0.0);
  if (count == 0) return;
  if (x == 0.0) {
    g[0] = k == 0 ? 1.0 : 0.0;
    for (int j = 1; j < count; ++j) g[static_cast<std::size_t>(j)] = k == 0 ? 1.0 : 0.0;
    return;
  }
  g[0] = std::exp(0.5 * k * std::log(x) - 0.5 * x - 0.5 * std::lgamma(k + 1.0));
  if (count == 1) return;
  const auto ratio = [k](int j) { return std::sqrt((j + 1.0) / (j + k + 1.0)); };
  g[1] = ratio(0) * (1.0 + k - x) * g[0];
  for (int j = 1; j + 1 < count; ++j) {
    const double rj = ratio(j);
    g[static_cast<std::size_t>(j + 1)] = ((2.0 * j + 1.0 + k - x) * rj * g[static_cast<std::size_t>(j)] -
                                          (j + k) * rj * ratio(j - 1) * g[static_cast<std::size_t>(j - 1)]) /
                                         (j + 1.0);
  }
}

void check_grid(std::span<const double> xs, std::span<const double> ps) {
  if (xs.empty() || ps.empty()) throw DimensionError("Wigner grid axes must be nonempty");
}

}  // namespace

double wigner_point(const DensityMatrix& rho, cplx alpha) {
  const int dim = rho.dim();
  const cplx beta = 2.0 * alpha;
  const double x = std::norm(beta);
  const double theta = std::arg(beta);

  std::vector<double> g;
  double total = 0.0;
  for (int k = 0; k < dim; ++k) {
    displacement_column(x, k, dim - k, g);
    const cplx phase = std::polar(1.0, -k * theta);  // (beta^*)^k / |beta|^k
    double column = 0.0;
    for (int j = 0; j + k < dim; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      const double coh = k == 0 ? rho(j, j).real() : 2.0 * (rho(j + k, j) * phase).real();
      column += sign * coh * g[static_cast<std::size_t>(j)];
    }
    total += column;
  }
  return 2.0 / std::numbers::pi * total;
}

WignerGrid wigner(const DensityMatrix& rho, std::span<const double> xs, std::span<const double> ps) {
  check_grid(xs, ps);
  WignerGrid out{{xs.begin(), xs.end()}, {ps.begin(), ps.end()}, Eigen::MatrixXd(xs.size(), ps.size())};
  const auto nx = static_cast<long>(xs.size());
  const auto np = static_cast<long>(ps.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < nx; ++i) {
    for (long j = 0; j < np; ++j) out.values(i, j) = wigner_point(rho, cplx{xs[i], ps[j]});
  }
  return out;
}

WignerGrid wigner_serial(const DensityMatrix& rho, std::span<const double> xs, std::span<const double> ps) {
  check_grid(xs, ps);
  WignerGrid out{{xs.begin(), xs.end()}, {ps.begin(), ps.end()}, Eigen::MatrixXd(xs.size(), ps.size())};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = wigner_point(rho, cplx{xs[i], ps[j]});
    }
  }
  return out;
}

void write_wigner_csv(const WignerGrid& grid, std::ostream& out) {
  out << "x,p,value\n";
  for (std::size_t i = 0; i < grid.xs.size(); ++i) {
    for (std::size_t j = 0; j < grid.ps.size(); ++j) {
      out << format_double(grid.xs[i]) << ',' << format_double(grid.ps[j]) << ','
          << format_double(grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) << '\n';
    }
  }
}

}  // namespace qsync
