#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qsync/steady_state.hpp"

namespace qsync {

/// Wigner function sampled on a rectangular grid; values(i, j) is W at
/// alpha = xs[i] + i ps[j]. Normalized so that the integral over dx dp is 1.
struct WignerGrid {
  std::vector<double> xs;
  std::vector<double> ps;
  Eigen::MatrixXd values;
};

/// W(alpha) = (2/pi) Tr[rho D(alpha) Parity D(alpha)^dag] = (2/pi) sum_{n,m} rho_{nm} (-1)^n <m|D(2 alpha)|n>,
/// with the displacement matrix elements taken from their associated-Laguerre
/// closed form (exact in the untruncated space).
double wigner_point(const DensityMatrix& rho, cplx alpha);

/// OpenMP-parallel over grid rows.
WignerGrid wigner(const DensityMatrix& rho, std::span<const double> xs, std::span<const double> ps);

/// Single-threaded reference; bitwise identical to wigner().
WignerGrid wigner_serial(const DensityMatrix& rho, std::span<const double> xs, std::span<const double> ps);

/// "x,p,value" rows at 17 significant digits, x-major.
void write_wigner_csv(const WignerGrid& grid, std::ostream& out);

}  // namespace qsync
