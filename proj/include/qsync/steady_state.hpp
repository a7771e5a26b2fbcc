#pragma once

#include <optional>

#include <Eigen/SparseCore>

#include "qsync/hilbert.hpp"

namespace qsync {

using SparseComplex = Eigen::SparseMatrix<cplx>;

// Vectorization convention: column stacking. Entry rho(r, c) lives at
// vec index r + c * dim, so vec(A rho B) = (B^T kron A) vec(rho).
inline int vec_index(int row, int col, int dim) { return row + col * dim; }
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v, int dim);

/// Trace-one Hermitian positive-semidefinite matrix in the Fock basis.
///
/// Construction checks Hermiticity (1e-10) and unit trace (1e-10). The PSD
/// check (min eigenvalue > -1e-8) is part of the full validation and can be
/// skipped for solver output, whose positivity is reported separately.
class DensityMatrix {
 public:
  enum class Check { full, structural };

  explicit DensityMatrix(ComplexMatrix entries, Check check = Check::full);

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const ComplexMatrix& matrix() const { return rho_; }
  cplx operator()(int row, int col) const { return rho_(row, col); }

  double min_eigenvalue() const;

 private:
  ComplexMatrix rho_;
};

/// Superoperator of the master equation: L vec(rho) = vec(-i[H, rho]
/// + gamma1 D[a^dag] rho + gamma2 D[a^2] rho + gamma3 D[a] rho), with
/// D[C] rho = C rho C^dag - (C^dag C rho + rho C^dag C) / 2.
/// params.fock_dim must be resolved (>= 3).
SparseComplex build_liouvillian(const OscillatorParams& params);

/// Dense copy of a Liouvillian; only sensible for small dimensions.
ComplexMatrix to_dense(const SparseComplex& liouvillian);

struct SolverOptions {
  double residual_tol = 1e-9;
  double truncation_tol = 1e-6;
  double psd_tol = 1e-8;
  /// Fock level whose diagonal-index row is replaced by the trace row.
  /// Unset: the diagonal-index row of smallest infinity norm.
  std::optional<int> trace_row_level;
  /// Retries at +10 levels when an auto-selected dimension fails the truncation check.
  int max_dim_retries = 3;
};

struct SteadyStateReport {
  DensityMatrix rho;
  double residual = 0.0;        // ||L vec(rho)||_inf against the unmodified L
  double top_population = 0.0;  // rho_{D-1,D-1} + rho_{D-2,D-2}
  double min_eigenvalue = 0.0;
  int replaced_level = 0;
  bool converged = false;
};

/// Default truncation for gamma2/gamma1: 20 when >= 10, 40 when in [1, 10), else 60.
int default_fock_dim(double gamma1, double gamma2);

/// Steady state of `params`. When params.fock_dim == 0 the dimension comes
/// from default_fock_dim and is raised by 10 (up to max_dim_retries times)
/// while the truncation check fails. White noise is NOT applied here.
SteadyStateReport solve_steady_state(const OscillatorParams& params, const SolverOptions& options = {});

/// Trace-row-replacement solve for an arbitrary Liouvillian on `dim` levels.
/// Throws DegenerateDynamicsError when the constrained system is singular.
SteadyStateReport solve_liouvillian(const SparseComplex& liouvillian, int dim, const SolverOptions& options = {});

/// (1 - p) rho + p I / dim.
DensityMatrix apply_white_noise(const DensityMatrix& rho, double p);

}  // namespace qsync
