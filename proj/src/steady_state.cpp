#include "qsync/steady_state.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include "qsync/error.hpp"

namespace qsync {

namespace {

using Triplet = Eigen::Triplet<cplx>;

SparseComplex sparse(const ComplexMatrix& m) { return m.sparseView(); }

SparseComplex sparse_identity(int dim) {
  SparseComplex id(dim, dim);
  id.setIdentity();
  return id;
}

// Accumulates scale * (lhs kron rhs) into the triplet list.
void add_kron(std::vector<Triplet>& out, cplx scale, const SparseComplex& lhs, const SparseComplex& rhs) {
  const int rows = static_cast<int>(rhs.rows());
  const int cols = static_cast<int>(rhs.cols());
  for (int lc = 0; lc < lhs.outerSize(); ++lc) {
    for (SparseComplex::InnerIterator l(lhs, lc); l; ++l) {
      for (int rc = 0; rc < rhs.outerSize(); ++rc) {
        for (SparseComplex::InnerIterator r(rhs, rc); r; ++r) {
          out.emplace_back(static_cast<int>(l.row()) * rows + static_cast<int>(r.row()),
                           static_cast<int>(l.col()) * cols + static_cast<int>(r.col()), scale * l.value() * r.value());
        }
      }
    }
  }
}

void add_dissipator(std::vector<Triplet>& out, double rate, const ComplexMatrix& jump, const SparseComplex& id) {
  if (rate == 0.0) return;
  const ComplexMatrix jdj = jump.adjoint() * jump;
  add_kron(out, rate, sparse(jump.conjugate()), sparse(jump));
  add_kron(out, -0.5 * rate, id, sparse(jdj));
  add_kron(out, -0.5 * rate, sparse(jdj.transpose()), id);
}

double hermitian_defect(const ComplexMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

ComplexVector vectorize(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) throw DimensionError("unvectorize: size mismatch");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

DensityMatrix::DensityMatrix(ComplexMatrix entries, Check check) : rho_(std::move(entries)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 2) throw DimensionError("density matrix must be square with dim >= 2");
  if (!rho_.allFinite()) throw DomainError("density matrix has non-finite entries");
  if (hermitian_defect(rho_) >= 1e-10) throw DomainError("density matrix is not Hermitian");
  if (std::abs(rho_.trace() - 1.0) >= 1e-10) throw DomainError("density matrix trace differs from 1");
  if (check == Check::full && min_eigenvalue() <= -1e-8) {
    throw DomainError("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw DomainError("pure state vector must be nonzero");
  const ComplexVector unit = psi / norm;
  ComplexMatrix rho = unit * unit.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 2) throw DimensionError("maximally mixed state needs dim >= 2");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

SparseComplex build_liouvillian(const OscillatorParams& params) {
  const ComplexMatrix h = hamiltonian(params);
  const int dim = params.fock_dim;
  const ComplexMatrix a = annihilation(dim);
  const SparseComplex id = sparse_identity(dim);
  constexpr cplx i{0.0, 1.0};

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(dim) * dim * 24);
  add_kron(triplets, -i, id, sparse(h));
  add_kron(triplets, i, sparse(h.transpose()), id);
  add_dissipator(triplets, params.gamma1, a.adjoint(), id);
  add_dissipator(triplets, params.gamma2, a * a, id);
  add_dissipator(triplets, params.gamma3, a, id);

  SparseComplex l(dim * dim, dim * dim);
  l.setFromTriplets(triplets.begin(), triplets.end());
  l.prune(cplx{0.0, 0.0});
  return l;
}

ComplexMatrix to_dense(const SparseComplex& liouvillian) { return ComplexMatrix(liouvillian); }

int default_fock_dim(double gamma1, double gamma2) {
  const double ratio = gamma2 / gamma1;
  if (ratio >= 10.0) return 20;
  if (ratio >= 1.0) return 40;
  return 60;
}

SteadyStateReport solve_liouvillian(const SparseComplex& liouvillian, int dim, const SolverOptions& options) {
  const int n = dim * dim;
  if (dim < 2 || liouvillian.rows() != n || liouvillian.cols() != n) {
    throw DimensionError("Liouvillian size does not match dim^2");
  }

  // Row norms of the diagonal-index rows. Trace preservation makes exactly
  // these rows linearly dependent, so one of them carries no information.
  std::vector<double> row_norm(static_cast<std::size_t>(n), 0.0);
  for (int c = 0; c < liouvillian.outerSize(); ++c) {
    for (SparseComplex::InnerIterator it(liouvillian, c); it; ++it) {
      auto& r = row_norm[static_cast<std::size_t>(it.row())];
      r = std::max(r, std::abs(it.value()));
    }
  }
  int level = 0;
  if (options.trace_row_level) {
    level = *options.trace_row_level;
    if (level < 0 || level >= dim) throw DomainError("trace_row_level out of range");
  } else {
    for (int k = 1; k < dim; ++k) {
      if (row_norm[static_cast<std::size_t>(vec_index(k, k, dim))] <
          row_norm[static_cast<std::size_t>(vec_index(level, level, dim))]) {
        level = k;
      }
    }
  }
  const int replaced = vec_index(level, level, dim);

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(liouvillian.nonZeros() + dim));
  for (int c = 0; c < liouvillian.outerSize(); ++c) {
    for (SparseComplex::InnerIterator it(liouvillian, c); it; ++it) {
      if (it.row() != replaced) triplets.emplace_back(static_cast<int>(it.row()), c, it.value());
    }
  }
  for (int k = 0; k < dim; ++k) triplets.emplace_back(replaced, vec_index(k, k, dim), cplx{1.0, 0.0});
  SparseComplex constrained(n, n);
  constrained.setFromTriplets(triplets.begin(), triplets.end());
  constrained.makeCompressed();

  Eigen::SparseLU<SparseComplex, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(constrained);
  if (lu.info() != Eigen::Success) {
    throw DegenerateDynamicsError("trace-constrained Liouvillian is singular: " + lu.lastErrorMessage());
  }
  ComplexVector rhs = ComplexVector::Zero(n);
  rhs(replaced) = 1.0;
  const ComplexVector x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite()) {
    throw DegenerateDynamicsError("steady-state solve produced no finite solution");
  }

  ComplexMatrix rho = unvectorize(x, dim);
  rho = (0.5 * (rho + rho.adjoint())).eval();
  const cplx trace = rho.trace();
  if (!(std::abs(trace) > 0.0)) throw DegenerateDynamicsError("steady-state solution has zero trace");
  rho /= trace.real();

  SteadyStateReport report{DensityMatrix(rho, DensityMatrix::Check::structural)};
  report.residual = (liouvillian * vectorize(rho)).cwiseAbs().maxCoeff();
  report.top_population = rho(dim - 1, dim - 1).real() + rho(dim - 2, dim - 2).real();
  report.min_eigenvalue = report.rho.min_eigenvalue();
  report.replaced_level = level;
  report.converged = report.residual < options.residual_tol && report.top_population < options.truncation_tol &&
                     report.min_eigenvalue > -options.psd_tol;
  return report;
}

SteadyStateReport solve_steady_state(const OscillatorParams& params, const SolverOptions& options) {
  params.validate();
  OscillatorParams resolved = params;
  const bool automatic = params.fock_dim == 0;
  if (automatic) resolved.fock_dim = default_fock_dim(params.gamma1, params.gamma2);

  SteadyStateReport report = solve_liouvillian(build_liouvillian(resolved), resolved.fock_dim, options);
  for (int retry = 0; automatic && retry < options.max_dim_retries && report.top_population >= options.truncation_tol;
       ++retry) {
    resolved.fock_dim += 10;
    report = solve_liouvillian(build_liouvillian(resolved), resolved.fock_dim, options);
  }
  return report;
}

DensityMatrix apply_white_noise(const DensityMatrix& rho, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("white-noise fraction must lie in [0, 1]");
  const int dim = rho.dim();
  ComplexMatrix mixed = (1.0 - p) * rho.matrix();
  mixed.diagonal().array() += p / static_cast<double>(dim);
  return DensityMatrix(std::move(mixed), DensityMatrix::Check::structural);
}

}  // namespace qsync
