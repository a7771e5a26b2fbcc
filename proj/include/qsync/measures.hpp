#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "qsync/steady_state.hpp"

namespace qsync {

/// Phase distribution P(Phi) = <Phi|rho|Phi> / 2pi with |Phi> = sum_n e^{in Phi}|n>.
///
/// Stored as its Fourier coefficients c_n = sum_m rho_{m+n,m} (c_n = <e^{in Phi}>)
/// plus samples on the uniform grid Phi_k = 2 pi k / M. Samples are evaluated
/// from the Fourier series, P(Phi) = (1 + 2 sum_{n>=1} Re(c_n e^{-in Phi})) / 2pi,
/// so they carry no quadrature error.
struct PhaseDistribution {
  std::vector<cplx> fourier;
  std::vector<double> samples;

  int grid_size() const { return static_cast<int>(samples.size()); }
  double grid_step() const;
  double angle(int k) const;
  /// Exact P at an arbitrary angle.
  double density(double phi) const;
  /// Exact dP/dPhi at an arbitrary angle.
  double derivative(double phi) const;
};

/// c_n = sum_m rho_{m+n,m} for n = 0..dim-1.
std::vector<cplx> phase_fourier_coefficients(const ComplexMatrix& rho);

/// Samples a Fourier series on `grid_size` points. Requires grid_size >= 4 * coeffs.size().
PhaseDistribution phase_distribution_from_fourier(std::vector<cplx> fourier, int grid_size);

PhaseDistribution phase_distribution(const DensityMatrix& rho, int grid_size = 4096);

struct PhaseCoherence {
  cplx value;            // Tr[a rho] / sqrt(Tr[a^dag a rho])
  bool defined = true;   // false for (numerically) vacuum states; value is then 0
  double magnitude() const { return std::abs(value); }
};

PhaseCoherence phase_coherence(const DensityMatrix& rho, double vacuum_threshold = 1e-12);

/// 2 pi max P - 1. Grid scan, then parabolic refinement of the peak position
/// from the three bracketing samples and exact evaluation there.
double s_peak(const PhaseDistribution& pdist);

/// n-th mean resultant length |<e^{in Phi}>| = |c_n|, 1 <= n < dim.
double mrl(const PhaseDistribution& pdist, int order);

/// Eigenvalues descending, eigenvectors as orthonormal columns.
struct EigenDecomposition {
  Eigen::VectorXd values;
  ComplexMatrix vectors;
};

EigenDecomposition eigen_decompose(const DensityMatrix& rho);

/// QFI for the generator a^dag a:
/// 2 sum_{k,l} (l_k - l_l)^2 / (l_k + l_l) |<k|a^dag a|l>|^2 over pairs with l_k + l_l > cutoff.
double qfi(const EigenDecomposition& eig, double cutoff = 1e-12);
double qfi(const DensityMatrix& rho, double cutoff = 1e-12);

struct FisherInformation {
  double value = 0.0;
  bool regularized = false;  // the density floor was hit somewhere on the grid
};

/// Fisher information of P(Phi) under a phase shift: int P'^2 / max(P, floor) dPhi,
/// periodic trapezoid on the sample grid with P' taken from the Fourier series.
FisherInformation cfi(const PhaseDistribution& pdist, double floor = 1e-12);

struct MeasureConfig {
  int grid_size = 4096;
  double cfi_floor = 1e-12;
  double qfi_cutoff = 1e-12;
  double vacuum_threshold = 1e-12;
};

struct MeasureSet {
  cplx s_pcoh_complex{0.0, 0.0};
  double s_pcoh = 0.0;
  double s_peak = 0.0;
  double mrl1 = 0.0;
  double mrl2 = 0.0;
  double qfi = 0.0;
  double cfi = 0.0;
  bool s_pcoh_undefined = false;
  bool cfi_regularized = false;
};

MeasureSet measure_all(const DensityMatrix& rho, const MeasureConfig& config = {});

/// "phi,value" rows at 17 significant digits.
void write_phase_distribution_csv(const PhaseDistribution& pdist, std::ostream& out);

}  // namespace qsync
