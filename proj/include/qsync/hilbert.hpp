#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace qsync {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Physical knobs of the driven, squeezed Stuart-Landau oscillator in the
/// rotating frame of the drive. Rates are in arbitrary units; the CLI uses
/// units of gamma1.
struct OscillatorParams {
  double delta = 0.0;        // detuning
  double drive = 0.0;        // coherent drive amplitude E
  double eta = 0.0;          // squeezing amplitude
  double phi = 0.0;          // squeezing phase, [0, 2pi)
  double gamma1 = 1.0;       // negative damping (single-photon gain)
  double gamma2 = 1.0;       // nonlinear (two-photon) damping
  double gamma3 = 0.0;       // linear damping
  double white_noise = 0.0;  // mixing fraction p with the maximally mixed state
  int fock_dim = 0;          // truncation; 0 selects default_fock_dim()

  /// Throws DomainError naming the first offending field.
  void validate() const;
};

/// Names accepted by get/set (and by sweep axes): the real-valued fields.
bool is_param_name(const std::string& name);
double get_param(const OscillatorParams& params, const std::string& name);
void set_param(OscillatorParams& params, const std::string& name, double value);

/// Lowering operator on `dim` Fock levels: <n-1|a|n> = sqrt(n).
ComplexMatrix annihilation(int dim);

/// a^dag a = diag(0, 1, ..., dim-1).
ComplexMatrix number_operator(int dim);

/// H = delta a^dag a + iE(a - a^dag) + i eta (a^dag^2 e^{2i phi} - a^2 e^{-2i phi})
/// on params.fock_dim levels (which must already be resolved, i.e. >= 3).
ComplexMatrix hamiltonian(const OscillatorParams& params);

}  // namespace qsync
