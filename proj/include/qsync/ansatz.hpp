#pragma once

#include "qsync/hilbert.hpp"
#include "qsync/measures.hpp"

namespace qsync {

// Deep-quantum (gamma2 -> inf) analytics for Delta = 0, gamma1 = 1, gamma3 = 0,
// eta = 0. The closed forms are only accurate for E << 1.

/// Three-level ansatz: populations rho00, rho11, rho22 and one coherence rho01 = conj(rho10).
struct AnsatzState {
  double rho00 = 0.0;
  double rho11 = 0.0;
  double rho22 = 0.0;
  cplx rho01{0.0, 0.0};
  bool normalized = false;

  /// 3x3 matrix in the Fock basis.
  ComplexMatrix matrix() const;
};

/// Printed three-level ansatz as a function of (E, gamma2), without renormalization.
/// Its trace is (gamma2(24E^2 + 27) + 12E^2 + 9) / (12E^2 + 9 + 3 gamma2 (15 + 8E^2)) != 1.
AnsatzState ansatz_density_printed(double drive, double gamma2);

/// The printed ansatz divided by its trace. As gamma2 -> inf its coherence
/// tends to 2E / (9 + 8E^2), matching limit_mrl1.
AnsatzState ansatz_density(double drive, double gamma2);

double limit_mrl1(double drive);   // 2E / (9 + 8E^2)
double limit_qfi(double drive);    // 4 (2E / (9 + 8E^2))^2
double limit_pcoh(double drive);   // 2E / sqrt((8E^2 + 9)(4E^2 + 3))
double limit_speak(double drive);  // 4E / (9 + 8E^2)

/// Fisher information of the limiting phase distribution. Uses the
/// polynomial closed form for E >= 0.5, where it is well conditioned, and the
/// equivalent a^2 / (1 + sqrt(1 - a^2)) with a = 4E / (9 + 8E^2) below it.
double limit_cfi(double drive);

/// The polynomial closed form 4 (A0 + A1 E^2 + ... + A4 E^8) / (lambda (9+8E^2)(lambda - 9 - 8E^2)^2),
/// lambda = sqrt((9 + 4E + 8E^2)(9 - 4E + 8E^2)). Loses all precision for small E
/// (0/0 at E = 0, which returns 0).
double limit_cfi_printed(double drive);

/// P(Phi) = (1 - 4E/(9 + 8E^2) cos Phi) / 2pi on `grid_size` points.
PhaseDistribution limit_pdist(double drive, int grid_size = 4096);

/// Upper end of the drive range where the closed forms are trusted.
inline constexpr double kDeepQuantumValidityLimit = 0.3;

struct DeepQuantumLimits {
  double drive = 0.0;
  double mrl1 = 0.0;
  double qfi = 0.0;
  double pcoh = 0.0;
  double speak = 0.0;
  double cfi = 0.0;
  bool beyond_validity = false;  // drive > kDeepQuantumValidityLimit
};

DeepQuantumLimits deep_quantum_limits(double drive);

}  // namespace qsync
