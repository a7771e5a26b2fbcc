#include "qsync/ansatz.hpp"

#include <cmath>

#include "qsync/error.hpp"

namespace qsync {

namespace {

void check_drive(double drive) {
  if (!(drive >= 0.0) || !std::isfinite(drive)) throw DomainError("drive must be finite and nonnegative");
}

double first_harmonic(double drive) { return 2.0 * drive / (9.0 + 8.0 * drive * drive); }

}  // namespace

ComplexMatrix AnsatzState::matrix() const {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = rho00;
  m(1, 1) = rho11;
  m(2, 2) = rho22;
  m(0, 1) = rho01;
  m(1, 0) = std::conj(rho01);
  return m;
}

AnsatzState ansatz_density_printed(double drive, double gamma2) {
  check_drive(drive);
  if (!(gamma2 > 0.0)) throw DomainError("gamma2 must be positive");
  const double e2 = drive * drive;
  const double den = 12.0 * e2 + 9.0 + 3.0 * gamma2 * (15.0 + 8.0 * e2);
  AnsatzState s;
  s.rho00 = gamma2 * (12.0 * e2 + 18.0) / den;
  s.rho11 = gamma2 * (12.0 * e2 + 9.0) / den;
  s.rho22 = (12.0 * e2 + 9.0) / den;
  s.rho01 = cplx{0.0, 6.0 * gamma2 * drive / den};
  s.normalized = false;
  return s;
}

AnsatzState ansatz_density(double drive, double gamma2) {
  AnsatzState s = ansatz_density_printed(drive, gamma2);
  const double trace = s.rho00 + s.rho11 + s.rho22;
  s.rho00 /= trace;
  s.rho11 /= trace;
  s.rho22 /= trace;
  s.rho01 /= trace;
  s.normalized = true;
  return s;
}

double limit_mrl1(double drive) {
  check_drive(drive);
  return first_harmonic(drive);
}

double limit_qfi(double drive) {
  const double m = limit_mrl1(drive);
  return 4.0 * m * m;
}

double limit_pcoh(double drive) {
  check_drive(drive);
  const double e2 = drive * drive;
  return 2.0 * drive / std::sqrt((8.0 * e2 + 9.0) * (4.0 * e2 + 3.0));
}

double limit_speak(double drive) {
  check_drive(drive);
  return 2.0 * first_harmonic(drive);
}

double limit_cfi_printed(double drive) {
  check_drive(drive);
  if (drive < 1e-8) return 0.0;
  const double e = drive;
  const double e2 = e * e;
  const double lambda = std::sqrt((9.0 + 4.0 * e + 8.0 * e2) * (9.0 - 4.0 * e + 8.0 * e2));
  const double a0 = 729.0 * (lambda - 9.0);
  const double a1 = 108.0 * (17.0 * lambda - 201.0);
  const double a2 = 544.0 * (3.0 * lambda - 52.0);
  const double a3 = 256.0 * (2.0 * lambda - 67.0);
  const double a4 = -4096.0;
  const double num = a0 + e2 * (a1 + e2 * (a2 + e2 * (a3 + e2 * a4)));
  const double gap = lambda - 9.0 - 8.0 * e2;
  return 4.0 * num / (lambda * (9.0 + 8.0 * e2) * gap * gap);
}

double limit_cfi(double drive) {
  check_drive(drive);
  if (drive >= 0.5) return limit_cfi_printed(drive);
  // Fisher information of (1 + a cos Phi)/2pi is 1 - sqrt(1 - a^2).
  const double a = limit_speak(drive);
  return a * a / (1.0 + std::sqrt(1.0 - a * a));
}

PhaseDistribution limit_pdist(double drive, int grid_size) {
  // Only c_1 is nonzero: P = (1 + 2 Re(c_1 e^{-i Phi})) / 2pi with c_1 = -a/2.
  return phase_distribution_from_fourier({cplx{1.0, 0.0}, cplx{-0.5 * limit_speak(drive), 0.0}}, grid_size);
}

DeepQuantumLimits deep_quantum_limits(double drive) {
  return {drive,
          limit_mrl1(drive),
          limit_qfi(drive),
          limit_pcoh(drive),
          limit_speak(drive),
          limit_cfi(drive),
          drive > kDeepQuantumValidityLimit};
}

}  // namespace qsync
