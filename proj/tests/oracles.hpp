#pragma once

// Test-only reference computations, written independently of the library
// code paths they check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qsync/hilbert.hpp"
#include "qsync/steady_state.hpp"

namespace oracle {

using qsync::ComplexMatrix;
using qsync::ComplexVector;
using qsync::cplx;

inline ComplexMatrix dissipate(const ComplexMatrix& c, const ComplexMatrix& rho) {
  const ComplexMatrix cdc = c.adjoint() * c;
  return c * rho * c.adjoint() - 0.5 * (cdc * rho + rho * cdc);
}

/// Right-hand side of the master equation, applied directly to rho.
inline ComplexMatrix master_rhs(const qsync::OscillatorParams& p, const ComplexMatrix& rho) {
  const int d = p.fock_dim;
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
  const ComplexMatrix h = qsync::hamiltonian(p);
  const cplx i{0.0, 1.0};
  return -i * (h * rho - rho * h) + p.gamma1 * dissipate(a.adjoint(), rho) + p.gamma2 * dissipate(a * a, rho) +
         p.gamma3 * dissipate(a, rho);
}

/// Dense Liouvillian built column by column from master_rhs on matrix units
/// (column-stacked vectorization).
inline ComplexMatrix liouvillian_by_columns(const qsync::OscillatorParams& p) {
  const int d = p.fock_dim;
  ComplexMatrix l(d * d, d * d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      ComplexMatrix unit = ComplexMatrix::Zero(d, d);
      unit(r, c) = 1.0;
      const ComplexMatrix out = master_rhs(p, unit);
      for (int cc = 0; cc < d; ++cc)
        for (int rr = 0; rr < d; ++rr) l(rr + cc * d, r + c * d) = out(rr, cc);
    }
  }
  return l;
}

/// |sum_m rho_{m+n,m}| straight from the entries.
inline double offdiagonal_sum_modulus(const ComplexMatrix& rho, int n) {
  cplx s{0.0, 0.0};
  for (int m = 0; m + n < rho.rows(); ++m) s += rho(m + n, m);
  return std::abs(s);
}

/// Fisher information of (1 + a cos Phi)/2pi in closed form.
inline double cardioid_cfi(double a) { return 1.0 - std::sqrt(1.0 - a * a); }

/// Same quantity by composite Simpson quadrature of a^2 sin^2 / (2 pi (1 + a cos)).
inline double cardioid_cfi_simpson(double a, int intervals) {
  const double h = 2.0 * std::numbers::pi / intervals;
  auto f = [a](double t) { return a * a * std::sin(t) * std::sin(t) / (2.0 * std::numbers::pi * (1.0 + a * std::cos(t))); };
  double s = f(0.0) + f(2.0 * std::numbers::pi);
  for (int k = 1; k < intervals; ++k) s += (k % 2 ? 4.0 : 2.0) * f(k * h);
  return s * h / 3.0;
}

/// Wigner function via std::assoc_laguerre and explicit factorial ratios.
inline double wigner_direct(const ComplexMatrix& rho, cplx alpha) {
  const double x = 4.0 * std::norm(alpha);
  double w = 0.0;
  for (int m = 0; m < rho.rows(); ++m) {
    w += std::real(rho(m, m)) * std::pow(-1.0, m) * std::assoc_laguerre(m, 0, x);
    for (int n = m + 1; n < rho.rows(); ++n) {
      const double ratio = std::exp(0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0)));
      w += 2.0 * std::real(rho(m, n) * std::pow(-1.0, m) * std::pow(2.0 * alpha, n - m) * ratio *
                           std::assoc_laguerre(m, n - m, x));
    }
  }
  return 2.0 / std::numbers::pi * std::exp(-0.5 * x) * w;
}

inline ComplexVector random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexVector psi(dim);
  for (int k = 0; k < dim; ++k) psi(k) = cplx{g(rng), g(rng)};
  return psi / psi.norm();
}

/// 4 Var(a^dag a) for a normalized pure state.
inline double pure_state_qfi(const ComplexVector& psi) {
  double m1 = 0.0, m2 = 0.0;
  for (int n = 0; n < psi.size(); ++n) {
    const double p = std::norm(psi(n));
    m1 += n * p;
    m2 += double(n) * n * p;
  }
  return 4.0 * (m2 - m1 * m1);
}

/// Truncated, renormalized coherent state.
inline ComplexVector coherent_state(int dim, cplx alpha) {
  ComplexVector psi(dim);
  cplx term = 1.0;
  for (int n = 0; n < dim; ++n) {
    if (n > 0) term *= alpha / std::sqrt(double(n));
    psi(n) = term;
  }
  return psi / psi.norm();
}

}  // namespace oracle
