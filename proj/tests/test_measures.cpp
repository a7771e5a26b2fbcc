#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "qsync/error.hpp"
#include "qsync/measures.hpp"
#include "qsync/steady_state.hpp"

using namespace qsync;
using std::numbers::pi;

namespace {

DensityMatrix superposition(int dim, int k) {
  ComplexVector psi = ComplexVector::Zero(dim);
  psi(0) = 1.0;
  psi(k) = 1.0;
  return DensityMatrix::pure(psi);
}

DensityMatrix fig1_state() {
  OscillatorParams p;
  p.drive = 0.5;
  p.eta = 0.5;
  p.phi = pi / 2;
  p.fock_dim = 30;
  return solve_steady_state(p).rho;
}

}  // namespace

TEST_CASE("maximally mixed state has a flat phase distribution") {
  for (int dim : {2, 5, 20}) {
    const auto rho = DensityMatrix::maximally_mixed(dim);
    const auto pd = phase_distribution(rho);
    for (double v : pd.samples) CHECK(std::abs(v - 1.0 / (2.0 * pi)) < 1e-15);
    CHECK(std::abs(s_peak(pd)) < 1e-12);
    CHECK(mrl(pd, 1) < 1e-15);
    CHECK(qfi(rho) == 0.0);
    CHECK(cfi(pd).value < 1e-20);
    CHECK(phase_coherence(rho).magnitude() == 0.0);
  }
}

TEST_CASE("equal superposition of |0> and |1>") {
  const auto rho = superposition(2, 1);
  const auto pd = phase_distribution(rho);
  CHECK(std::abs(pd.density(0.0) - 1.0 / pi) < 1e-15);
  CHECK(std::abs(pd.density(pi)) < 1e-15);
  CHECK(std::abs(s_peak(pd) - 1.0) < 1e-12);
  CHECK(std::abs(mrl(pd, 1) - 0.5) < 1e-15);
  CHECK(std::abs(qfi(rho) - 1.0) < 1e-12);
  CHECK(std::abs(phase_coherence(rho).magnitude() - 1.0 / std::sqrt(2.0)) < 1e-15);
  // P = (1 + cos)/2pi is the a = 1 cardioid. P vanishes at Phi = pi, where the
  // floor drops one trapezoid node worth 2/M.
  const auto f = cfi(pd);
  CHECK(f.regularized);
  CHECK(std::abs(f.value - (1.0 - 2.0 / pd.grid_size())) < 1e-8);

  const auto m = measure_all(rho);
  CHECK(m.mrl2 == 0.0);
  CHECK(std::abs(m.s_pcoh - 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("superposition of |0> and |2> has two peaks and no first harmonic") {
  const auto rho = superposition(3, 2);
  const auto pd = phase_distribution(rho);
  CHECK(mrl(pd, 1) < 1e-15);
  CHECK(std::abs(mrl(pd, 2) - 0.5) < 1e-15);
  CHECK(std::abs(pd.density(0.0) - 1.0 / pi) < 1e-15);
  CHECK(std::abs(pd.density(pi) - 1.0 / pi) < 1e-15);
  CHECK(std::abs(s_peak(pd) - 1.0) < 1e-12);
  CHECK(phase_coherence(rho).magnitude() == 0.0);
  CHECK(std::abs(qfi(rho) - 4.0) < 1e-12);
}

TEST_CASE("phase distribution conventions") {
  // A coherent state with arg(alpha) = theta peaks at Phi = theta.
  const double theta = 1.1;
  const auto rho = DensityMatrix::pure(oracle::coherent_state(30, std::polar(1.5, theta)));
  const auto pd = phase_distribution(rho);
  int best = 0;
  for (int k = 1; k < pd.grid_size(); ++k)
    if (pd.samples[k] > pd.samples[best]) best = k;
  CHECK(std::abs(pd.angle(best) - theta) <= pd.grid_step());

  // Integral and analytic derivative.
  double total = 0.0;
  for (double v : pd.samples) total += v;
  CHECK(std::abs(total * pd.grid_step() - 1.0) < 1e-13);
  const double h = 1e-5;
  for (double phi : {0.3, 1.7, 4.0}) {
    const double fd = (pd.density(phi + h) - pd.density(phi - h)) / (2 * h);
    CHECK(std::abs(pd.derivative(phi) - fd) < 1e-7);
  }
  for (int k : {0, 17, 1000}) CHECK(std::abs(pd.samples[k] - pd.density(pd.angle(k))) < 1e-14);
}

TEST_CASE("grid resolution rule") {
  const auto rho = superposition(20, 3);
  CHECK_THROWS_AS(phase_distribution(rho, 79), ResolutionError);
  CHECK_NOTHROW(phase_distribution(rho, 80));
  CHECK_THROWS_AS(phase_distribution_from_fourier({}, 16), DimensionError);
}

TEST_CASE("MRL order is range checked") {
  const auto pd = phase_distribution(superposition(4, 1));
  CHECK_THROWS_AS(mrl(pd, 0), OrderError);
  CHECK_THROWS_AS(mrl(pd, 4), OrderError);
  CHECK_NOTHROW(mrl(pd, 3));
}

TEST_CASE("MRL from the Fourier series equals the off-diagonal sums and a quadrature") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix m = ComplexMatrix::Zero(8, 8);
    for (int k = 0; k < 3; ++k) {
      const ComplexVector psi = oracle::random_state(8, rng);
      m += psi * psi.adjoint() / 3.0;
    }
    const DensityMatrix rho(m);
    const auto pd = phase_distribution(rho);
    for (int n = 1; n < 8; ++n) {
      CHECK(std::abs(mrl(pd, n) - oracle::offdiagonal_sum_modulus(m, n)) < 1e-14);
      cplx q{0.0, 0.0};
      for (int k = 0; k < pd.grid_size(); ++k) q += pd.samples[k] * std::polar(1.0, n * pd.angle(k));
      CHECK(std::abs(std::abs(q * pd.grid_step()) - mrl(pd, n)) < 1e-12);
    }
  }
}

TEST_CASE("QFI of pure states is four times the photon-number variance") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexVector psi = oracle::random_state(10, rng);
    CHECK(std::abs(qfi(DensityMatrix::pure(psi)) - oracle::pure_state_qfi(psi)) < 1e-10);
  }
  for (int n = 0; n < 5; ++n) {
    ComplexVector fock = ComplexVector::Zero(5);
    fock(n) = 1.0;
    CHECK(qfi(DensityMatrix::pure(fock)) < 1e-14);
  }
}

TEST_CASE("coherent-state QFI is about four times the mean photon number") {
  const double amp = 2.0;
  const ComplexVector psi = oracle::coherent_state(50, std::polar(amp, 0.4));
  CHECK(std::abs(qfi(DensityMatrix::pure(psi)) - 4.0 * amp * amp) < 1e-6);
}

TEST_CASE("QFI is bounded by the pure-state value and decreases under white noise") {
  std::mt19937_64 rng(21);
  const ComplexVector psi = oracle::random_state(6, rng);
  const auto pure = DensityMatrix::pure(psi);
  double prev = qfi(pure);
  for (double p : {0.1, 0.3, 0.6, 0.9}) {
    const double q = qfi(apply_white_noise(pure, p));
    CHECK(q < prev);
    prev = q;
  }
  CHECK(qfi(apply_white_noise(pure, 1.0)) < 1e-14);
}

TEST_CASE("CFI of the cardioid") {
  for (double a : {0.0, 0.1, 0.4, 0.8, 0.99}) {
    const auto pd = phase_distribution_from_fourier({cplx{1.0, 0.0}, cplx{a / 2.0, 0.0}}, 4096);
    const auto f = cfi(pd);
    CHECK(std::abs(f.value - oracle::cardioid_cfi(a)) < 1e-8);
    CHECK(std::abs(oracle::cardioid_cfi_simpson(a, 20000) - oracle::cardioid_cfi(a)) < 1e-8);
    CHECK_FALSE(f.regularized);
  }
}

TEST_CASE("CFI converges with the grid and respects the QFI bound") {
  const auto rho = fig1_state();
  const double c1 = cfi(phase_distribution(rho, 4096)).value;
  const double c2 = cfi(phase_distribution(rho, 8192)).value;
  CHECK(std::abs(c1 - c2) < 1e-10);
  CHECK(c1 <= qfi(rho) + 1e-12);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto r = DensityMatrix::pure(oracle::random_state(7, rng));
    CHECK(cfi(phase_distribution(r)).value <= qfi(r) + 1e-9);
  }
}

TEST_CASE("CFI floor") {
  const auto pd = phase_distribution(superposition(2, 1));
  CHECK_THROWS_AS(cfi(pd, 0.0), DomainError);
  // P vanishes at Phi = pi, so a large floor must bite.
  CHECK(cfi(pd, 1e-2).regularized);
}

TEST_CASE("phase coherence undefined for vacuum") {
  ComplexVector vac = ComplexVector::Zero(4);
  vac(0) = 1.0;
  const auto pc = phase_coherence(DensityMatrix::pure(vac));
  CHECK_FALSE(pc.defined);
  CHECK(pc.magnitude() == 0.0);
  CHECK(measure_all(DensityMatrix::pure(vac)).s_pcoh_undefined);
}

TEST_CASE("squeezing-only steady states have a pi-symmetric phase distribution") {
  OscillatorParams p;
  p.eta = 0.4;
  p.phi = 0.7;
  p.gamma2 = 2.0;
  p.fock_dim = 30;
  const auto rho = solve_steady_state(p).rho;
  const auto pd = phase_distribution(rho);
  CHECK(mrl(pd, 1) < 1e-12);
  CHECK(phase_coherence(rho).magnitude() < 1e-12);
  CHECK(mrl(pd, 2) > 1e-3);
  const int half = pd.grid_size() / 2;
  for (int k = 0; k < half; k += 97) CHECK(std::abs(pd.samples[k] - pd.samples[k + half]) < 1e-12);
}

TEST_CASE("Driven squeezed measures are consistent") {
  const auto rho = fig1_state();
  const auto m = measure_all(rho);
  CHECK(m.s_peak > 0.0);
  CHECK(m.mrl2 > 0.0);
  CHECK(m.cfi <= m.qfi);
  const auto pd = phase_distribution(rho);
  const double grid_peak = 2 * pi * *std::max_element(pd.samples.begin(), pd.samples.end()) - 1.0;
  CHECK(m.s_peak >= grid_peak);
  CHECK(m.s_peak - grid_peak < 1e-5);
  // Eigen-decomposition ordering.
  const auto eig = eigen_decompose(rho);
  for (int k = 1; k < eig.values.size(); ++k) CHECK(eig.values(k - 1) >= eig.values(k));
}

TEST_CASE("phase distribution CSV") {
  const auto pd = phase_distribution(superposition(2, 1), 8);
  std::ostringstream out;
  write_phase_distribution_csv(pd, out);
  const std::string s = out.str();
  CHECK(s.rfind("phi,value\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 9);
}
