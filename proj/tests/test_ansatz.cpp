#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qsync/ansatz.hpp"
#include "qsync/error.hpp"
#include "qsync/measures.hpp"
#include "qsync/steady_state.hpp"

using namespace qsync;
using std::numbers::pi;

namespace {

SteadyStateReport deep_quantum_solve(double drive, double gamma2, int dim = 10) {
  OscillatorParams p;
  p.drive = drive;
  p.gamma2 = gamma2;
  p.fock_dim = dim;
  return solve_steady_state(p);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("closed forms at reference drives") {
  CHECK(limit_mrl1(0.0) == 0.0);
  CHECK(limit_qfi(0.0) == 0.0);
  CHECK(limit_pcoh(0.0) == 0.0);
  CHECK(limit_speak(0.0) == 0.0);
  CHECK(limit_cfi(0.0) == 0.0);
  CHECK(limit_cfi_printed(0.0) == 0.0);

  CHECK(std::abs(limit_mrl1(0.5) - 1.0 / 11.0) < 1e-15);
  CHECK(std::abs(limit_speak(0.5) - 2.0 / 11.0) < 1e-15);
  CHECK(std::abs(limit_speak(0.1) - 0.4 / 9.08) < 1e-15);
  CHECK(std::abs(limit_qfi(0.1) - 1.941e-3) < 1e-6);
  for (double e : {0.01, 0.2, 1.0, 3.0}) CHECK(std::abs(limit_speak(e) - 2.0 * limit_mrl1(e)) < 1e-16);
  CHECK_THROWS_AS(limit_mrl1(-0.1), DomainError);
}

TEST_CASE("printed CFI polynomial equals the cardioid Fisher information") {
  for (double e = 0.5; e <= 3.0; e += 0.125) {
    const double a = limit_speak(e);
    CHECK(std::abs(limit_cfi_printed(e) - oracle::cardioid_cfi(a)) < 1e-10);
    CHECK(std::abs(limit_cfi(e) - oracle::cardioid_cfi(a)) < 1e-10);
  }
  for (double e : {1e-6, 1e-3, 0.01, 0.1, 0.3, 0.49}) {
    const double a = limit_speak(e);
    CHECK(rel(limit_cfi(e), oracle::cardioid_cfi_simpson(a, 4000)) < 1e-8);
  }
  CHECK(limit_cfi(1e-9) < 1e-17);
}

TEST_CASE("limiting phase distribution") {
  const auto flat = limit_pdist(0.0);
  for (double v : flat.samples) CHECK(std::abs(v - 1.0 / (2 * pi)) < 1e-16);

  const auto pd = limit_pdist(0.1);
  double total = 0.0;
  for (double v : pd.samples) total += v;
  CHECK(std::abs(total * pd.grid_step() - 1.0) < 1e-14);
  const auto [lo, hi] = std::minmax_element(pd.samples.begin(), pd.samples.end());
  CHECK(std::abs(pi * (*hi - *lo) - 0.4 / 9.08) < 1e-12);
  // Minimum at Phi = 0 with the minus sign.
  CHECK(lo == pd.samples.begin());
  CHECK(std::abs(mrl(pd, 1) - limit_mrl1(0.1)) < 1e-16);
  CHECK(std::abs(s_peak(pd) - limit_speak(0.1)) < 1e-10);
  CHECK(std::abs(cfi(pd).value - limit_cfi(0.1)) < 1e-10);
}

TEST_CASE("printed ansatz trace and renormalization") {
  const double e = 0.4, g2 = 50.0;
  const auto s = ansatz_density_printed(e, g2);
  const double e2 = e * e;
  const double expected_trace =
      (g2 * (24 * e2 + 27) + 12 * e2 + 9) / (12 * e2 + 9 + 3 * g2 * (15 + 8 * e2));
  CHECK(std::abs(s.rho00 + s.rho11 + s.rho22 - expected_trace) < 1e-15);
  CHECK_FALSE(s.normalized);
  const auto n = ansatz_density(e, g2);
  CHECK(n.normalized);
  CHECK(std::abs(n.rho00 + n.rho11 + n.rho22 - 1.0) < 1e-15);
  CHECK(std::abs(n.matrix().trace() - 1.0) < 1e-15);
  CHECK_THROWS_AS(ansatz_density(0.1, 0.0), DomainError);
}

TEST_CASE("renormalized ansatz in the gamma2 -> infinity limit") {
  const auto zero = ansatz_density(0.0, 1e12);
  CHECK(std::abs(zero.rho00 - 2.0 / 3.0) < 1e-11);
  CHECK(std::abs(zero.rho11 - 1.0 / 3.0) < 1e-11);
  CHECK(zero.rho22 < 1e-11);
  for (double e : {0.05, 0.2, 1.0}) CHECK(std::abs(std::abs(ansatz_density(e, 1e12).rho01) - limit_mrl1(e)) < 1e-11);
}

TEST_CASE("ansatz against the numeric ten-level steady state") {
  const auto num = deep_quantum_solve(0.05, 300.0);
  REQUIRE(num.converged);
  const auto an = ansatz_density(0.05, 300.0);
  // Finite-gamma2 corrections shift populations by about 1e-3.
  CHECK(std::abs(num.rho(0, 0).real() - an.rho00) < 2e-3);
  CHECK(std::abs(num.rho(1, 1).real() - an.rho11) < 2e-3);
  CHECK(std::abs(num.rho(2, 2).real() - an.rho22) < 2e-3);
  // Ansatz and solver use different phase references for the coherence.
  CHECK(std::abs(std::abs(num.rho(0, 1)) - std::abs(an.rho01)) < 1e-3);

  const auto zero = deep_quantum_solve(0.0, 300.0, 6);
  const auto an0 = ansatz_density(0.0, 300.0);
  CHECK(std::abs(zero.rho(0, 0).real() - an0.rho00) < 2e-3);
}

TEST_CASE("closed forms are the gamma2 -> infinity limit of the numerics") {
  const double e = 0.05;
  const auto num = deep_quantum_solve(e, 30000.0, 8);
  REQUIRE(num.converged);
  const auto m = measure_all(num.rho);
  CHECK(rel(m.mrl1, limit_mrl1(e)) < 1e-3);
  CHECK(rel(m.s_peak, limit_speak(e)) < 1e-3);
  CHECK(rel(m.s_pcoh, limit_pcoh(e)) < 1e-3);
  CHECK(rel(m.qfi, limit_qfi(e)) < 1e-3);
  CHECK(rel(m.cfi, limit_cfi(e)) < 1e-3);

  // Errors shrink as gamma2 grows.
  double prev = 1.0;
  for (double g2 : {30.0, 300.0, 3000.0}) {
    const double err = rel(measure_all(deep_quantum_solve(e, g2).rho).mrl1, limit_mrl1(e));
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("validity flag") {
  CHECK_FALSE(deep_quantum_limits(0.3).beyond_validity);
  const auto l = deep_quantum_limits(0.31);
  CHECK(l.beyond_validity);
  CHECK(l.mrl1 == limit_mrl1(0.31));
  CHECK(l.cfi == limit_cfi(0.31));
}
