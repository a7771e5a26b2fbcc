#include "qsync/hilbert.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "qsync/error.hpp"

namespace qsync {

namespace {

struct FieldRef {
  const char* name;
  double OscillatorParams::*member;
};

constexpr std::array<FieldRef, 8> kFields{{
    {"delta", &OscillatorParams::delta},
    {"drive", &OscillatorParams::drive},
    {"eta", &OscillatorParams::eta},
    {"phi", &OscillatorParams::phi},
    {"gamma1", &OscillatorParams::gamma1},
    {"gamma2", &OscillatorParams::gamma2},
    {"gamma3", &OscillatorParams::gamma3},
    {"white_noise", &OscillatorParams::white_noise},
}};

const FieldRef& find_field(const std::string& name) {
  for (const auto& f : kFields) {
    if (name == f.name) return f;
  }
  throw DomainError("unknown oscillator parameter '" + name + "'");
}

}  // namespace

void OscillatorParams::validate() const {
  for (const auto& f : kFields) {
    if (!std::isfinite(this->*(f.member))) {
      throw DomainError(std::string(f.name) + " must be finite");
    }
  }
  if (drive < 0.0) throw DomainError("drive must be nonnegative");
  if (eta < 0.0) throw DomainError("eta must be nonnegative");
  if (phi < 0.0 || phi >= 2.0 * std::numbers::pi) throw DomainError("phi must lie in [0, 2pi)");
  if (!(gamma1 > 0.0)) throw DomainError("gamma1 must be positive");
  if (gamma2 < 0.0) throw DomainError("gamma2 must be nonnegative");
  if (gamma3 < 0.0) throw DomainError("gamma3 must be nonnegative");
  if (white_noise < 0.0 || white_noise > 1.0) throw DomainError("white_noise must lie in [0, 1]");
  if (fock_dim != 0 && fock_dim < 3) throw DomainError("fock_dim must be >= 3 (or 0 for automatic)");
}

bool is_param_name(const std::string& name) {
  for (const auto& f : kFields) {
    if (name == f.name) return true;
  }
  return false;
}

double get_param(const OscillatorParams& params, const std::string& name) {
  return params.*(find_field(name).member);
}

void set_param(OscillatorParams& params, const std::string& name, double value) {
  params.*(find_field(name).member) = value;
}

ComplexMatrix annihilation(int dim) {
  if (dim < 2) throw DimensionError("annihilation operator needs dim >= 2");
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ComplexMatrix number_operator(int dim) {
  if (dim < 2) throw DimensionError("number operator needs dim >= 2");
  ComplexMatrix n = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

ComplexMatrix hamiltonian(const OscillatorParams& params) {
  params.validate();
  const int dim = params.fock_dim;
  if (dim < 3) throw DimensionError("hamiltonian needs a resolved fock_dim >= 3");

  constexpr cplx i{0.0, 1.0};
  const ComplexMatrix a = annihilation(dim);
  const ComplexMatrix ad = a.adjoint();
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix ad2 = ad * ad;
  const cplx squeeze_phase = std::polar(1.0, 2.0 * params.phi);

  ComplexMatrix h = params.delta * number_operator(dim);
  h += i * params.drive * (a - ad);
  h += i * params.eta * (ad2 * squeeze_phase - a2 * std::conj(squeeze_phase));
  return h;
}

}  // namespace qsync
