#include "qsync/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "qsync/error.hpp"
#include "qsync/format.hpp"

namespace qsync {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{-i 2 pi j / M} for j = 0..M-1.
std::vector<cplx> twiddles(int m) {
  std::vector<cplx> tw(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) tw[static_cast<std::size_t>(j)] = std::polar(1.0, -kTwoPi * j / m);
  return tw;
}

}  // namespace

double PhaseDistribution::grid_step() const { return kTwoPi / grid_size(); }

double PhaseDistribution::angle(int k) const { return kTwoPi * k / grid_size(); }

double PhaseDistribution::density(double phi) const {
  double sum = fourier.empty() ? 0.0 : fourier[0].real();
  for (std::size_t n = 1; n < fourier.size(); ++n) {
    sum += 2.0 * (fourier[n] * std::polar(1.0, -static_cast<double>(n) * phi)).real();
  }
  return sum / kTwoPi;
}

double PhaseDistribution::derivative(double phi) const {
  double sum = 0.0;
  for (std::size_t n = 1; n < fourier.size(); ++n) {
    const double dn = static_cast<double>(n);
    sum += 2.0 * (cplx{0.0, -dn} * fourier[n] * std::polar(1.0, -dn * phi)).real();
  }
  return sum / kTwoPi;
}

std::vector<cplx> phase_fourier_coefficients(const ComplexMatrix& rho) {
  const auto dim = rho.rows();
  std::vector<cplx> c(static_cast<std::size_t>(dim), cplx{0.0, 0.0});
  for (Eigen::Index n = 0; n < dim; ++n) {
    cplx sum{0.0, 0.0};
    for (Eigen::Index m = 0; m + n < dim; ++m) sum += rho(m + n, m);
    c[static_cast<std::size_t>(n)] = sum;
  }
  return c;
}

PhaseDistribution phase_distribution_from_fourier(std::vector<cplx> fourier, int grid_size) {
  if (fourier.empty()) throw DimensionError("phase distribution needs at least c_0");
  if (grid_size < 4 * static_cast<int>(fourier.size())) {
    throw ResolutionError("phase grid of " + std::to_string(grid_size) + " points is below 4 x " +
                          std::to_string(fourier.size()) + " Fourier terms");
  }
  const auto tw = twiddles(grid_size);
  PhaseDistribution pd{std::move(fourier), std::vector<double>(static_cast<std::size_t>(grid_size))};
  for (int k = 0; k < grid_size; ++k) {
    double sum = pd.fourier[0].real();
    for (std::size_t n = 1; n < pd.fourier.size(); ++n) {
      const auto j = static_cast<std::size_t>((static_cast<long long>(n) * k) % grid_size);
      sum += 2.0 * (pd.fourier[n] * tw[j]).real();
    }
    pd.samples[static_cast<std::size_t>(k)] = sum / kTwoPi;
  }
  return pd;
}

PhaseDistribution phase_distribution(const DensityMatrix& rho, int grid_size) {
  return phase_distribution_from_fourier(phase_fourier_coefficients(rho.matrix()), grid_size);
}

PhaseCoherence phase_coherence(const DensityMatrix& rho, double vacuum_threshold) {
  const int dim = rho.dim();
  cplx mean_a{0.0, 0.0};
  double mean_n = 0.0;
  for (int n = 0; n < dim; ++n) {
    mean_n += n * rho(n, n).real();
    if (n + 1 < dim) mean_a += std::sqrt(static_cast<double>(n + 1)) * rho(n + 1, n);
  }
  if (!(mean_n > vacuum_threshold)) return {cplx{0.0, 0.0}, false};
  return {mean_a / std::sqrt(mean_n), true};
}

double s_peak(const PhaseDistribution& pdist) {
  const auto& y = pdist.samples;
  const int m = pdist.grid_size();
  const auto best = std::max_element(y.begin(), y.end());
  const int k = static_cast<int>(best - y.begin());
  const double y0 = y[static_cast<std::size_t>((k + m - 1) % m)];
  const double y1 = *best;
  const double y2 = y[static_cast<std::size_t>((k + 1) % m)];
  double peak = y1;
  const double curvature = y0 - 2.0 * y1 + y2;
  if (curvature < 0.0) {
    const double offset = 0.5 * (y0 - y2) / curvature;  // in grid steps, |offset| <= 1/2
    peak = std::max(peak, pdist.density(pdist.angle(k) + offset * pdist.grid_step()));
  }
  return kTwoPi * peak - 1.0;
}

double mrl(const PhaseDistribution& pdist, int order) {
  if (order < 1 || order >= static_cast<int>(pdist.fourier.size())) {
    throw OrderError("MRL order " + std::to_string(order) + " outside [1, " + std::to_string(pdist.fourier.size()) +
                     ")");
  }
  return std::abs(pdist.fourier[static_cast<std::size_t>(order)]);
}

EigenDecomposition eigen_decompose(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  if (es.info() != Eigen::Success) throw Error("Hermitian eigensolver did not converge");
  // Eigen returns ascending order.
  return {es.eigenvalues().reverse(), es.eigenvectors().rowwise().reverse()};
}

double qfi(const EigenDecomposition& eig, double cutoff) {
  const auto dim = eig.values.size();
  Eigen::VectorXd levels(dim);
  for (Eigen::Index n = 0; n < dim; ++n) levels(n) = static_cast<double>(n);
  // <k|a^dag a|l> in the eigenbasis.
  const ComplexMatrix gen = eig.vectors.adjoint() * levels.asDiagonal() * eig.vectors;

  double sum = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    for (Eigen::Index l = 0; l < dim; ++l) {
      const double s = eig.values(k) + eig.values(l);
      if (s <= cutoff) continue;
      const double d = eig.values(k) - eig.values(l);
      sum += d * d / s * std::norm(gen(k, l));
    }
  }
  return 2.0 * sum;
}

double qfi(const DensityMatrix& rho, double cutoff) { return qfi(eigen_decompose(rho), cutoff); }

FisherInformation cfi(const PhaseDistribution& pdist, double floor) {
  if (!(floor > 0.0)) throw DomainError("CFI floor must be positive");
  const int m = pdist.grid_size();
  const auto tw = twiddles(m);
  FisherInformation out;
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    double dp = 0.0;
    for (std::size_t n = 1; n < pdist.fourier.size(); ++n) {
      const auto j = static_cast<std::size_t>((static_cast<long long>(n) * k) % m);
      dp += 2.0 * (cplx{0.0, -static_cast<double>(n)} * pdist.fourier[n] * tw[j]).real();
    }
    dp /= kTwoPi;
    double p = pdist.samples[static_cast<std::size_t>(k)];
    if (p < floor) {
      p = floor;
      out.regularized = true;
    }
    sum += dp * dp / p;
  }
  out.value = sum * pdist.grid_step();
  return out;
}

MeasureSet measure_all(const DensityMatrix& rho, const MeasureConfig& config) {
  const PhaseDistribution pdist = phase_distribution(rho, config.grid_size);
  const EigenDecomposition eig = eigen_decompose(rho);
  const PhaseCoherence pc = phase_coherence(rho, config.vacuum_threshold);
  const FisherInformation fi = cfi(pdist, config.cfi_floor);

  MeasureSet ms;
  ms.s_pcoh_complex = pc.value;
  ms.s_pcoh = pc.magnitude();
  ms.s_pcoh_undefined = !pc.defined;
  ms.s_peak = s_peak(pdist);
  ms.mrl1 = mrl(pdist, 1);
  ms.mrl2 = rho.dim() > 2 ? mrl(pdist, 2) : 0.0;
  ms.qfi = qfi(eig, config.qfi_cutoff);
  ms.cfi = fi.value;
  ms.cfi_regularized = fi.regularized;
  return ms;
}

void write_phase_distribution_csv(const PhaseDistribution& pdist, std::ostream& out) {
  out << "phi,value\n";
  for (int k = 0; k < pdist.grid_size(); ++k) {
    out << format_double(pdist.angle(k)) << ',' << format_double(pdist.samples[static_cast<std::size_t>(k)]) << '\n';
  }
}

}  // namespace qsync
