#include "bbc/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bbc/errors.hpp"

namespace bbc::gaussian {

namespace {

constexpr double kPhysicalityTol = 1e-10;

void check_shape(const Eigen::MatrixXd& v) {
  if (v.rows() != v.cols()) throw DomainError("covariance matrix must be square");
  if (v.rows() == 0 || v.rows() % 2 != 0) throw DomainError("covariance matrix needs even dimension 2n");
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError("covariance matrix must be symmetric");
}

Eigen::MatrixXd symplectic_form(Eigen::Index modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (Eigen::Index k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

}  // namespace

CovMatrix::CovMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  const auto nu = symplectic_spectrum(entries_);
  if (nu.back() < 0.5 - kPhysicalityTol) {
    std::ostringstream os;
    os << "covariance matrix violates the uncertainty principle: symplectic eigenvalue " << nu.back()
       << " < 1/2";
    throw PhysicalityError(os.str());
  }
}

CovMatrix CovMatrix::vacuum(int modes) { return thermal(0.0, modes); }

CovMatrix CovMatrix::thermal(double mean, int modes) {
  if (!(mean >= 0.0)) throw DomainError("thermal mean photon number must be >= 0");
  if (modes < 1) throw DomainError("at least one mode required");
  return CovMatrix((mean + 0.5) * Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

CovMatrix CovMatrix::squeezed_thermal(double mean, double squeeze) {
  if (!(mean >= 0.0)) throw DomainError("thermal mean photon number must be >= 0");
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(2, 2);
  v(0, 0) = (mean + 0.5) * std::exp(2.0 * squeeze);
  v(1, 1) = (mean + 0.5) * std::exp(-2.0 * squeeze);
  return CovMatrix(std::move(v));
}

CovMatrix CovMatrix::two_mode_squeezed_thermal(double mean, double squeeze) {
  if (!(mean >= 0.0)) throw DomainError("thermal mean photon number must be >= 0");
  const double nu = mean + 0.5;
  const double c = std::cosh(2.0 * squeeze);
  const double s = std::sinh(2.0 * squeeze);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 4);
  v.diagonal().setConstant(nu * c);
  // Correlations +s on q1q2 and -s on p1p2.
  v(0, 2) = v(2, 0) = nu * s;
  v(1, 3) = v(3, 1) = -nu * s;
  return CovMatrix(std::move(v));
}

std::vector<double> symplectic_spectrum(const Eigen::MatrixXd& v) {
  check_shape(v);
  const Eigen::Index modes = v.rows() / 2;
  if (modes == 1) {
    const double det = v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0);
    if (!(det > 0.0)) throw PhysicalityError("covariance matrix is not positive definite");
    return {std::sqrt(det)};
  }
  const Eigen::MatrixXcd m = std::complex<double>(0.0, 1.0) * (symplectic_form(modes) * v).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success) throw DomainError("symplectic eigenvalue solve failed");
  std::vector<double> moduli;
  moduli.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) moduli.push_back(std::abs(solver.eigenvalues()(i)));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  // Eigenvalues of i Omega V come in +/- nu pairs.
  std::vector<double> nu;
  for (std::size_t i = 0; i < moduli.size(); i += 2) nu.push_back(0.5 * (moduli[i] + moduli[i + 1]));
  return nu;
}

double gaussian_entropy(const CovMatrix& v) {
  double s = 0.0;
  for (double nu : symplectic_spectrum(v)) s += g_of(std::max(0.0, nu - 0.5));
  return s;
}

CovMatrix bs_output_cov(const CovMatrix& va, const CovMatrix& vb, Transmissivity eta) {
  if (va.matrix().rows() != vb.matrix().rows())
    throw DomainError("beam-splitter inputs must have the same number of modes");
  return CovMatrix(eta.value() * va.matrix() + eta.complement() * vb.matrix());
}

double wehrl_entropy_gaussian(const CovMatrix& v) {
  if (v.modes() != 1) throw DomainError("wehrl_entropy_gaussian expects a single mode");
  // Husimi covariance in (Re alpha, Im alpha): (V + I/2) / 2.
  const Eigen::Matrix2d q = 0.5 * (v.matrix() + 0.5 * Eigen::MatrixXd::Identity(2, 2));
  const double two_pi_e = 2.0 * std::numbers::pi * std::numbers::e;
  return 0.5 * std::log(two_pi_e * two_pi_e * q.determinant());
}

std::vector<SweepPoint> conjecture2_gaussian_sweep(Transmissivity eta, MeanPhoton k,
                                                   std::span<const double> squeezes, EntropyKind kind) {
  std::vector<SweepPoint> table;
  table.reserve(squeezes.size());
  const auto vac = CovMatrix::vacuum();
  for (double r : squeezes) {
    const auto out = bs_output_cov(vac, CovMatrix::squeezed_thermal(k.value(), r), eta);
    const double s = kind == EntropyKind::von_neumann ? gaussian_entropy(out) : wehrl_entropy_gaussian(out);
    table.push_back({r, s});
  }
  return table;
}

std::vector<SweepPoint> strong_conj2_gaussian_check(Transmissivity eta, MeanPhoton k,
                                                    std::span<const double> squeezes) {
  std::vector<SweepPoint> table;
  table.reserve(squeezes.size());
  const auto vac = CovMatrix::vacuum(2);
  for (double r : squeezes) {
    const auto out = bs_output_cov(vac, CovMatrix::two_mode_squeezed_thermal(k.value(), r), eta);
    table.push_back({r, gaussian_entropy(out)});
  }
  return table;
}

std::vector<double> symmetric_grid(double half_width, std::size_t points) {
  if (points < 1) throw DomainError("grid needs at least one point");
  if (points == 1) return {0.0};
  std::vector<double> grid(points);
  const double step = 2.0 * half_width / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    // Mirror the two halves so the grid is exactly symmetric and odd grids hit 0.
    const double x = -half_width + step * static_cast<double>(i);
    grid[i] = x;
  }
  for (std::size_t i = 0; i < points / 2; ++i) grid[points - 1 - i] = -grid[i];
  if (points % 2 == 1) grid[points / 2] = 0.0;
  return grid;
}

}  // namespace bbc::gaussian
