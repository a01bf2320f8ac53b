#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "bbc/scalar.hpp"

namespace bbc::gaussian {

// Quadrature covariance matrix of a zero-mean n-mode Gaussian state in
// (q1, p1, ..., qn, pn) ordering with q = (a + a^dagger)/sqrt(2). The
// vacuum is I/2. Construction checks symmetry and the uncertainty
// principle (every symplectic eigenvalue >= 1/2).
class CovMatrix {
 public:
  explicit CovMatrix(Eigen::MatrixXd entries);

  static CovMatrix vacuum(int modes = 1);
  static CovMatrix thermal(double mean, int modes = 1);
  // (mean + 1/2) diag(e^{2r}, e^{-2r})
  static CovMatrix squeezed_thermal(double mean, double squeeze);
  // Two-mode squeezed state built on two thermal modes of the same mean;
  // both symplectic eigenvalues stay mean + 1/2.
  static CovMatrix two_mode_squeezed_thermal(double mean, double squeeze);

  const Eigen::MatrixXd& matrix() const noexcept { return entries_; }
  int modes() const noexcept { return static_cast<int>(entries_.rows() / 2); }

 private:
  Eigen::MatrixXd entries_;
};

// Symplectic eigenvalues, descending. Accepts any even-dimensional
// symmetric matrix so it can also be used to validate candidates.
std::vector<double> symplectic_spectrum(const Eigen::MatrixXd& v);
inline std::vector<double> symplectic_spectrum(const CovMatrix& v) {
  return symplectic_spectrum(v.matrix());
}

// Von Neumann entropy in bits: sum of g(nu - 1/2).
double gaussian_entropy(const CovMatrix& v);

// Output mode c = sqrt(eta) a + sqrt(1 - eta) b for uncorrelated inputs,
// mode by mode.
CovMatrix bs_output_cov(const CovMatrix& va, const CovMatrix& vb, Transmissivity eta);

// Differential entropy (nats) of the Husimi function over the complex
// alpha plane, single mode.
double wehrl_entropy_gaussian(const CovMatrix& v);

enum class EntropyKind { von_neumann, wehrl };

struct SweepPoint {
  double squeeze;
  // bits for von_neumann, nats for wehrl
  double entropy;
};

// Vacuum on the first port, squeezed thermal of entropy g(K) on the
// second; output entropy of mode c for every squeeze parameter.
std::vector<SweepPoint> conjecture2_gaussian_sweep(Transmissivity eta, MeanPhoton k,
                                                   std::span<const double> squeezes,
                                                   EntropyKind kind = EntropyKind::von_neumann);

// Two b-modes in a two-mode squeezed thermal state (joint entropy 2 g(K)),
// each mixed with its own vacuum a-mode. Joint output entropy in bits.
std::vector<SweepPoint> strong_conj2_gaussian_check(Transmissivity eta, MeanPhoton k,
                                                    std::span<const double> squeezes);

std::vector<double> symmetric_grid(double half_width, std::size_t points);

}  // namespace bbc::gaussian
