#pragma once

#include <Eigen/Dense>
#include <complex>
#include <variant>
#include <vector>

#include "bbc/scalar.hpp"

namespace bbc::fock {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Pure single-mode state on photon numbers 0..cutoff.
class FockVector {
 public:
  // Amplitudes must already have unit norm (within 1e-10).
  explicit FockVector(CVector amps, double deficit = 0.0);
  // Rescales to unit norm.
  static FockVector normalized(CVector amps, double deficit = 0.0);
  static FockVector number(std::size_t n, std::size_t cutoff);
  static FockVector vacuum(std::size_t cutoff) { return number(0, cutoff); }

  const CVector& amplitudes() const noexcept { return amps_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  std::size_t cutoff() const noexcept { return dim() - 1; }
  // Norm lost to truncation before renormalization.
  double deficit() const noexcept { return deficit_; }
  double mean_photons() const;

 private:
  CVector amps_;
  double deficit_;
};

// Hermitian, unit-trace, positive semidefinite matrix. The spectrum is
// computed once at construction (it is needed for validation anyway) and
// reused by the entropy functionals.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix entries, double deficit = 0.0);

  static DensityMatrix pure(const FockVector& psi);
  static DensityMatrix diagonal(const ProbVector& p);

  const CMatrix& entries() const noexcept { return entries_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  // Eigenvalues, ascending, with values in [-1e-10, 0] clamped to 0.
  const Eigen::VectorXd& spectrum() const noexcept { return spectrum_; }
  double deficit() const noexcept { return deficit_; }
  double mean_photons() const;
  bool is_diagonal(double tol = 1e-14) const;

 private:
  CMatrix entries_;
  Eigen::VectorXd spectrum_;
  double deficit_;
};

// Two-mode density matrix, basis index n1 * dim_second + n2.
class TwoModeDensity {
 public:
  TwoModeDensity(DensityMatrix rho, std::size_t dim_first, std::size_t dim_second);
  static TwoModeDensity product(const DensityMatrix& first, const DensityMatrix& second);

  const DensityMatrix& rho() const noexcept { return rho_; }
  std::size_t dim_first() const noexcept { return dim_first_; }
  std::size_t dim_second() const noexcept { return dim_second_; }

 private:
  DensityMatrix rho_;
  std::size_t dim_first_;
  std::size_t dim_second_;
};

// Lossless beam splitter c = sqrt(eta) a + sqrt(1-eta) b,
// d = sqrt(1-eta) a - sqrt(eta) b, restricted to each total photon number N.
// Within block N both rows and columns are indexed by the photon count of
// the second mode (b on input, d on output), so basis element j is
// |N - j, j>. Block N+1 is built from block N by splitting one photon off
// both the input and the output; every coefficient stays bounded by 1.
class BeamSplitterBlocks {
 public:
  BeamSplitterBlocks(Transmissivity eta, std::size_t max_total);

  Transmissivity eta() const noexcept { return eta_; }
  std::size_t max_total() const noexcept { return blocks_.size() - 1; }
  const Eigen::MatrixXd& block(std::size_t total) const { return blocks_.at(total); }

 private:
  Transmissivity eta_;
  std::vector<Eigen::MatrixXd> blocks_;
};

BeamSplitterBlocks bs_blocks(Transmissivity eta, std::size_t max_total);

// Amplitude matrix psi(m1, m2) of a pure two-mode state.
using TwoModeAmplitudes = CMatrix;

// Output amplitudes for the product input |a> (x) |b>.
TwoModeAmplitudes apply_bs_pure(const CVector& a, const CVector& b, const BeamSplitterBlocks& blocks);

// U rho U^dagger. Output modes are sized to hold every photon of the input,
// so nothing is truncated: each output mode has dim_first + dim_second - 1
// levels.
TwoModeDensity apply_bs_density(const TwoModeDensity& rho, const BeamSplitterBlocks& blocks);

enum class Mode { first, second };
DensityMatrix reduce_mode(const TwoModeDensity& rho, Mode keep);

FockVector coherent_state(Complex alpha, std::size_t cutoff);
DensityMatrix thermal_density(MeanPhoton k, std::size_t cutoff, double tail_tol = kDefaultTailTolerance);
DensityMatrix displaced_thermal(Complex displacement, MeanPhoton k, std::size_t cutoff,
                                double tail_tol = kDefaultTailTolerance);

// Cutoff that keeps a thermal state's tail below tol.
std::size_t thermal_cutoff(double mean, double tail_tol = kDefaultTailTolerance);

double von_neumann_entropy(const DensityMatrix& rho);
double renyi_entropy(const DensityMatrix& rho, int order);

struct GridSpec {
  double radius;
  double spacing;
};
// Square grid centred on the origin that satisfies the coverage rule
// radius >= 3 (1 + sqrt(<n>)) with margin.
GridSpec default_grid(const DensityMatrix& rho);

struct WehrlResult {
  double entropy;      // nats
  double total_mass;   // integral of Q over the grid
  double error_estimate;
};
WehrlResult wehrl_entropy_numeric(const DensityMatrix& rho, const GridSpec& grid);
inline WehrlResult wehrl_entropy_numeric(const DensityMatrix& rho) {
  return wehrl_entropy_numeric(rho, default_grid(rho));
}

// Husimi function <alpha|rho|alpha> / pi.
double husimi(const DensityMatrix& rho, Complex alpha);

using ModeInput = std::variant<FockVector, DensityMatrix>;

// Mixes a fixed second-port state with arbitrary first-port states and
// keeps output mode c. Holds the beam-splitter blocks and the pure-state
// ensemble of the second input so repeated evaluations (annealing) only
// pay for the first-port dependence.
class OutputChannel {
 public:
  OutputChannel(const DensityMatrix& b_input, Transmissivity eta, std::size_t a_cutoff);

  DensityMatrix output(const ModeInput& a_input) const;
  std::size_t a_cutoff() const noexcept { return a_dim_ - 1; }

 private:
  struct Term {
    double weight;
    CVector state;
  };
  static std::vector<Term> ensemble(const DensityMatrix& rho);

  std::size_t a_dim_;
  std::vector<Term> b_terms_;
  BeamSplitterBlocks blocks_;
};

// State of output c = sqrt(eta) a + sqrt(1-eta) b. `cutoff` is the
// truncation the inputs were built with; the combined mean photon number
// must not exceed cutoff / 3.
DensityMatrix conj_output_state(const ModeInput& a_input, const DensityMatrix& b_input, Transmissivity eta,
                                std::size_t cutoff);

// |<phi|psi>|^2 for amplitude matrices of equal shape, both normalized.
double fidelity(const TwoModeAmplitudes& phi, const TwoModeAmplitudes& psi);

}  // namespace bbc::fock
