#include "bbc/fock.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "bbc/errors.hpp"

namespace bbc::fock {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kEigenClamp = 1e-10;

CMatrix hermitize(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Coherent amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!) for n < dim,
// without renormalization.
CVector coherent_amplitudes(Complex alpha, std::size_t dim) {
  CVector amps(static_cast<Eigen::Index>(dim));
  amps(0) = std::exp(-0.5 * std::norm(alpha));
  for (Eigen::Index n = 1; n < amps.size(); ++n)
    amps(n) = amps(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return amps;
}

CMatrix annihilation(std::size_t dim) {
  CMatrix a = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index n = 1; n < a.rows(); ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

}  // namespace

// ---------------------------------------------------------------- states

FockVector::FockVector(CVector amps, double deficit) : amps_(std::move(amps)), deficit_(deficit) {
  if (amps_.size() == 0) throw DomainError("Fock vector must not be empty");
  if (std::abs(amps_.norm() - 1.0) > 1e-10) throw DomainError("Fock vector must have unit norm");
}

FockVector FockVector::normalized(CVector amps, double deficit) {
  const double norm = amps.norm();
  if (!(norm > 0.0)) throw DomainError("cannot normalize a zero vector");
  amps /= norm;
  return FockVector(std::move(amps), deficit);
}

FockVector FockVector::number(std::size_t n, std::size_t cutoff) {
  if (n > cutoff) throw DomainError("number state beyond cutoff");
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(cutoff + 1));
  amps(static_cast<Eigen::Index>(n)) = 1.0;
  return FockVector(std::move(amps));
}

double FockVector::mean_photons() const {
  double m = 0.0;
  for (Eigen::Index n = 0; n < amps_.size(); ++n) m += static_cast<double>(n) * std::norm(amps_(n));
  return m;
}

DensityMatrix::DensityMatrix(CMatrix entries, double deficit) : entries_(std::move(entries)), deficit_(deficit) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
    throw DomainError("density matrix must be square and nonempty");
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw PhysicalityError("density matrix is not Hermitian");
  const Complex tr = entries_.trace();
  if (std::abs(tr - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "density matrix trace " << tr.real() << " differs from 1";
    throw PhysicalityError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw PhysicalityError("density matrix eigen solve failed");
  spectrum_ = solver.eigenvalues();
  if (spectrum_(0) < -kEigenClamp) {
    std::ostringstream os;
    os << "density matrix has eigenvalue " << spectrum_(0) << " below -1e-10";
    throw PhysicalityError(os.str());
  }
  for (Eigen::Index i = 0; i < spectrum_.size(); ++i) spectrum_(i) = std::max(0.0, spectrum_(i));
}

DensityMatrix DensityMatrix::pure(const FockVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.deficit());
}

DensityMatrix DensityMatrix::diagonal(const ProbVector& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = p[static_cast<std::size_t>(i)];
  return DensityMatrix(std::move(m), p.tail_mass());
}

double DensityMatrix::mean_photons() const {
  double m = 0.0;
  for (Eigen::Index n = 0; n < entries_.rows(); ++n) m += static_cast<double>(n) * entries_(n, n).real();
  return m;
}

bool DensityMatrix::is_diagonal(double tol) const {
  for (Eigen::Index j = 0; j < entries_.cols(); ++j)
    for (Eigen::Index i = 0; i < entries_.rows(); ++i)
      if (i != j && std::abs(entries_(i, j)) > tol) return false;
  return true;
}

TwoModeDensity::TwoModeDensity(DensityMatrix rho, std::size_t dim_first, std::size_t dim_second)
    : rho_(std::move(rho)), dim_first_(dim_first), dim_second_(dim_second) {
  if (dim_first * dim_second != rho_.dim()) throw DomainError("two-mode dimensions do not match the matrix");
}

TwoModeDensity TwoModeDensity::product(const DensityMatrix& first, const DensityMatrix& second) {
  const auto d1 = static_cast<Eigen::Index>(first.dim());
  const auto d2 = static_cast<Eigen::Index>(second.dim());
  CMatrix m(d1 * d2, d1 * d2);
  for (Eigen::Index i = 0; i < d1; ++i)
    for (Eigen::Index j = 0; j < d1; ++j) m.block(i * d2, j * d2, d2, d2) = first.entries()(i, j) * second.entries();
  return TwoModeDensity(DensityMatrix(hermitize(m), first.deficit() + second.deficit()), first.dim(), second.dim());
}

// ------------------------------------------------------- beam splitter

BeamSplitterBlocks::BeamSplitterBlocks(Transmissivity eta, std::size_t max_total) : eta_(eta) {
  // Single-photon amplitudes <out|u|in>: a -> t c + r d, b -> r c - t d.
  const double t = std::sqrt(eta.value());
  const double r = std::sqrt(eta.complement());
  const double c_from_a = t, c_from_b = r, d_from_a = r, d_from_b = -t;

  blocks_.reserve(max_total + 1);
  blocks_.push_back(Eigen::MatrixXd::Ones(1, 1));
  // Split one photon off both the input and the output symmetric states:
  // |n, N+1-n> = sqrt(n/(N+1)) |n-1, N+1-n>|a> + sqrt((N+1-n)/(N+1)) |n, N-n>|b>.
  // Every coefficient is bounded by one, so errors do not grow with N.
  for (std::size_t prev_total = 0; prev_total < max_total; ++prev_total) {
    const auto n_prev = static_cast<Eigen::Index>(prev_total);
    const Eigen::Index total = n_prev + 1;
    const Eigen::MatrixXd& prev = blocks_.back();
    // prev indexed by second-mode counts; amp(m, n) uses first-mode counts.
    const auto amp = [&](Eigen::Index m, Eigen::Index n) {
      if (m < 0 || n < 0 || m > n_prev || n > n_prev) return 0.0;
      return prev(n_prev - m, n_prev - n);
    };
    const double scale = 1.0 / static_cast<double>(total);
    Eigen::MatrixXd next(total + 1, total + 1);
    for (Eigen::Index m = 0; m <= total; ++m) {
      for (Eigen::Index n = 0; n <= total; ++n) {
        const double dm = static_cast<double>(m), dn = static_cast<double>(n);
        const double em = static_cast<double>(total - m), en = static_cast<double>(total - n);
        const double v = std::sqrt(dm * dn) * c_from_a * amp(m - 1, n - 1) +
                         std::sqrt(dm * en) * c_from_b * amp(m - 1, n) +
                         std::sqrt(em * dn) * d_from_a * amp(m, n - 1) +
                         std::sqrt(em * en) * d_from_b * amp(m, n);
        next(total - m, total - n) = scale * v;
      }
    }
    blocks_.push_back(std::move(next));
  }
}

BeamSplitterBlocks bs_blocks(Transmissivity eta, std::size_t max_total) {
  return BeamSplitterBlocks(eta, max_total);
}

TwoModeAmplitudes apply_bs_pure(const CVector& a, const CVector& b, const BeamSplitterBlocks& blocks) {
  const auto da = a.size();
  const auto db = b.size();
  const Eigen::Index max_total = da + db - 2;
  if (static_cast<std::size_t>(max_total) > blocks.max_total())
    throw DomainError("beam-splitter blocks do not cover the input photon numbers");
  TwoModeAmplitudes out = TwoModeAmplitudes::Zero(max_total + 1, max_total + 1);
  for (Eigen::Index total = 0; total <= max_total; ++total) {
    const auto& block = blocks.block(static_cast<std::size_t>(total));
    const Eigen::Index j_lo = std::max<Eigen::Index>(0, total - da + 1);
    const Eigen::Index j_hi = std::min<Eigen::Index>(total, db - 1);
    for (Eigen::Index j = j_lo; j <= j_hi; ++j) {
      const Complex x = a(total - j) * b(j);
      if (x == Complex(0.0)) continue;
      for (Eigen::Index i = 0; i <= total; ++i) out(total - i, i) += block(i, j) * x;
    }
  }
  return out;
}

TwoModeDensity apply_bs_density(const TwoModeDensity& rho, const BeamSplitterBlocks& blocks) {
  const auto d1 = static_cast<Eigen::Index>(rho.dim_first());
  const auto d2 = static_cast<Eigen::Index>(rho.dim_second());
  const Eigen::Index max_total = d1 + d2 - 2;
  if (static_cast<std::size_t>(max_total) > blocks.max_total())
    throw DomainError("beam-splitter blocks do not cover the input photon numbers");
  const Eigen::Index dout = max_total + 1;
  // Dense isometry from the input basis into the enlarged output basis.
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dout * dout, d1 * d2);
  for (Eigen::Index n1 = 0; n1 < d1; ++n1) {
    for (Eigen::Index n2 = 0; n2 < d2; ++n2) {
      const Eigen::Index total = n1 + n2;
      const auto& block = blocks.block(static_cast<std::size_t>(total));
      for (Eigen::Index i = 0; i <= total; ++i) u((total - i) * dout + i, n1 * d2 + n2) = block(i, n2);
    }
  }
  const CMatrix uc = u.cast<Complex>();
  CMatrix out = uc * rho.rho().entries() * uc.adjoint();
  return TwoModeDensity(DensityMatrix(hermitize(out), rho.rho().deficit()), static_cast<std::size_t>(dout),
                        static_cast<std::size_t>(dout));
}

DensityMatrix reduce_mode(const TwoModeDensity& rho, Mode keep) {
  const auto d1 = static_cast<Eigen::Index>(rho.dim_first());
  const auto d2 = static_cast<Eigen::Index>(rho.dim_second());
  const CMatrix& m = rho.rho().entries();
  CMatrix out;
  if (keep == Mode::first) {
    out = CMatrix::Zero(d1, d1);
    for (Eigen::Index i = 0; i < d1; ++i)
      for (Eigen::Index j = 0; j < d1; ++j)
        for (Eigen::Index k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
  } else {
    out = CMatrix::Zero(d2, d2);
    for (Eigen::Index i = 0; i < d2; ++i)
      for (Eigen::Index j = 0; j < d2; ++j)
        for (Eigen::Index k = 0; k < d1; ++k) out(i, j) += m(k * d2 + i, k * d2 + j);
  }
  return DensityMatrix(hermitize(out), rho.rho().deficit());
}

// ------------------------------------------------------- constructors

FockVector coherent_state(Complex alpha, std::size_t cutoff) {
  const double mean = std::norm(alpha);
  const std::size_t need =
      std::max(static_cast<std::size_t>(std::ceil(4.0 * mean)), required_cutoff(Poisson{mean}));
  if (4.0 * mean > static_cast<double>(cutoff)) {
    std::ostringstream os;
    os << "coherent state with |alpha|^2 = " << mean << " needs cutoff >= " << need;
    throw TruncationError(os.str(), need);
  }
  CVector amps = coherent_amplitudes(alpha, cutoff + 1);
  const double deficit = std::max(0.0, 1.0 - amps.squaredNorm());
  if (deficit >= kDefaultTailTolerance) {
    std::ostringstream os;
    os << "coherent state truncation deficit " << deficit << " at cutoff " << cutoff << "; cutoff " << need
       << " is required";
    throw TruncationError(os.str(), need);
  }
  return FockVector::normalized(std::move(amps), deficit);
}

std::size_t thermal_cutoff(double mean, double tail_tol) { return required_cutoff(BoseEinstein{mean}, tail_tol); }

DensityMatrix thermal_density(MeanPhoton k, std::size_t cutoff, double tail_tol) {
  return DensityMatrix::diagonal(make_distribution(BoseEinstein{k.value()}, cutoff, tail_tol));
}

DensityMatrix displaced_thermal(Complex displacement, MeanPhoton k, std::size_t cutoff, double tail_tol) {
  const double mean = std::norm(displacement) + k.value();
  if (4.0 * mean > static_cast<double>(cutoff)) {
    const auto need = static_cast<std::size_t>(std::ceil(4.0 * mean));
    std::ostringstream os;
    os << "displaced thermal state with mean " << mean << " needs cutoff >= " << need;
    throw TruncationError(os.str(), need);
  }
  const DensityMatrix thermal = thermal_density(k, cutoff, tail_tol);
  const CMatrix a = annihilation(cutoff + 1);
  const CMatrix generator = displacement * a.adjoint() - std::conj(displacement) * a;
  const CMatrix u = generator.exp();
  const CMatrix rho = hermitize(u * thermal.entries() * u.adjoint());
  return DensityMatrix(rho / rho.trace().real(), thermal.deficit());
}

// ------------------------------------------------------- entropies

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : rho.spectrum()) {
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s / kLn2;
}

double renyi_entropy(const DensityMatrix& rho, int order) {
  if (order < 2) throw DomainError("Renyi entropy order must be an integer >= 2");
  double trace = 0.0;
  for (double lambda : rho.spectrum()) trace += std::pow(lambda, order);
  return std::log2(trace) / (1.0 - order);
}

double husimi(const DensityMatrix& rho, Complex alpha) {
  const CVector c = coherent_amplitudes(alpha, rho.dim());
  return (c.adjoint() * rho.entries() * c)(0).real() / std::numbers::pi;
}

GridSpec default_grid(const DensityMatrix& rho) {
  return {3.0 * (1.0 + std::sqrt(std::max(0.0, rho.mean_photons()))) + 3.0, 0.1};
}

WehrlResult wehrl_entropy_numeric(const DensityMatrix& rho, const GridSpec& grid) {
  const double min_radius = 3.0 * (1.0 + std::sqrt(std::max(0.0, rho.mean_photons())));
  if (grid.radius < min_radius) {
    std::ostringstream os;
    os << "Wehrl grid radius " << grid.radius << " below the required " << min_radius;
    throw DomainError(os.str());
  }
  if (!(grid.spacing > 0.0) || grid.spacing > 0.1) throw DomainError("Wehrl grid spacing must lie in (0, 0.1]");

  // Even interval count so every other node forms the coarse grid.
  auto intervals = static_cast<Eigen::Index>(std::ceil(2.0 * grid.radius / grid.spacing));
  if (intervals % 2 != 0) ++intervals;
  const double h = 2.0 * grid.radius / static_cast<double>(intervals);
  const auto dim = static_cast<Eigen::Index>(rho.dim());

  // Factor c_n(x + iy) = e^{-(x^2+y^2)/2} (x+iy)^n / sqrt(n!) and evaluate
  // the quadratic form row by row.
  const CMatrix& m = rho.entries();
  double mass_fine = 0.0, ent_fine = 0.0, mass_coarse = 0.0, ent_coarse = 0.0;
  CVector c(dim);
  for (Eigen::Index iy = 0; iy <= intervals; ++iy) {
    const double y = -grid.radius + h * static_cast<double>(iy);
    const double wy = (iy == 0 || iy == intervals) ? 0.5 : 1.0;
    for (Eigen::Index ix = 0; ix <= intervals; ++ix) {
      const double x = -grid.radius + h * static_cast<double>(ix);
      const double wx = (ix == 0 || ix == intervals) ? 0.5 : 1.0;
      const Complex alpha(x, y);
      c(0) = std::exp(-0.5 * std::norm(alpha));
      for (Eigen::Index n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
      const double q = std::max(0.0, (c.adjoint() * m * c)(0).real() / std::numbers::pi);
      const double f = q > 0.0 ? -q * std::log(q) : 0.0;
      mass_fine += wx * wy * q;
      ent_fine += wx * wy * f;
      if (ix % 2 == 0 && iy % 2 == 0) {
        const double cwx = (ix == 0 || ix == intervals) ? 0.5 : 1.0;
        const double cwy = (iy == 0 || iy == intervals) ? 0.5 : 1.0;
        mass_coarse += cwx * cwy * q;
        ent_coarse += cwx * cwy * f;
      }
    }
  }
  mass_fine *= h * h;
  ent_fine *= h * h;
  mass_coarse *= 4.0 * h * h;
  ent_coarse *= 4.0 * h * h;
  if (mass_fine < 1.0 - 1e-4) {
    std::ostringstream os;
    os << "Husimi mass on the grid is " << mass_fine << "; enlarge the grid";
    throw CoverageError(os.str());
  }
  return {ent_fine, mass_fine, std::abs(ent_fine - ent_coarse) + std::abs(1.0 - mass_fine)};
}

// ------------------------------------------------------- channel output

std::vector<OutputChannel::Term> OutputChannel::ensemble(const DensityMatrix& rho) {
  std::vector<Term> terms;
  const auto dim = static_cast<Eigen::Index>(rho.dim());
  if (rho.is_diagonal()) {
    for (Eigen::Index n = 0; n < dim; ++n) {
      const double w = rho.entries()(n, n).real();
      if (w <= 0.0) continue;
      CVector e = CVector::Zero(dim);
      e(n) = 1.0;
      terms.push_back({w, std::move(e)});
    }
    return terms;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.entries());
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double w = solver.eigenvalues()(k);
    if (w <= 1e-15) continue;
    terms.push_back({w, solver.eigenvectors().col(k)});
  }
  return terms;
}

OutputChannel::OutputChannel(const DensityMatrix& b_input, Transmissivity eta, std::size_t a_cutoff)
    : a_dim_(a_cutoff + 1), b_terms_(ensemble(b_input)), blocks_(eta, a_cutoff + b_input.dim() - 1) {}

DensityMatrix OutputChannel::output(const ModeInput& a_input) const {
  std::vector<Term> a_terms;
  double deficit = 0.0;
  if (const auto* psi = std::get_if<FockVector>(&a_input)) {
    a_terms.push_back({1.0, psi->amplitudes()});
    deficit = psi->deficit();
  } else {
    const auto& rho = std::get<DensityMatrix>(a_input);
    a_terms = ensemble(rho);
    deficit = rho.deficit();
  }
  for (const auto& t : a_terms) {
    if (static_cast<std::size_t>(t.state.size()) != a_dim_)
      throw DomainError("first-port state does not match the channel's cutoff");
  }
  const Eigen::Index dout = static_cast<Eigen::Index>(blocks_.max_total()) + 1;
  CMatrix rho_c = CMatrix::Zero(dout, dout);
  for (const auto& ta : a_terms) {
    for (const auto& tb : b_terms_) {
      const TwoModeAmplitudes psi = apply_bs_pure(ta.state, tb.state, blocks_);
      rho_c.noalias() += (ta.weight * tb.weight) * (psi * psi.adjoint());
    }
  }
  rho_c = hermitize(rho_c);
  rho_c /= rho_c.trace().real();
  return DensityMatrix(std::move(rho_c), deficit);
}

DensityMatrix conj_output_state(const ModeInput& a_input, const DensityMatrix& b_input, Transmissivity eta,
                                std::size_t cutoff) {
  const double mean_a = std::visit([](const auto& s) { return s.mean_photons(); }, a_input);
  const double mean = mean_a + b_input.mean_photons();
  if (3.0 * mean > static_cast<double>(cutoff)) {
    const auto need = static_cast<std::size_t>(std::ceil(3.0 * mean));
    std::ostringstream os;
    os << "combined mean photon number " << mean << " needs cutoff >= " << need;
    throw TruncationError(os.str(), need);
  }
  const std::size_t a_dim = std::visit([](const auto& s) { return s.dim(); }, a_input);
  return OutputChannel(b_input, eta, a_dim - 1).output(a_input);
}

double fidelity(const TwoModeAmplitudes& phi, const TwoModeAmplitudes& psi) {
  if (phi.rows() != psi.rows() || phi.cols() != psi.cols()) throw DomainError("fidelity: shape mismatch");
  const Complex overlap = (phi.conjugate().cwiseProduct(psi)).sum();
  return std::norm(overlap);
}

}  // namespace bbc::fock
