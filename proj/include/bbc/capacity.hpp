#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bbc/fock.hpp"
#include "bbc/scalar.hpp"

namespace bbc::capacity {

// Rates in bits per channel use.
struct RatePoint {
  double rb;
  double rc;
};

enum class Detection { ultimate, homodyne, heterodyne };
std::string_view detection_name(Detection d);

struct CurvePoint {
  double beta;
  RatePoint rate;
};

// Boundary of a broadcast region sampled along the power split beta.
// Construction checks beta strictly increasing in [0, 1], rb
// nondecreasing and rc nonincreasing.
class RegionCurve {
 public:
  RegionCurve(Detection detection, double eta, double nbar, std::vector<CurvePoint> points);

  Detection detection() const noexcept { return detection_; }
  double eta() const noexcept { return eta_; }
  double nbar() const noexcept { return nbar_; }
  const std::vector<CurvePoint>& points() const noexcept { return points_; }
  std::vector<RatePoint> rates() const;

 private:
  Detection detection_;
  double eta_;
  double nbar_;
  std::vector<CurvePoint> points_;
};

inline constexpr std::size_t kDefaultBetaPoints = 201;

// Uniform grid on [0, 1] with both endpoints.
std::vector<double> beta_grid(std::size_t points = kDefaultBetaPoints);

// All three throw DegradednessError when eta <= 1/2.
RegionCurve broadcast_region_ultimate(Transmissivity eta, MeanPhoton nbar, std::span<const double> betas);
RegionCurve broadcast_region_homodyne(Transmissivity eta, MeanPhoton nbar, std::span<const double> betas);
RegionCurve broadcast_region_heterodyne(Transmissivity eta, MeanPhoton nbar, std::span<const double> betas);
RegionCurve broadcast_region(Detection detection, Transmissivity eta, MeanPhoton nbar,
                             std::span<const double> betas);

// S(sum p_i rho_i) - sum p_i S(rho_i), bits.
double holevo_information(std::span<const double> priors, const std::vector<fock::DensityMatrix>& states);

struct CoherentSample {
  std::complex<double> t;
  double bob_conditional;      // entropy of Bob's state given t
  double charlie_conditional;  // entropy of Charlie's state given t
};

struct CoherentRegionReport {
  double eta;
  double nbar;
  double beta;
  std::size_t cutoff;
  std::uint64_t seed;
  double bob_expected;                // g(eta beta N)
  double charlie_expected;            // g((1 - eta) N)
  double charlie_conditional_expected;  // g((1 - eta) beta N)
  double charlie_entropy;
  std::vector<CoherentSample> samples;
  double max_residual;
  double threshold;
  bool passed;
};

// Rebuilds the single-use coherent-state encoding in Fock space and checks
// every entropy in the rate expressions against its closed form. Sample k
// draws t from its own generator seeded by (seed, k).
CoherentRegionReport verify_coherent_region_numeric(Transmissivity eta, MeanPhoton nbar, double beta,
                                                    std::size_t cutoff, std::size_t t_samples,
                                                    std::uint64_t seed, double threshold = 1e-4);

struct MacRegion {
  double eta;
  double n1;
  double n2;
  double r1_max;
  double r2_max;
  double sum_max;

  // (r1_max, sum - r1_max) and (sum - r2_max, r2_max)
  RatePoint corner_first() const { return {r1_max, sum_max - r1_max}; }
  RatePoint corner_second() const { return {sum_max - r2_max, r2_max}; }
};

MacRegion mac_region_coherent(Transmissivity eta, MeanPhoton n1, MeanPhoton n2);

enum class MacConstraint { total_transmit, total_receive, per_user };
std::string_view constraint_name(MacConstraint c);

struct Envelope {
  double eta;
  double nbar;
  MacConstraint constraint;
  std::vector<MacRegion> regions;
  // Pareto frontier, rb (R1) increasing and rc (R2) decreasing.
  std::vector<RatePoint> points;
};

// Sweeps steps + 1 power allocations (a single one for per_user).
Envelope mac_envelope(Transmissivity eta, MeanPhoton nbar, MacConstraint constraint = MacConstraint::total_transmit,
                      std::size_t steps = 200);

struct Dominance {
  bool dominates;
  // Smallest (outer height - inner rc) over the inner points.
  double worst_margin;
  // Inner point that is not covered, when dominates is false.
  std::optional<RatePoint> witness;
};

// Outer boundary is read as the lower-left closure of its points with
// linear interpolation between neighbours.
Dominance region_dominates(std::span<const RatePoint> outer, std::span<const RatePoint> inner,
                           double tolerance = 1e-9);

// Rate r where the boundary crosses rb = rc.
double equal_rate_point(std::span<const RatePoint> boundary);

}  // namespace bbc::capacity
