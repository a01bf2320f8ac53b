#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace bbc {

inline constexpr double kDefaultTailTolerance = 1e-10;

// Mean photon number per mode per channel use.
class MeanPhoton {
 public:
  explicit MeanPhoton(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

// Beam-splitter power transmissivity from the first input to the first
// output. The loss parameter seen by the second input is 1 - eta.
class Transmissivity {
 public:
  explicit Transmissivity(double eta);
  double value() const noexcept { return eta_; }
  double complement() const noexcept { return 1.0 - eta_; }
  bool degraded() const noexcept { return eta_ > 0.5; }

 private:
  double eta_;
};

// Finite photon-count distribution over 0..cutoff. Always normalized; the
// mass that truncation removed before renormalization is kept as
// tail_mass() so callers can judge how faithful the cutoff is.
class ProbVector {
 public:
  // Takes already-normalized probabilities (sum within 1e-12 of one).
  explicit ProbVector(std::vector<double> probs, double tail_mass = 0.0);

  // Rescales nonnegative weights to unit sum.
  static ProbVector normalized(std::vector<double> weights, double tail_mass = 0.0);

  static ProbVector delta(std::size_t n, std::size_t cutoff);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  std::size_t cutoff() const noexcept { return probs_.size() - 1; }
  double operator[](std::size_t n) const { return probs_[n]; }
  double tail_mass() const noexcept { return tail_mass_; }
  double mean() const;

 private:
  std::vector<double> probs_;
  double tail_mass_;
};

struct Poisson {
  double lambda;
};
struct Binomial {
  int trials;
  double p;
};
struct BoseEinstein {
  double mean;
};
using Family = std::variant<Poisson, Binomial, BoseEinstein>;

std::string_view family_name(const Family& family);

// g(x) = (1+x) log2(1+x) - x log2 x, the entropy of a thermal state of
// mean photon number x. g(0) = 0.
double g_of(double x);

// Inverse of g_of on [0, inf); |g_of(result) - y| < 1e-12.
double g_inverse(double y);

// -sum p log2 p with 0 log 0 = 0. Accepts unnormalized input as given.
double entropy_bits(std::span<const double> probs);
double shannon_entropy(const ProbVector& p);

// Smallest cutoff D such that the family's mass beyond D is below tol.
std::size_t required_cutoff(const Family& family, double tail_tol = kDefaultTailTolerance);

// Truncate at cutoff and renormalize. Throws TruncationError (carrying the
// required cutoff) when the dropped mass is not below tail_tol.
ProbVector make_distribution(const Family& family, std::size_t cutoff,
                             double tail_tol = kDefaultTailTolerance);

// Binomial thinning: every photon survives independently with
// probability tau.
ProbVector thin(const ProbVector& p, double tau);

// Parameter of `shape`'s family (lambda, p with trials fixed, or mean)
// whose distribution at this cutoff has the target entropy in bits.
// Binomial is searched on p in [0, 1/2]. Throws InfeasibleError when the
// target exceeds what the family can reach.
double match_entropy(const Family& shape, double target_bits, std::size_t cutoff,
                     double tail_tol = kDefaultTailTolerance);

// Copy of `shape` with its free parameter replaced.
Family with_parameter(const Family& shape, double parameter);

// log C(n, k) through lgamma.
double log_binomial(std::size_t n, std::size_t k);

}  // namespace bbc
