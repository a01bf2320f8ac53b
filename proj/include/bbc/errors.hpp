#pragma once

#include <stdexcept>
#include <string>

namespace bbc {

// Invalid argument outside a function's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Truncated representation would drop more probability mass than allowed.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, std::size_t required_cutoff)
      : std::runtime_error(what), required_cutoff_(required_cutoff) {}

  std::size_t required_cutoff() const noexcept { return required_cutoff_; }

 private:
  std::size_t required_cutoff_;
};

// A target value the requested family or instance cannot reach.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, double reachable_max)
      : std::runtime_error(what), reachable_max_(reachable_max) {}

  double reachable_max() const noexcept { return reachable_max_; }

 private:
  double reachable_max_;
};

// A matrix that should be a physical state is not (negative eigenvalue,
// uncertainty violation).
class PhysicalityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Phase-space grid does not hold enough of the Husimi function's mass.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broadcast operations need Bob to be the stronger receiver (eta > 1/2).
class DegradednessError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace bbc
