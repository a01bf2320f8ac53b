#include "bbc/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "bbc/errors.hpp"

namespace bbc {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double poisson_log_pmf(double lambda, std::size_t n) {
  if (lambda == 0.0) return n == 0 ? 0.0 : -INFINITY;
  const double dn = static_cast<double>(n);
  return -lambda + dn * std::log(lambda) - std::lgamma(dn + 1.0);
}

double binomial_log_pmf(int trials, double p, std::size_t n) {
  if (n > static_cast<std::size_t>(trials)) return -INFINITY;
  const auto m = static_cast<std::size_t>(trials);
  if (p == 0.0) return n == 0 ? 0.0 : -INFINITY;
  if (p == 1.0) return n == m ? 0.0 : -INFINITY;
  const double dn = static_cast<double>(n);
  return log_binomial(m, n) + dn * std::log(p) + (static_cast<double>(m) - dn) * std::log1p(-p);
}

double bose_einstein_log_pmf(double mean, std::size_t n) {
  if (mean == 0.0) return n == 0 ? 0.0 : -INFINITY;
  const double dn = static_cast<double>(n);
  return dn * std::log(mean) - (dn + 1.0) * std::log1p(mean);
}

void validate(const Family& family) {
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Poisson>) {
          if (!(f.lambda >= 0.0) || !std::isfinite(f.lambda))
            throw DomainError("poisson: lambda must be finite and nonnegative");
        } else if constexpr (std::is_same_v<T, Binomial>) {
          if (f.trials < 1) throw DomainError("binomial: trials must be >= 1");
          if (!(f.p >= 0.0 && f.p <= 1.0)) throw DomainError("binomial: p must lie in [0, 1]");
        } else {
          if (!(f.mean >= 0.0) || !std::isfinite(f.mean))
            throw DomainError("bose-einstein: mean must be finite and nonnegative");
        }
      },
      family);
}

double log_pmf(const Family& family, std::size_t n) {
  return std::visit(
      [n](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Poisson>) {
          return poisson_log_pmf(f.lambda, n);
        } else if constexpr (std::is_same_v<T, Binomial>) {
          return binomial_log_pmf(f.trials, f.p, n);
        } else {
          return bose_einstein_log_pmf(f.mean, n);
        }
      },
      family);
}

// Mass strictly beyond `cutoff`, summed term by term so that small tails
// keep their relative precision.
double tail_beyond(const Family& family, std::size_t cutoff) {
  if (const auto* be = std::get_if<BoseEinstein>(&family)) {
    if (be->mean == 0.0) return 0.0;
    const double ratio = be->mean / (1.0 + be->mean);
    return std::exp(static_cast<double>(cutoff + 1) * std::log(ratio));
  }
  if (const auto* b = std::get_if<Binomial>(&family)) {
    if (cutoff >= static_cast<std::size_t>(b->trials)) return 0.0;
  }
  const double mode = std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Poisson>) {
          return f.lambda;
        } else if constexpr (std::is_same_v<T, Binomial>) {
          return f.trials * f.p;
        } else {
          return 0.0;
        }
      },
      family);
  double tail = 0.0;
  for (std::size_t n = cutoff + 1; n < cutoff + 10000000; ++n) {
    const double lp = log_pmf(family, n);
    if (lp == -INFINITY) break;
    tail += std::exp(lp);
    // Past the mode the pmf decays at least geometrically.
    if (static_cast<double>(n) > mode && lp < -100.0) break;
  }
  return tail;
}

}  // namespace

MeanPhoton::MeanPhoton(double value) : value_(value) {
  if (!(value >= 0.0) || !std::isfinite(value))
    throw DomainError("mean photon number must be finite and nonnegative");
}

Transmissivity::Transmissivity(double eta) : eta_(eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("transmissivity must lie in [0, 1]");
}

ProbVector::ProbVector(std::vector<double> probs, double tail_mass)
    : probs_(std::move(probs)), tail_mass_(tail_mass) {
  if (probs_.empty()) throw DomainError("probability vector must not be empty");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("probabilities must be finite and >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "probabilities sum to " << sum << ", not 1";
    throw DomainError(os.str());
  }
}

ProbVector ProbVector::normalized(std::vector<double> weights, double tail_mass) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("weights must be finite and >= 0");
    sum += w;
  }
  if (!(sum > 0.0)) throw DomainError("weights sum to zero");
  for (double& w : weights) w /= sum;
  return ProbVector(std::move(weights), tail_mass);
}

ProbVector ProbVector::delta(std::size_t n, std::size_t cutoff) {
  if (n > cutoff) throw DomainError("delta position beyond cutoff");
  std::vector<double> probs(cutoff + 1, 0.0);
  probs[n] = 1.0;
  return ProbVector(std::move(probs));
}

double ProbVector::mean() const {
  double m = 0.0;
  for (std::size_t n = 0; n < probs_.size(); ++n) m += static_cast<double>(n) * probs_[n];
  return m;
}

std::string_view family_name(const Family& family) {
  switch (family.index()) {
    case 0: return "poisson";
    case 1: return "binomial";
    default: return "bose-einstein";
  }
}

double g_of(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("g_of: argument must be finite and >= 0");
  if (x == 0.0) return 0.0;
  return ((1.0 + x) * std::log1p(x) - x * std::log(x)) / kLn2;
}

double g_inverse(double y) {
  if (!(y >= 0.0) || !std::isfinite(y)) throw DomainError("g_inverse: argument must be finite and >= 0");
  if (y == 0.0) return 0.0;
  // g(x) >= log2(1 + x), so 2^y bounds the root from above.
  if (y > 1000.0) throw DomainError("g_inverse: argument too large for double precision");
  double lo = 0.0;
  double hi = std::exp2(y);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double v = g_of(mid);
    if (v == y) return mid;
    (v < y ? lo : hi) = mid;
  }
  return std::abs(g_of(lo) - y) < std::abs(g_of(hi) - y) ? lo : hi;
}

double entropy_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h / kLn2;
}

double shannon_entropy(const ProbVector& p) { return entropy_bits(p.probs()); }

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) return -INFINITY;
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  return std::lgamma(dn + 1.0) - std::lgamma(dk + 1.0) - std::lgamma(dn - dk + 1.0);
}

std::size_t required_cutoff(const Family& family, double tail_tol) {
  validate(family);
  if (const auto* be = std::get_if<BoseEinstein>(&family)) {
    if (be->mean == 0.0) return 0;
    const double ratio = be->mean / (1.0 + be->mean);
    // ratio^(D+1) < tol
    const double d = std::log(tail_tol) / std::log(ratio) - 1.0;
    auto cutoff = static_cast<std::size_t>(std::max(0.0, std::ceil(d)));
    while (tail_beyond(family, cutoff) >= tail_tol) ++cutoff;
    while (cutoff > 0 && tail_beyond(family, cutoff - 1) < tail_tol) --cutoff;
    return cutoff;
  }
  std::size_t cutoff = 0;
  double cdf = 0.0;
  // Walk the cdf until the complement is close to tol, then confirm with the
  // term-by-term tail.
  for (;; ++cutoff) {
    cdf += std::exp(log_pmf(family, cutoff));
    if (1.0 - cdf < 1e3 * tail_tol || cutoff > 1000000) break;
  }
  while (tail_beyond(family, cutoff) >= tail_tol) ++cutoff;
  while (cutoff > 0 && tail_beyond(family, cutoff - 1) < tail_tol) --cutoff;
  return cutoff;
}

ProbVector make_distribution(const Family& family, std::size_t cutoff, double tail_tol) {
  validate(family);
  const double tail = tail_beyond(family, cutoff);
  if (tail >= tail_tol) {
    const std::size_t need = required_cutoff(family, tail_tol);
    std::ostringstream os;
    os << family_name(family) << ": tail mass " << tail << " beyond cutoff " << cutoff
       << " exceeds tolerance " << tail_tol << "; cutoff " << need << " is required";
    throw TruncationError(os.str(), need);
  }
  std::vector<double> probs(cutoff + 1);
  for (std::size_t n = 0; n <= cutoff; ++n) probs[n] = std::exp(log_pmf(family, n));
  return ProbVector::normalized(std::move(probs), tail);
}

ProbVector thin(const ProbVector& p, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("thin: tau must lie in [0, 1]");
  const std::size_t size = p.size();
  if (tau == 1.0) return p;
  std::vector<double> q(size, 0.0);
  if (tau == 0.0) {
    q[0] = 1.0;
    return ProbVector(std::move(q), p.tail_mass());
  }
  const double log_tau = std::log(tau);
  const double log_keep = std::log1p(-tau);
  for (std::size_t n = 0; n < size; ++n) {
    const double pn = p[n];
    if (pn == 0.0) continue;
    const double log_pn = std::log(pn);
    for (std::size_t k = 0; k <= n; ++k) {
      const double dk = static_cast<double>(k);
      const double dnk = static_cast<double>(n - k);
      q[k] += std::exp(log_pn + log_binomial(n, k) + dk * log_tau + dnk * log_keep);
    }
  }
  return ProbVector::normalized(std::move(q), p.tail_mass());
}

Family with_parameter(const Family& shape, double parameter) {
  return std::visit(
      [parameter](const auto& f) -> Family {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Poisson>) {
          return Poisson{parameter};
        } else if constexpr (std::is_same_v<T, Binomial>) {
          return Binomial{f.trials, parameter};
        } else {
          return BoseEinstein{parameter};
        }
      },
      shape);
}

double match_entropy(const Family& shape, double target_bits, std::size_t cutoff, double tail_tol) {
  if (!(target_bits >= 0.0) || !std::isfinite(target_bits))
    throw DomainError("match_entropy: target must be finite and >= 0");
  validate(with_parameter(shape, 0.0));

  if (std::holds_alternative<BoseEinstein>(shape)) {
    // The thermal family saturates g exactly.
    const double mean = g_inverse(target_bits);
    make_distribution(BoseEinstein{mean}, cutoff, tail_tol);
    return mean;
  }

  const auto entropy_at = [&](double param) {
    return shannon_entropy(make_distribution(with_parameter(shape, param), cutoff, tail_tol));
  };

  double lo = 0.0;
  double hi = 0.0;
  if (const auto* b = std::get_if<Binomial>(&shape)) {
    hi = 0.5;
    const double top = entropy_at(hi);
    if (target_bits > top) {
      std::ostringstream os;
      os << "binomial(" << b->trials << "): target entropy " << target_bits
         << " bits exceeds the family maximum " << top << " bits";
      throw InfeasibleError(os.str(), top);
    }
  } else {
    hi = 1.0;
    while (true) {
      const std::size_t need = required_cutoff(Poisson{hi}, tail_tol);
      if (need > cutoff) {
        const double top = entropy_at(hi / 2.0);
        std::ostringstream os;
        os << "poisson: target entropy " << target_bits << " bits not reachable at cutoff " << cutoff
           << " (largest checked " << top << " bits); raise the cutoff to at least " << need;
        throw TruncationError(os.str(), need);
      }
      if (entropy_at(hi) >= target_bits) break;
      lo = hi;
      hi *= 2.0;
    }
  }

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double h = entropy_at(mid);
    if (std::abs(h - target_bits) < 1e-13) return mid;
    (h < target_bits ? lo : hi) = mid;
  }
  return std::abs(entropy_at(lo) - target_bits) < std::abs(entropy_at(hi) - target_bits) ? lo : hi;
}

}  // namespace bbc
