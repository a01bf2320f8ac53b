#include "bbc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "bbc/errors.hpp"

namespace bbc::capacity {

namespace {

void require_degraded(Transmissivity eta) {
  if (!eta.degraded()) {
    std::ostringstream os;
    os << "eta = " << eta.value()
       << " is not above 1/2: Charlie is the stronger receiver, swap the receiver roles (use 1 - eta)";
    throw DegradednessError(os.str());
  }
}

template <typename Rates>
RegionCurve sweep(Detection detection, Transmissivity eta, MeanPhoton nbar, std::span<const double> betas,
                  Rates rates) {
  require_degraded(eta);
  std::vector<CurvePoint> pts;
  pts.reserve(betas.size());
  for (double beta : betas) pts.push_back({beta, rates(beta)});
  return RegionCurve(detection, eta.value(), nbar.value(), std::move(pts));
}

// Sorted copy, rb ascending and rc descending for ties.
std::vector<RatePoint> sorted_by_rb(std::span<const RatePoint> pts) {
  std::vector<RatePoint> v(pts.begin(), pts.end());
  std::sort(v.begin(), v.end(), [](const RatePoint& a, const RatePoint& b) {
    return a.rb < b.rb || (a.rb == b.rb && a.rc > b.rc);
  });
  return v;
}

}  // namespace

std::string_view detection_name(Detection d) {
  switch (d) {
    case Detection::ultimate: return "ultimate";
    case Detection::homodyne: return "homodyne";
    case Detection::heterodyne: return "heterodyne";
  }
  return "unknown";
}

std::string_view constraint_name(MacConstraint c) {
  switch (c) {
    case MacConstraint::total_transmit: return "total-transmit";
    case MacConstraint::total_receive: return "total-receive";
    case MacConstraint::per_user: return "per-user";
  }
  return "unknown";
}

RegionCurve::RegionCurve(Detection detection, double eta, double nbar, std::vector<CurvePoint> points)
    : detection_(detection), eta_(eta), nbar_(nbar), points_(std::move(points)) {
  if (points_.empty()) throw DomainError("region curve needs at least one point");
  constexpr double slack = 1e-12;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!(p.beta >= 0.0 && p.beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
    if (p.rate.rb < 0.0 || p.rate.rc < 0.0) throw DomainError("rates must be nonnegative");
    if (i == 0) continue;
    const auto& q = points_[i - 1];
    if (!(p.beta > q.beta)) throw DomainError("beta must be strictly increasing");
    if (p.rate.rb < q.rate.rb - slack) throw DomainError("R_B must be nondecreasing in beta");
    if (p.rate.rc > q.rate.rc + slack) throw DomainError("R_C must be nonincreasing in beta");
  }
}

std::vector<RatePoint> RegionCurve::rates() const {
  std::vector<RatePoint> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.rate);
  return out;
}

std::vector<double> beta_grid(std::size_t points) {
  if (points < 2) throw DomainError("beta grid needs at least two points");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) grid[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  return grid;
}

RegionCurve broadcast_region_ultimate(Transmissivity eta, MeanPhoton nbar, std::span<const double> betas) {
  const double n = nbar.value(), e = eta.value(), ec = eta.complement();
  return sweep(Detection::ultimate, eta, nbar, betas, [&](double beta) {
    const double rc = std::max(0.0, g_of(ec * n) - g_of(ec * beta * n));
    return RatePoint{g_of(e * beta * n), rc};
  });
}

RegionCurve broadcast_region_homodyne(Transmissivity eta, MeanPhoton nbar, std::span<const double> betas) {
  const double n = nbar.value(), e = eta.value(), ec = eta.complement();
  return sweep(Detection::homodyne, eta, nbar, betas, [&](double beta) {
    const double rb = 0.5 * std::log2(1.0 + 4.0 * e * beta * n);
    const double rc = 0.5 * std::log2(1.0 + 4.0 * ec * (1.0 - beta) * n / (1.0 + 4.0 * ec * beta * n));
    return RatePoint{rb, rc};
  });
}

RegionCurve broadcast_region_heterodyne(Transmissivity eta, MeanPhoton nbar, std::span<const double> betas) {
  const double n = nbar.value(), e = eta.value(), ec = eta.complement();
  return sweep(Detection::heterodyne, eta, nbar, betas, [&](double beta) {
    const double rb = std::log2(1.0 + e * beta * n);
    const double rc = std::log2(1.0 + ec * (1.0 - beta) * n / (1.0 + ec * beta * n));
    return RatePoint{rb, rc};
  });
}

RegionCurve broadcast_region(Detection detection, Transmissivity eta, MeanPhoton nbar,
                             std::span<const double> betas) {
  switch (detection) {
    case Detection::homodyne: return broadcast_region_homodyne(eta, nbar, betas);
    case Detection::heterodyne: return broadcast_region_heterodyne(eta, nbar, betas);
    case Detection::ultimate: break;
  }
  return broadcast_region_ultimate(eta, nbar, betas);
}

double holevo_information(std::span<const double> priors, const std::vector<fock::DensityMatrix>& states) {
  if (priors.size() != states.size()) throw DomainError("one prior per state is required");
  const ProbVector p(std::vector<double>(priors.begin(), priors.end()));
  const auto dim = static_cast<Eigen::Index>(states.front().dim());
  fock::CMatrix mix = fock::CMatrix::Zero(dim, dim);
  double conditional = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != states.front().dim()) throw DomainError("states must share one dimension");
    mix += p[i] * states[i].entries();
    conditional += p[i] * fock::von_neumann_entropy(states[i]);
  }
  mix = 0.5 * (mix + mix.adjoint());
  mix /= mix.trace().real();
  return fock::von_neumann_entropy(fock::DensityMatrix(mix)) - conditional;
}

CoherentRegionReport verify_coherent_region_numeric(Transmissivity eta, MeanPhoton nbar, double beta,
                                                    std::size_t cutoff, std::size_t t_samples,
                                                    std::uint64_t seed, double threshold) {
  require_degraded(eta);
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
  if (t_samples < 1) throw DomainError("at least one t sample is required");
  const double n = nbar.value(), e = eta.value(), ec = eta.complement();

  CoherentRegionReport rep{};
  rep.eta = e;
  rep.nbar = n;
  rep.beta = beta;
  rep.cutoff = cutoff;
  rep.seed = seed;
  rep.threshold = threshold;
  rep.bob_expected = g_of(e * beta * n);
  rep.charlie_expected = g_of(ec * n);
  rep.charlie_conditional_expected = g_of(ec * beta * n);

  // Averaged over t and the conditional spread, Charlie sees a thermal state.
  rep.charlie_entropy = fock::von_neumann_entropy(fock::thermal_density(MeanPhoton{ec * n}, cutoff));
  double worst = std::abs(rep.charlie_entropy - rep.charlie_expected);

  const double sigma = std::sqrt(0.5 * n);
  for (std::size_t k = 0; k < t_samples; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, sigma);
    const double re = normal(rng);
    const double im = normal(rng);
    const std::complex<double> t(re, im);
    const std::complex<double> centre = std::sqrt(1.0 - beta) * t;

    const auto bob = fock::displaced_thermal(std::sqrt(e) * centre, MeanPhoton{e * beta * n}, cutoff);
    const auto charlie = fock::displaced_thermal(std::sqrt(ec) * centre, MeanPhoton{ec * beta * n}, cutoff);
    CoherentSample s{t, fock::von_neumann_entropy(bob), fock::von_neumann_entropy(charlie)};
    worst = std::max(worst, std::abs(s.bob_conditional - rep.bob_expected));
    worst = std::max(worst, std::abs(s.charlie_conditional - rep.charlie_conditional_expected));
    rep.samples.push_back(s);
  }
  rep.max_residual = worst;
  rep.passed = worst < threshold;
  return rep;
}

MacRegion mac_region_coherent(Transmissivity eta, MeanPhoton n1, MeanPhoton n2) {
  const double a = eta.value() * n1.value();
  const double b = eta.complement() * n2.value();
  return {eta.value(), n1.value(), n2.value(), g_of(a), g_of(b), g_of(a + b)};
}

Envelope mac_envelope(Transmissivity eta, MeanPhoton nbar, MacConstraint constraint, std::size_t steps) {
  if (steps < 2) throw DomainError("mac envelope needs at least two steps");
  const double n = nbar.value(), e = eta.value(), ec = eta.complement();
  Envelope env{e, n, constraint, {}, {}};

  if (constraint == MacConstraint::per_user) {
    env.regions.push_back(mac_region_coherent(eta, nbar, nbar));
  } else {
    for (std::size_t k = 0; k <= steps; ++k) {
      const double frac = static_cast<double>(k) / static_cast<double>(steps);
      double n1 = 0.0, n2 = 0.0;
      if (constraint == MacConstraint::total_transmit) {
        n1 = frac * n;
        n2 = (1.0 - frac) * n;
      } else {
        // eta n1 + (1 - eta) n2 = N
        if (ec == 0.0) throw DomainError("total-receive constraint needs eta < 1");
        n1 = frac * n / e;
        n2 = std::max(0.0, (n - e * n1) / ec);
      }
      env.regions.push_back(mac_region_coherent(eta, MeanPhoton{n1}, MeanPhoton{n2}));
    }
  }

  std::vector<RatePoint> cand;
  for (const auto& r : env.regions) {
    cand.push_back(r.corner_first());
    cand.push_back(r.corner_second());
    cand.push_back({r.r1_max, 0.0});
    cand.push_back({0.0, r.r2_max});
  }
  std::sort(cand.begin(), cand.end(), [](const RatePoint& a, const RatePoint& b) {
    return a.rb > b.rb || (a.rb == b.rb && a.rc > b.rc);
  });
  double best = -1.0;
  for (const auto& p : cand) {
    if (p.rc > best) {
      env.points.push_back(p);
      best = p.rc;
    }
  }
  std::reverse(env.points.begin(), env.points.end());
  return env;
}

Dominance region_dominates(std::span<const RatePoint> outer, std::span<const RatePoint> inner, double tolerance) {
  if (outer.empty() || inner.empty()) throw DomainError("dominance check needs two nonempty curves");
  const auto o = sorted_by_rb(outer);
  const double rb_max = o.back().rb;

  const auto height = [&](double x) {
    if (x > rb_max + tolerance) return -std::numeric_limits<double>::infinity();
    x = std::min(x, rb_max);
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& p : o)
      if (p.rb >= x) h = std::max(h, p.rc);
    for (std::size_t i = 0; i + 1 < o.size(); ++i) {
      const auto& a = o[i];
      const auto& b = o[i + 1];
      if (a.rb <= x && x <= b.rb && b.rb > a.rb) h = std::max(h, a.rc + (b.rc - a.rc) * (x - a.rb) / (b.rb - a.rb));
    }
    return h;
  };

  Dominance d{true, std::numeric_limits<double>::infinity(), std::nullopt};
  for (const auto& p : inner) {
    const double margin = height(p.rb) - p.rc;
    if (margin < d.worst_margin) {
      d.worst_margin = margin;
      if (margin < -tolerance) d.witness = p;
    }
  }
  d.dominates = d.worst_margin >= -tolerance;
  if (d.dominates) d.witness.reset();
  return d;
}

double equal_rate_point(std::span<const RatePoint> boundary) {
  if (boundary.empty()) throw DomainError("empty boundary");
  const auto v = sorted_by_rb(boundary);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double di = v[i].rb - v[i].rc;
    if (di == 0.0) return v[i].rb;
    if (i + 1 == v.size()) break;
    const double dj = v[i + 1].rb - v[i + 1].rc;
    if (di < 0.0 && dj > 0.0) {
      const double s = di / (di - dj);
      return v[i].rb + s * (v[i + 1].rb - v[i].rb);
    }
  }
  throw DomainError("boundary does not cross the equal-rate ray");
}

}  // namespace bbc::capacity
