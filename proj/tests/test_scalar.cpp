#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "bbc/errors.hpp"
#include "bbc/scalar.hpp"

using namespace bbc;

namespace {

// Independent reference for thinning: plain double sum with the binomial
// coefficient built multiplicatively.
std::vector<double> thin_direct(std::span<const double> p, double tau) {
  std::vector<double> q(p.size(), 0.0);
  for (std::size_t n = 0; n < p.size(); ++n) {
    long double coeff = 1.0L;  // C(n, k)
    for (std::size_t k = 0; k <= n; ++k) {
      if (k > 0) coeff = coeff * static_cast<long double>(n - k + 1) / static_cast<long double>(k);
      q[k] += static_cast<double>(static_cast<long double>(p[n]) * coeff *
                                  std::pow(static_cast<long double>(tau), k) *
                                  std::pow(1.0L - tau, n - k));
    }
  }
  return q;
}

}  // namespace

TEST_CASE("g_of values") {
  CHECK(g_of(0.0) == 0.0);
  CHECK(g_of(1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(g_of(12.0) - 5.0861663271803239) < 1e-12);
  CHECK(std::abs(g_of(3.0) - 3.2451124978365315) < 1e-12);
  CHECK(std::abs(g_of(0.4) - 1.2083687959932834) < 1e-12);
  CHECK_THROWS_AS(g_of(-1e-3), DomainError);
  CHECK_THROWS_AS(g_of(INFINITY), DomainError);
  CHECK_THROWS_AS(g_of(NAN), DomainError);
}

TEST_CASE("g_of is increasing and concave") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(1e-6, 50.0);
  for (int i = 0; i < 2000; ++i) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    if (b - a < 1e-9) continue;
    CHECK(g_of(a) < g_of(b));
    CHECK(g_of(0.5 * (a + b)) > 0.5 * (g_of(a) + g_of(b)));
  }
}

TEST_CASE("g_inverse") {
  CHECK(g_inverse(0.0) == 0.0);
  CHECK(std::abs(g_inverse(2.0) - 1.0) < 1e-12);
  CHECK(std::abs(g_inverse(3.2451124978365315) - 3.0) < 1e-9);
  CHECK_THROWS_AS(g_inverse(-0.5), DomainError);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    const double y = g_of(x);
    CHECK(std::abs(g_of(g_inverse(y)) - y) < 1e-12);
    CHECK(std::abs(g_inverse(y) - x) < 1e-9);
  }
}

TEST_CASE("shannon_entropy") {
  CHECK(shannon_entropy(ProbVector::delta(0, 5)) == 0.0);
  CHECK(shannon_entropy(ProbVector({0.25, 0.25, 0.25, 0.25})) == doctest::Approx(2.0).epsilon(1e-15));
  // Thermal distribution: series entropy equals g(1).
  const auto be = make_distribution(BoseEinstein{1.0}, 80);
  CHECK(std::abs(shannon_entropy(be) - 2.0) < 1e-9);
}

TEST_CASE("ProbVector invariants") {
  CHECK_THROWS_AS(ProbVector({0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(ProbVector({1.2, -0.2}), DomainError);
  CHECK_THROWS_AS(ProbVector::normalized({0.0, 0.0}), DomainError);
  const auto p = ProbVector::normalized({1.0, 3.0});
  CHECK(p[1] == doctest::Approx(0.75));
}

TEST_CASE("make_distribution") {
  const auto vac = make_distribution(BoseEinstein{0.0}, 10);
  CHECK(vac[0] == 1.0);
  CHECK(vac.tail_mass() == 0.0);

  const auto be = make_distribution(BoseEinstein{1.0}, 60);
  CHECK(be[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(be[1] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(be[2] == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(be.tail_mass() == doctest::Approx(std::ldexp(1.0, -61)));

  const auto poi = make_distribution(Poisson{1.0}, 40);
  CHECK(std::abs(poi[0] - 0.36787944117144232) < 1e-15);
  CHECK(std::abs(poi.mean() - 1.0) < 1e-12);

  const auto bin = make_distribution(Binomial{20, 0.3}, 40);
  CHECK(bin.tail_mass() == 0.0);
  CHECK(std::abs(bin.mean() - 6.0) < 1e-12);

  // Binomial with trials above the cutoff keeps working through lgamma.
  const auto wide = make_distribution(Binomial{400, 0.01}, 40);
  CHECK(std::abs(wide.mean() - 4.0) < 1e-8);

  try {
    make_distribution(BoseEinstein{5.0}, 20);
    FAIL("expected truncation error");
  } catch (const TruncationError& e) {
    CHECK(e.required_cutoff() == required_cutoff(BoseEinstein{5.0}));
    CHECK(e.required_cutoff() > 20);
    CHECK(std::string(e.what()).find("required") != std::string::npos);
  }
  CHECK_THROWS_AS(make_distribution(Poisson{-1.0}, 10), DomainError);
  CHECK_THROWS_AS(make_distribution(Binomial{0, 0.5}, 10), DomainError);
  CHECK_THROWS_AS(make_distribution(Binomial{5, 1.5}, 10), DomainError);
}

TEST_CASE("required_cutoff is the smallest adequate cutoff") {
  for (const Family f : {Family{Poisson{3.0}}, Family{BoseEinstein{2.0}}, Family{Binomial{200, 0.05}}}) {
    const std::size_t d = required_cutoff(f);
    CHECK_NOTHROW(make_distribution(f, d));
    CHECK_THROWS_AS(make_distribution(f, d - 1), TruncationError);
  }
}

TEST_CASE("thin examples") {
  const auto p = make_distribution(Poisson{2.0}, 40);
  const auto same = thin(p, 1.0);
  for (std::size_t n = 0; n < p.size(); ++n) CHECK(same[n] == p[n]);
  CHECK(shannon_entropy(same) == shannon_entropy(p));

  const auto split = thin(ProbVector({0.0, 1.0}), 0.2);
  CHECK(split[0] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(split[1] == doctest::Approx(0.2).epsilon(1e-15));

  // Thermal closure K=2, tau=0.2 -> K=0.4; values from a 40-digit double sum.
  const double frozen[] = {0.71428571428571429, 0.20408163265306122, 0.058309037900874636,
                           0.01665972511453561, 0.0047599214612958886, 0.0013599775603702539};
  const auto q = thin(make_distribution(BoseEinstein{2.0}, 200), 0.2);
  const auto be = make_distribution(BoseEinstein{0.4}, 200);
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(q[k] - frozen[k]) < 1e-10);
  for (std::size_t k = 0; k < q.size(); ++k) CHECK(std::abs(q[k] - be[k]) < 1e-10);

  CHECK_THROWS_AS(thin(p, 1.5), DomainError);
}

TEST_CASE("thin agrees with the direct double sum") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> w(30);
    for (auto& x : w) x = u(rng);
    const auto p = ProbVector::normalized(w);
    const double tau = u(rng);
    const auto fast = thin(p, tau);
    const auto ref = thin_direct(p.probs(), tau);
    for (std::size_t k = 0; k < w.size(); ++k) CHECK(std::abs(fast[k] - ref[k]) < 1e-12);
  }
}

TEST_CASE("thinning composes and closes the thermal family") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const double t1 = u(rng), t2 = u(rng);
    const double k = 5.0 * u(rng);
    const auto p = make_distribution(BoseEinstein{k}, required_cutoff(BoseEinstein{k}, 1e-14));
    const auto twice = thin(thin(p, t1), t2);
    const auto once = thin(p, t1 * t2);
    for (std::size_t n = 0; n < p.size(); ++n) CHECK(std::abs(twice[n] - once[n]) < 1e-10);
    const auto closed = make_distribution(BoseEinstein{k * t1}, p.cutoff());
    const auto thinned = thin(p, t1);
    for (std::size_t n = 0; n < p.size(); ++n) CHECK(std::abs(thinned[n] - closed[n]) < 1e-10);
  }
}

TEST_CASE("match_entropy") {
  const double k = 1.7;
  CHECK(match_entropy(BoseEinstein{0.0}, g_of(k), 120) == doctest::Approx(k).epsilon(1e-12));

  const double lambda = match_entropy(Poisson{0.0}, 2.0, 60);
  CHECK(std::abs(shannon_entropy(make_distribution(Poisson{lambda}, 60)) - 2.0) < 1e-9);
  CHECK(std::abs(lambda - 1.1518400765938424) < 1e-8);

  const double p = match_entropy(Binomial{20, 0.0}, g_of(0.1), 40);
  CHECK(std::abs(shannon_entropy(make_distribution(Binomial{20, p}, 40)) - g_of(0.1)) < 1e-9);
  CHECK(std::abs(p - 0.0050337489681022996) < 1e-9);
  CHECK(p <= 0.5);

  try {
    match_entropy(Binomial{20, 0.0}, g_of(5.0), 40);
    FAIL("expected infeasible");
  } catch (const InfeasibleError& e) {
    CHECK(e.reachable_max() == doctest::Approx(3.207722657).epsilon(1e-8));
  }
  CHECK_THROWS_AS(match_entropy(Poisson{0.0}, 6.0, 20), TruncationError);
}
