#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "bbc/errors.hpp"
#include "bbc/gaussian.hpp"

using namespace bbc;
using namespace bbc::gaussian;

namespace {

// Two-mode local symplectic invariants: nu1^2 + nu2^2 = det A + det B + 2 det C
// and nu1 nu2 = sqrt(det V).
std::pair<double, double> two_mode_invariants(const Eigen::Matrix4d& v) {
  const double det_a = v.block<2, 2>(0, 0).determinant();
  const double det_b = v.block<2, 2>(2, 2).determinant();
  const double det_c = v.block<2, 2>(0, 2).determinant();
  return {det_a + det_b + 2.0 * det_c, std::sqrt(v.determinant())};
}

}  // namespace

TEST_CASE("symplectic_spectrum examples") {
  CHECK(symplectic_spectrum(CovMatrix::vacuum())[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(symplectic_spectrum(CovMatrix::thermal(1.0))[0] == doctest::Approx(1.5).epsilon(1e-15));
  for (double r : {-1.3, -0.2, 0.4, 2.0}) {
    const auto v = CovMatrix::squeezed_thermal(1.0, r);
    CHECK(std::abs(symplectic_spectrum(v)[0] - std::sqrt(v.matrix().determinant())) < 1e-12);
    CHECK(std::abs(symplectic_spectrum(v)[0] - 1.5) < 1e-12);
  }
}

TEST_CASE("symplectic_spectrum input validation") {
  CHECK_THROWS_AS(symplectic_spectrum(Eigen::MatrixXd::Identity(3, 3)), DomainError);
  Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(2, 2);
  asym(0, 1) = 0.1;
  CHECK_THROWS_AS(symplectic_spectrum(asym), DomainError);
  CHECK_THROWS_AS(CovMatrix(0.2 * Eigen::MatrixXd::Identity(2, 2)), PhysicalityError);
}

TEST_CASE("multi-mode spectrum agrees with two-mode invariants") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double k = 2.0 * (u(rng) + 1.0);
    const double r = u(rng);
    const double eta = 0.5 * (u(rng) + 1.0);
    const auto out = bs_output_cov(CovMatrix::vacuum(2), CovMatrix::two_mode_squeezed_thermal(k, r),
                                   Transmissivity{eta});
    const auto nu = symplectic_spectrum(out);
    const auto [delta, product] = two_mode_invariants(out.matrix());
    CHECK(std::abs(nu[0] * nu[0] + nu[1] * nu[1] - delta) < 1e-10 * delta);
    CHECK(std::abs(nu[0] * nu[1] - product) < 1e-10 * product);
  }
}

TEST_CASE("gaussian_entropy") {
  CHECK(gaussian_entropy(CovMatrix::vacuum()) == 0.0);
  CHECK(std::abs(gaussian_entropy(CovMatrix::thermal(1.0)) - 2.0) < 1e-14);
  CHECK(std::abs(gaussian_entropy(CovMatrix::squeezed_thermal(1.0, 0.7)) - 2.0) < 1e-12);
  for (double r = -2.0; r <= 2.0; r += 0.1)
    CHECK(std::abs(gaussian_entropy(CovMatrix::squeezed_thermal(0.8, r)) - g_of(0.8)) < 1e-10);
  CHECK(std::abs(gaussian_entropy(CovMatrix::two_mode_squeezed_thermal(1.0, 0.9)) - 4.0) < 1e-9);
}

TEST_CASE("bs_output_cov") {
  const Transmissivity eta{0.8};
  const auto vac = CovMatrix::vacuum();
  CHECK(bs_output_cov(vac, vac, eta).matrix().isApprox(vac.matrix(), 1e-15));

  for (double k : {0.3, 1.0, 4.0}) {
    const auto out = bs_output_cov(vac, CovMatrix::thermal(k), eta);
    const double expected = 0.2 * k + 0.5;
    CHECK(std::abs(out.matrix()(0, 0) - expected) < 1e-12);
    CHECK(std::abs(out.matrix()(1, 1) - expected) < 1e-12);
    CHECK(out.matrix()(0, 1) == 0.0);
    CHECK(std::abs(symplectic_spectrum(out)[0] - expected) < 1e-12);
  }

  const auto out = bs_output_cov(vac, CovMatrix::squeezed_thermal(1.0, 0.7), eta);
  CHECK(std::abs(out.matrix()(0, 0) - (0.8 * 0.5 + 0.2 * 1.5 * std::exp(1.4))) < 1e-12);
  CHECK(std::abs(out.matrix()(1, 1) - (0.8 * 0.5 + 0.2 * 1.5 * std::exp(-1.4))) < 1e-12);

  CHECK_THROWS_AS(bs_output_cov(vac, CovMatrix::vacuum(2), eta), DomainError);
}

TEST_CASE("conjecture 2 gaussian sweep") {
  const Transmissivity eta{0.8};
  const double zero[] = {0.0};
  const auto at_zero = conjecture2_gaussian_sweep(eta, MeanPhoton{1.0}, zero);
  CHECK(std::abs(at_zero[0].entropy - g_of(0.2)) < 1e-12);
  CHECK(std::abs(at_zero[0].entropy - 0.7800269059780251) < 1e-12);

  const double half[] = {-0.5, 0.5};
  const auto sq = conjecture2_gaussian_sweep(eta, MeanPhoton{1.0}, half);
  CHECK(sq[0].entropy > at_zero[0].entropy);
  CHECK(std::abs(sq[0].entropy - 0.98666868003386669) < 1e-12);
  CHECK(std::abs(sq[1].entropy - sq[0].entropy) < 1e-12);

  const double rs[] = {-1.0, 0.0, 1.5};
  for (const auto& pt : conjecture2_gaussian_sweep(Transmissivity{1.0}, MeanPhoton{3.0}, rs))
    CHECK(pt.entropy == doctest::Approx(0.0));
}

TEST_CASE("sweep is even and increasing in |r|") {
  const auto grid = symmetric_grid(1.0, 41);
  const auto table = conjecture2_gaussian_sweep(Transmissivity{0.7}, MeanPhoton{2.0}, grid);
  const std::size_t mid = 20;
  CHECK(grid[mid] == 0.0);
  for (std::size_t i = 1; i <= mid; ++i) {
    CHECK(std::abs(table[mid + i].entropy - table[mid - i].entropy) < 1e-12);
    CHECK(table[mid + i].entropy > table[mid + i - 1].entropy);
  }
  // Output symplectic eigenvalue at r = 0 is (1 - eta) K + 1/2.
  const auto out = bs_output_cov(CovMatrix::vacuum(), CovMatrix::thermal(2.0), Transmissivity{0.7});
  CHECK(std::abs(symplectic_spectrum(out)[0] - (0.3 * 2.0 + 0.5)) < 1e-12);
}

TEST_CASE("strong conjecture 2 gaussian check") {
  const Transmissivity eta{0.8};
  const double rs[] = {0.0, 0.8};
  const auto table = strong_conj2_gaussian_check(eta, MeanPhoton{1.0}, rs);
  CHECK(std::abs(table[0].entropy - 2.0 * g_of(0.2)) < 1e-10);
  CHECK(table[1].entropy >= 2.0 * g_of(0.2));
  // Closed form: output stays two-mode squeezed, nu = sqrt(A^2 - C^2).
  CHECK(std::abs(table[1].entropy - 2.5297966738095221) < 1e-9);

  const auto dark = strong_conj2_gaussian_check(eta, MeanPhoton{0.0}, std::span<const double>(rs, 1));
  CHECK(std::abs(dark[0].entropy) < 1e-12);
}

TEST_CASE("wehrl entropy of gaussian states") {
  const double base = 1.0 + std::log(std::numbers::pi);
  CHECK(std::abs(wehrl_entropy_gaussian(CovMatrix::vacuum()) - base) < 1e-14);
  CHECK(std::abs(wehrl_entropy_gaussian(CovMatrix::thermal(1.0)) - 2.8378770664093455) < 1e-13);
  for (double k = 0.0; k <= 10.0; k += 0.5) {
    CHECK(std::abs(wehrl_entropy_gaussian(CovMatrix::thermal(k)) - (base + std::log1p(k))) < 1e-12);
    // Wehrl exceeds von Neumann (both in nats).
    CHECK(wehrl_entropy_gaussian(CovMatrix::thermal(k)) > gaussian_entropy(CovMatrix::thermal(k)) * std::log(2.0));
  }
  CHECK_THROWS_AS(wehrl_entropy_gaussian(CovMatrix::vacuum(2)), DomainError);
}
