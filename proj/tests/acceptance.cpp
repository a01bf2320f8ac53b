// Acceptance run: one PASS/FAIL line per numbered criterion, plus INFO lines
// with supporting numbers. Exit status is 1 when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bbc/capacity.hpp"
#include "bbc/cli.hpp"
#include "bbc/conjecture.hpp"
#include "bbc/errors.hpp"
#include "bbc/fock.hpp"
#include "bbc/gaussian.hpp"
#include "bbc/scalar.hpp"

using namespace bbc;

namespace {

const Transmissivity kEta{0.8};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void info(const std::string& text) { std::cout << "       INFO  " << text << "\n"; }

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

fock::CVector coherent_exact(fock::Complex alpha, Eigen::Index dim) {
  fock::CVector v(dim);
  double log_fact = 0.0;
  for (Eigen::Index n = 0; n < dim; ++n) {
    if (n > 0) log_fact += std::log(static_cast<double>(n));
    const double mag = std::abs(alpha) == 0.0
                           ? (n == 0 ? 1.0 : 0.0)
                           : std::exp(-0.5 * std::norm(alpha) + n * std::log(std::abs(alpha)) - 0.5 * log_fact);
    v(n) = mag * std::polar(1.0, static_cast<double>(n) * std::arg(alpha));
  }
  return v;
}

std::string cli_output(std::vector<const char*> args) {
  args.insert(args.begin(), "bbc");
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(args.size()), args.data(), out, err);
  if (code != cli::ok && code != cli::claim_violation) throw std::runtime_error("cli failed: " + err.str());
  return out.str();
}

// ------------------------------------------------------------------ 1

Outcome endpoints() {
  const double ends[] = {0.0, 1.0};
  const auto c = capacity::broadcast_region_ultimate(kEta, MeanPhoton{15.0}, ends);
  const auto lo = c.points()[0].rate, hi = c.points()[1].rate;
  const bool ok = close(hi.rb, 5.0861664, 1e-6) && close(hi.rc, 0.0, 1e-6) && close(lo.rb, 0.0, 1e-6) &&
                  close(lo.rc, 3.2451125, 1e-6);
  return {ok, "beta=1 -> (" + num(hi.rb) + ", " + num(hi.rc) + "), beta=0 -> (" + num(lo.rb) + ", " + num(lo.rc) + ")"};
}

// ------------------------------------------------------------------ 2

Outcome coherent_region() {
  bool below = true, decreasing = true;
  std::string detail;
  for (double beta : {0.25, 0.5, 0.75}) {
    const auto r40 = capacity::verify_coherent_region_numeric(kEta, MeanPhoton{1.0}, beta, 40, 5, 2024);
    const auto r60 = capacity::verify_coherent_region_numeric(kEta, MeanPhoton{1.0}, beta, 60, 5, 2024);
    below = below && r40.max_residual < 1e-4;
    decreasing = decreasing && r60.max_residual < r40.max_residual;
    detail += "beta=" + num(beta) + ": D40 " + num(r40.max_residual) + ", D60 " + num(r60.max_residual) + "; ";
  }
  detail += std::string("residual < 1e-4: ") + (below ? "yes" : "no") + ", decreases 40->60: " +
            (decreasing ? "yes" : "no");
  return {below && decreasing, detail};
}

void coherent_region_info() {
  const auto r24 = capacity::verify_coherent_region_numeric(kEta, MeanPhoton{1.0}, 0.75, 24, 5, 2024);
  const auto r48 = capacity::verify_coherent_region_numeric(kEta, MeanPhoton{1.0}, 0.75, 48, 5, 2024);
  info("criterion 2 at a cutoff where truncation is visible (beta=0.75): D24 residual " + num(r24.max_residual) +
       ", D48 residual " + num(r48.max_residual));
}

// ------------------------------------------------------------------ 3

Outcome be_equality() {
  const auto r = conjecture::check_conj2_family(BoseEinstein{1.0}, kEta, MeanPhoton{2.0}, 200);
  const double g04 = g_of(0.4);
  const bool ok = std::abs(r.output_entropy - g04) < 1e-9 && close(g04, 1.2083688, 1e-7);
  return {ok, "S_out " + num(r.output_entropy) + ", g(0.4) " + num(g04) + ", diff " +
                  num(std::abs(r.output_entropy - g04))};
}

// ------------------------------------------------------------------ 4

Outcome family_suite() {
  double worst = 1e300, worst_be = 0.0, min_strict = 1e300;
  int cells = 0, infeasible = 0;
  for (double eta : {0.55, 0.65, 0.75, 0.85, 0.95}) {
    const Transmissivity t{eta};
    for (double k : {0.1, 1.0, 5.0}) {
      const MeanPhoton kk{k};
      for (const Family& f : {Family{Poisson{1.0}}, Family{Binomial{20, 0.1}}}) {
        try {
          const auto r = conjecture::check_conj2_family(f, t, kk, 200);
          worst = std::min(worst, r.margin);
          min_strict = std::min(min_strict, r.margin);
          ++cells;
        } catch (const InfeasibleError&) {
          ++infeasible;
        }
      }
      const auto be = conjecture::check_conj2_family(BoseEinstein{1.0}, t, kk, 200);
      worst = std::min(worst, be.margin);
      worst_be = std::max(worst_be, std::abs(be.margin));
    }
  }
  const bool ok = worst >= -1e-9 && min_strict > 1e-9 && worst_be <= 1e-9;
  return {ok, num(cells) + " Poisson/binomial cells, min margin " + num(min_strict) +
                  "; Bose-Einstein |margin| <= " + num(worst_be) + "; " + num(infeasible) +
                  " binomial(M=20) cells at K=5 n/a (entropy target unreachable)"};
}

void family_info() {
  double worst = 1e300;
  for (double eta : {0.55, 0.65, 0.75, 0.85, 0.95})
    worst = std::min(worst, conjecture::check_conj2_family(Binomial{100, 0.1}, Transmissivity{eta}, MeanPhoton{5.0},
                                                           200)
                                .margin);
  info("criterion 4 binomial(M=100) at K=5 over all eta: min margin " + num(worst));
}

// ------------------------------------------------------------------ 5

Outcome gaussian_sweeps() {
  const auto grid = gaussian::symmetric_grid(1.0, 41);
  const auto sweep = gaussian::conjecture2_gaussian_sweep(kEta, MeanPhoton{1.0}, grid);
  const auto strong = gaussian::strong_conj2_gaussian_check(kEta, MeanPhoton{1.0}, grid);
  auto argmin = [](const std::vector<gaussian::SweepPoint>& s) {
    return *std::min_element(s.begin(), s.end(), [](auto& a, auto& b) { return a.entropy < b.entropy; });
  };
  const auto m1 = argmin(sweep), m2 = argmin(strong);
  const double g02 = g_of(0.2);
  const bool ok = m1.squeeze == 0.0 && std::abs(m1.entropy - g02) <= 1e-10 && m2.squeeze == 0.0 &&
                  std::abs(m2.entropy - 2.0 * g02) <= 1e-10;
  return {ok, "single-mode argmin r=" + num(m1.squeeze) + " S=" + num(m1.entropy) + "; two-mode argmin r=" +
                  num(m2.squeeze) + " S=" + num(m2.entropy) + "; g(0.2)=" + num(g02)};
}

// ------------------------------------------------------------------ 6

Outcome fock_kernel() {
  const auto blocks = fock::bs_blocks(kEta, 80);
  double ortho = 0.0;
  for (std::size_t n = 0; n <= 40; ++n) {
    const auto& b = blocks.block(n);
    const auto dim = static_cast<Eigen::Index>(n + 1);
    ortho = std::max(ortho, (b.transpose() * b - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff());
  }

  double worst_fid = 1.0;
  const double t = std::sqrt(kEta.value()), r = std::sqrt(kEta.complement());
  for (double mag : {0.0, 0.7, 1.4, 2.0}) {
    for (double phase : {0.0, 1.1, 2.9}) {
      const fock::Complex alpha = std::polar(mag, phase);
      const fock::Complex beta = std::polar(2.0 - mag, 0.5 * phase);
      const auto a = fock::coherent_state(alpha, 40);
      const auto b = fock::coherent_state(beta, 40);
      const auto out = fock::apply_bs_pure(a.amplitudes(), b.amplitudes(), blocks);
      const auto c = coherent_exact(t * alpha + r * beta, out.rows());
      const auto d = coherent_exact(r * alpha - t * beta, out.cols());
      worst_fid = std::min(worst_fid, fock::fidelity(c * d.transpose(), out));
    }
  }

  double thin_diff = 0.0;
  for (const Family& f : {Family{Poisson{1.0}}, Family{Binomial{20, 0.1}}, Family{BoseEinstein{1.0}}}) {
    const auto rep = conjecture::check_conj2_family(f, kEta, MeanPhoton{0.5}, 30);
    thin_diff = std::max(thin_diff, rep.extra("fock_difference"));
  }
  const bool ok = ortho <= 1e-10 && worst_fid >= 1.0 - 1e-6 && thin_diff <= 1e-8;
  return {ok, "block orthogonality " + num(ortho) + ", min coherent fidelity " + num(worst_fid) +
                  ", Fock vs thinning " + num(thin_diff)};
}

// ------------------------------------------------------------------ 7

Outcome duality() {
  const MeanPhoton nbar{15.0};
  const auto bc = capacity::broadcast_region_ultimate(kEta, nbar, capacity::beta_grid(201)).rates();
  const auto mac = capacity::mac_envelope(kEta, nbar, capacity::MacConstraint::total_transmit, 200);
  const auto d = capacity::region_dominates(mac.points, bc);
  const double gap = capacity::equal_rate_point(mac.points) - capacity::equal_rate_point(bc);
  std::string detail = std::string("total-transmit envelope dominates: ") + (d.dominates ? "yes" : "no") +
                       " (worst margin " + num(d.worst_margin) + ")";
  if (d.witness) detail += " witness (" + num(d.witness->rb) + ", " + num(d.witness->rc) + ")";
  detail += ", equal-rate gap " + num(gap);
  return {d.dominates && gap > 0.1, detail};
}

void duality_info() {
  const MeanPhoton nbar{15.0};
  const auto bc = capacity::broadcast_region_ultimate(kEta, nbar, capacity::beta_grid(201)).rates();
  const auto mac = capacity::mac_envelope(kEta, nbar, capacity::MacConstraint::total_receive, 200);
  const auto d = capacity::region_dominates(mac.points, bc);
  const double gap = capacity::equal_rate_point(mac.points) - capacity::equal_rate_point(bc);
  info(std::string("criterion 7 with the total-receive constraint: dominates ") + (d.dominates ? "yes" : "no") +
       " (worst margin " + num(d.worst_margin) + "), equal-rate gap " + num(gap));
}

// ------------------------------------------------------------------ 8

Outcome crossover() {
  const double one[] = {1.0};
  auto rb = [&](capacity::Detection det, double n) {
    return capacity::broadcast_region(det, kEta, MeanPhoton{n}, one).points()[0].rate.rb;
  };
  const double h1 = rb(capacity::Detection::homodyne, 1.0), e1 = rb(capacity::Detection::heterodyne, 1.0);
  const double h15 = rb(capacity::Detection::homodyne, 15.0), e15 = rb(capacity::Detection::heterodyne, 15.0);
  const bool ok = close(h1, 1.0351946, 1e-6) && close(e1, 0.8479969, 1e-6) && close(h15, 2.8073549, 1e-6) &&
                  close(e15, 3.7004397, 1e-6) && h1 > e1 && h15 < e15;
  return {ok, "N=1: hom " + num(h1) + " het " + num(e1) + "; N=15: hom " + num(h15) + " het " + num(e15)};
}

// ------------------------------------------------------------------ 9

Outcome lemma() {
  bool ok = true;
  std::string detail;
  for (double eta : {0.55, 0.7, 0.9}) {
    const auto s = conjecture::lemma_suite(eta, 2.0, 10000, 20240501);
    const std::size_t feasible = s.evaluated - s.infeasible_count;
    ok = ok && !s.violation && s.evaluated == 10000 && s.holds_count == feasible;
    detail += "eta=" + num(eta) + ": " + num(static_cast<double>(s.holds_count)) + "/" +
              num(static_cast<double>(feasible)) + " hold, min slack " + num(s.min_slack) + "; ";
    if (s.violation) detail += "violation at instance " + num(static_cast<double>(s.violation->index)) + "; ";
  }
  return {ok, detail};
}

// ------------------------------------------------------------------ 10

Outcome annealing() {
  const std::vector<const char*> c1 = {"conjecture", "anneal", "--which", "1", "--eta", "0.8", "--K", "1", "--seed", "7"};
  const std::vector<const char*> c2 = {"conjecture", "anneal", "--which", "2", "--eta", "0.8", "--K", "1", "--seed", "7"};
  const std::string a1 = cli_output(c1), b1 = cli_output(c1);
  const std::string a2 = cli_output(c2), b2 = cli_output(c2);
  const auto j1 = nlohmann::json::parse(a1)["reports"][0];
  const auto j2 = nlohmann::json::parse(a2)["reports"][0];
  const double m1 = j1["margin"], m2 = j2["margin"];
  const double vac = j1["extras"]["vacuum_fidelity"];
  const double coh = j1["extras"]["coherent_fidelity"];
  const bool same = a1 == b1 && a2 == b2;
  const bool ok = m1 >= -1e-6 && m2 >= -1e-6 && vac > 0.99 && same;
  return {ok, "conj-1 margin " + num(m1) + ", conj-2 margin " + num(m2) + ", vacuum fidelity " + num(vac) +
                  " (nearest coherent state " + num(coh) + "), reproducible bytes: " + (same ? "yes" : "no")};
}

// ------------------------------------------------------------------ 11

Outcome entropy_variants() {
  const auto renyi = conjecture::check_conj1_state(fock::FockVector::vacuum(40), kEta, MeanPhoton{1.0}, 40,
                                                   conjecture::EntropyKind::renyi(2));
  const double base = 1.0 + std::log(std::numbers::pi);
  const double w_vac = fock::wehrl_entropy_numeric(fock::DensityMatrix::pure(fock::FockVector::vacuum(20))).entropy;
  const auto th = fock::thermal_density(MeanPhoton{1.0}, fock::thermal_cutoff(1.0));
  const double w_th = fock::wehrl_entropy_numeric(th).entropy;
  const bool ok = std::abs(renyi.output_entropy - std::log2(1.4)) <= 1e-8 && std::abs(w_vac - base) <= 1e-4 &&
                  std::abs(w_th - (base + std::log(2.0))) <= 1e-3;
  return {ok, "Renyi-2 " + num(renyi.output_entropy) + " (log2 1.4 = " + num(std::log2(1.4)) + "), Wehrl vacuum " +
                  num(w_vac) + " (" + num(base) + "), Wehrl thermal " + num(w_th) + " (" +
                  num(base + std::log(2.0)) + ")"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
    std::function<void()> extra;
  };
  const std::vector<Criterion> criteria = {
      {1, "region endpoints", 1.0, endpoints, nullptr},
      {2, "coherent-state achievability", 30.0, coherent_region, coherent_region_info},
      {3, "conjecture-2 equality case", 1.0, be_equality, nullptr},
      {4, "conjecture-2 family suite", 60.0, family_suite, family_info},
      {5, "gaussian sweeps", 1.0, gaussian_sweeps, nullptr},
      {6, "fock kernel", 60.0, fock_kernel, nullptr},
      {7, "broadcast/MAC duality gap", 5.0, duality, duality_info},
      {8, "detection crossover", 1.0, crossover, nullptr},
      {9, "converse lemma", 60.0, lemma, nullptr},
      {10, "annealing evidence", 300.0, annealing, nullptr},
      {11, "entropy variants", 60.0, entropy_variants, nullptr},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << ": " << o.detail << " [" << num(secs)
              << " s, limit " << num(c.limit_seconds) << " s" << (in_time ? "" : ", OVER TIME") << "]\n";
    if (c.extra) {
      try {
        c.extra();
      } catch (const std::exception& e) {
        info(std::string("supplementary check threw: ") + e.what());
      }
    }
    std::cout.flush();
  }
  std::cout << (criteria.size() - failures) << " of " << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
