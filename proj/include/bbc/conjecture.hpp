#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bbc/fock.hpp"
#include "bbc/scalar.hpp"

namespace bbc::conjecture {

enum class Which { conj1, conj2, strong2_gaussian };
std::string_view which_name(Which w);

// Entropy functional used for a report. Renyi carries its integer order.
struct EntropyKind {
  enum class Tag { von_neumann, wehrl, renyi } tag = Tag::von_neumann;
  int order = 2;

  static EntropyKind von_neumann() { return {}; }
  static EntropyKind wehrl() { return {Tag::wehrl, 0}; }
  static EntropyKind renyi(int n) { return {Tag::renyi, n}; }
  // "von_neumann", "wehrl", "renyi-2", ...
  std::string label() const;
  // Parses the labels above; throws DomainError otherwise.
  static EntropyKind parse(std::string_view text);
  // Wehrl entropies are in nats, the others in bits.
  std::string_view unit() const { return tag == Tag::wehrl ? "nats" : "bits"; }
};

inline constexpr double kClosedFormTolerance = 1e-9;
inline constexpr double kNumericTolerance = 1e-6;

struct ConjectureReport {
  Which which = Which::conj2;
  std::string family;
  double eta = 0.0;
  double k = 0.0;
  std::size_t cutoff = 0;
  double input_entropy = 0.0;
  double output_entropy = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  double tolerance = kClosedFormTolerance;
  bool pass = true;
  EntropyKind entropy_kind;
  // Supplementary named values (cross-checks, parameters, argmins).
  std::vector<std::pair<std::string, double>> extras;

  // Sets margin and pass from output_entropy, bound and tolerance.
  void finish();
  double extra(std::string_view name) const;
};

// b carries a Fock-diagonal state of the family whose Shannon entropy is
// matched to g(K); a is vacuum. For cutoff <= 30 the thinning result is
// also compared with a full Fock simulation (extra "fock_difference").
ConjectureReport check_conj2_family(const Family& shape, Transmissivity eta, MeanPhoton k, std::size_t cutoff,
                                    double tolerance = kClosedFormTolerance);

// a in psi_a, b thermal with mean K at the same cutoff. For Renyi and
// Wehrl kinds the bound is the same functional evaluated on the
// vacuum-input output.
ConjectureReport check_conj1_state(const fock::FockVector& psi_a, Transmissivity eta, MeanPhoton k,
                                   std::size_t cutoff, EntropyKind kind = EntropyKind::von_neumann(),
                                   double tolerance = kNumericTolerance);

// Two-mode squeezed thermal b-modes; margin = min over the grid minus
// 2 g((1 - eta) K). Extra "argmin_squeeze".
ConjectureReport check_strong2_gaussian(Transmissivity eta, MeanPhoton k, std::span<const double> squeezes,
                                        double tolerance = kClosedFormTolerance);

struct AnnealConfig {
  std::uint64_t seed = 0;
  double initial_temperature = 0.1;
  double cooling_ratio = 0.97;
  std::size_t steps = 2000;
  std::size_t restarts = 8;
  double proposal_scale = 0.05;
  // 0 selects the search's own default (12 for conjecture 1, 40 for the
  // diagonal conjecture-2 search, 10 for the general one).
  std::size_t cutoff = 0;
  double entropy_constraint_tol = 1e-9;

  void validate() const;
};

struct ChainTrace {
  std::vector<double> best_so_far;  // one entry per step
  std::size_t accepted = 0;
  std::size_t rejected_projection = 0;
};

struct Conj1AnnealResult {
  ConjectureReport report;
  fock::FockVector best_state;
  std::vector<ChainTrace> chains;
};

// Minimizes the output entropy over pure first-port states. Restart r
// draws from its own generator seeded by (seed, r).
Conj1AnnealResult anneal_conj1(Transmissivity eta, MeanPhoton k, const AnnealConfig& config);

struct Conj2AnnealResult {
  ConjectureReport report;
  ProbVector best_distribution;
  std::vector<ChainTrace> chains;
};

// Searches Fock-diagonal b states with Shannon entropy pinned to g(K).
// With start_thermal every chain starts from the Bose-Einstein
// distribution instead of a random one.
Conj2AnnealResult anneal_conj2_diagonal(Transmissivity eta, MeanPhoton k, const AnnealConfig& config,
                                        bool start_thermal = false);

struct Conj2GeneralResult {
  ConjectureReport report;
  fock::DensityMatrix best_state;
  std::vector<ChainTrace> chains;
};

// Slow spot check over general density matrices for b. The spectrum is
// pinned to entropy g(K); |<b>|^2 is penalized with the given weight.
Conj2GeneralResult anneal_conj2_general(Transmissivity eta, MeanPhoton k, const AnnealConfig& config,
                                        double mean_penalty = 10.0);

// Power tilt p -> p^s / sum p^s with s chosen so the Shannon entropy hits
// target_bits. Returns false when the target is outside the reachable range.
bool project_entropy(std::vector<double>& p, double target_bits, double tol);

struct LemmaInstance {
  double eta;
  std::vector<double> betas;
  std::vector<double> nbars;  // uniform weights; their mean is nbar
  double nbar;

  void validate() const;
};

struct LemmaResult {
  double beta;
  double lhs;  // sum_k w_k g((1 - eta) beta_k N_k)
  double rhs;  // g((1 - eta) beta N)
  bool feasible;  // beta in [0, 1]
  bool holds;
};

LemmaResult verify_converse_lemma(const LemmaInstance& instance);

struct LemmaViolation {
  std::size_t index;
  LemmaInstance instance;
  LemmaResult result;
};

struct LemmaSuite {
  double eta;
  double nbar;
  std::uint64_t seed;
  std::size_t requested;
  std::size_t evaluated;
  std::size_t holds_count;
  std::size_t infeasible_count;
  double min_slack;  // min lhs - rhs over feasible instances
  // First violation; the suite stops there.
  std::optional<LemmaViolation> violation;
};

// Instance i uses its own generator seeded by (seed, i): M uniform in
// 1..8, beta_k uniform on [0, 1], N_k exponential rescaled to mean nbar.
LemmaInstance random_lemma_instance(double eta, double nbar, std::uint64_t seed, std::size_t index);
LemmaSuite lemma_suite(double eta, double nbar, std::size_t instances, std::uint64_t seed);

}  // namespace bbc::conjecture
