#include "bbc/conjecture.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "bbc/errors.hpp"
#include "bbc/gaussian.hpp"

namespace bbc::conjecture {

namespace {

using fock::CMatrix;
using fock::Complex;
using fock::CVector;

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

void require_open_eta(Transmissivity eta) {
  if (!(eta.value() > 0.0 && eta.value() < 1.0)) throw DomainError("eta must lie strictly between 0 and 1");
}

double entropy_of(const fock::DensityMatrix& rho, EntropyKind kind, double* error_estimate = nullptr) {
  switch (kind.tag) {
    case EntropyKind::Tag::von_neumann: return fock::von_neumann_entropy(rho);
    case EntropyKind::Tag::renyi: return fock::renyi_entropy(rho, kind.order);
    case EntropyKind::Tag::wehrl: {
      const auto w = fock::wehrl_entropy_numeric(rho);
      if (error_estimate) *error_estimate = w.error_estimate;
      return w.entropy;
    }
  }
  return 0.0;
}

// Entropy of p^s / sum p^s over the support of p; logs holds log p on
// the support.
double tilted_entropy(const std::vector<double>& logs, double s) {
  double top = -std::numeric_limits<double>::infinity();
  for (double l : logs) top = std::max(top, s * l);
  double z = 0.0, acc = 0.0;
  for (double l : logs) {
    const double x = s * l - top;
    const double w = std::exp(x);
    z += w;
    acc += w * x;
  }
  // H = log z - E[x], in nats
  return (std::log(z) - acc / z) / std::log(2.0);
}

// Shared Metropolis loop. `propose` fills a candidate from the current
// state and returns false when the candidate has to be dropped.
template <typename State, typename Propose, typename Objective>
ChainTrace metropolis(State& current, double& current_value, State& best, double& best_value,
                      const AnnealConfig& cfg, std::mt19937_64& rng, Propose propose, Objective objective) {
  ChainTrace trace;
  trace.best_so_far.reserve(cfg.steps);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double temperature = cfg.initial_temperature;
  State candidate = current;
  for (std::size_t step = 0; step < cfg.steps; ++step) {
    if (propose(current, candidate, rng)) {
      const double value = objective(candidate);
      const double delta = value - current_value;
      const double u = unit(rng);
      if (delta <= 0.0 || u < std::exp(-delta / temperature)) {
        std::swap(current, candidate);
        current_value = value;
        ++trace.accepted;
        if (value < best_value) {
          best = current;
          best_value = value;
        }
      }
    } else {
      ++trace.rejected_projection;
    }
    temperature *= cfg.cooling_ratio;
    trace.best_so_far.push_back(best_value);
  }
  return trace;
}

CVector complex_noise(Eigen::Index n, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = scale * Complex(re, im);
  }
  return v;
}

// max over alpha of |<alpha|psi>|^2: grid search, then shrinking pattern
// search around the best node.
double nearest_coherent_fidelity(const CVector& psi) {
  const auto overlap = [&](Complex alpha) {
    Complex acc = 0.0, term = std::exp(-0.5 * std::norm(alpha));
    for (Eigen::Index n = 0; n < psi.size(); ++n) {
      if (n > 0) term *= std::conj(alpha) / std::sqrt(static_cast<double>(n));
      acc += term * psi(n);
    }
    return std::norm(acc);
  };
  const double radius = std::sqrt(static_cast<double>(psi.size()));
  Complex best_alpha = 0.0;
  double best = overlap(best_alpha);
  for (double x = -radius; x <= radius; x += 0.1)
    for (double y = -radius; y <= radius; y += 0.1) {
      const double f = overlap({x, y});
      if (f > best) {
        best = f;
        best_alpha = {x, y};
      }
    }
  for (double h = 0.05; h > 1e-6; h *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (Complex d : {Complex(h, 0), Complex(-h, 0), Complex(0, h), Complex(0, -h)}) {
        const double f = overlap(best_alpha + d);
        if (f > best) {
          best = f;
          best_alpha += d;
          moved = true;
        }
      }
    }
  }
  return best;
}

std::size_t pick_cutoff(const AnnealConfig& cfg, std::size_t fallback) { return cfg.cutoff ? cfg.cutoff : fallback; }

void add_run_extras(ConjectureReport& r, const AnnealConfig& cfg, std::size_t best_chain) {
  r.extras.emplace_back("seed", static_cast<double>(cfg.seed));
  r.extras.emplace_back("restarts", static_cast<double>(cfg.restarts));
  r.extras.emplace_back("steps", static_cast<double>(cfg.steps));
  r.extras.emplace_back("best_restart", static_cast<double>(best_chain));
}

}  // namespace

std::string_view which_name(Which w) {
  switch (w) {
    case Which::conj1: return "conj1";
    case Which::conj2: return "conj2";
    case Which::strong2_gaussian: return "strong2_gaussian";
  }
  return "unknown";
}

std::string EntropyKind::label() const {
  switch (tag) {
    case Tag::von_neumann: return "von_neumann";
    case Tag::wehrl: return "wehrl";
    case Tag::renyi: return "renyi-" + std::to_string(order);
  }
  return "unknown";
}

EntropyKind EntropyKind::parse(std::string_view text) {
  if (text == "von_neumann" || text == "von-neumann") return von_neumann();
  if (text == "wehrl") return wehrl();
  if (text.starts_with("renyi-")) {
    const std::string digits(text.substr(6));
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
      const int n = std::stoi(digits);
      if (n >= 2) return renyi(n);
    }
  }
  throw DomainError("unknown entropy kind '" + std::string(text) + "'");
}

void ConjectureReport::finish() {
  margin = output_entropy - bound;
  pass = margin >= -tolerance;
}

double ConjectureReport::extra(std::string_view name) const {
  for (const auto& [key, value] : extras)
    if (key == name) return value;
  throw DomainError("report has no extra named '" + std::string(name) + "'");
}

ConjectureReport check_conj2_family(const Family& shape, Transmissivity eta, MeanPhoton k, std::size_t cutoff,
                                    double tolerance) {
  require_open_eta(eta);
  if (!(k.value() > 0.0)) throw DomainError("K must be positive");
  const double target = g_of(k.value());
  const double parameter = match_entropy(shape, target, cutoff);
  const ProbVector p = make_distribution(with_parameter(shape, parameter), cutoff);
  const ProbVector out = thin(p, eta.complement());

  ConjectureReport r;
  r.which = Which::conj2;
  r.family = std::string(family_name(shape));
  r.eta = eta.value();
  r.k = k.value();
  r.cutoff = cutoff;
  r.input_entropy = shannon_entropy(p);
  r.output_entropy = shannon_entropy(out);
  r.bound = g_of(eta.complement() * k.value());
  r.tolerance = tolerance;
  r.finish();
  r.extras.emplace_back("parameter", parameter);
  if (const auto* b = std::get_if<Binomial>(&shape)) r.extras.emplace_back("trials", b->trials);
  r.extras.emplace_back("input_mean", p.mean());

  if (cutoff <= 30) {
    const auto rho = fock::conj_output_state(fock::FockVector::vacuum(cutoff), fock::DensityMatrix::diagonal(p), eta,
                                             cutoff);
    const double s = fock::von_neumann_entropy(rho);
    r.extras.emplace_back("fock_output_entropy", s);
    r.extras.emplace_back("fock_difference", std::abs(s - r.output_entropy));
  }
  return r;
}

ConjectureReport check_conj1_state(const fock::FockVector& psi_a, Transmissivity eta, MeanPhoton k,
                                   std::size_t cutoff, EntropyKind kind, double tolerance) {
  const auto b = fock::thermal_density(k, cutoff);
  const auto out = fock::conj_output_state(psi_a, b, eta, cutoff);

  ConjectureReport r;
  r.which = Which::conj1;
  r.family = "pure-input";
  r.eta = eta.value();
  r.k = k.value();
  r.cutoff = cutoff;
  r.entropy_kind = kind;
  r.tolerance = tolerance;
  r.input_entropy = fock::von_neumann_entropy(b);
  double err = 0.0;
  r.output_entropy = entropy_of(out, kind, &err);
  if (kind.tag == EntropyKind::Tag::von_neumann) {
    r.bound = g_of(eta.complement() * k.value());
  } else {
    const auto ref = fock::conj_output_state(fock::FockVector::vacuum(psi_a.cutoff()), b, eta, cutoff);
    double ref_err = 0.0;
    r.bound = entropy_of(ref, kind, &ref_err);
    if (kind.tag == EntropyKind::Tag::wehrl) {
      r.extras.emplace_back("grid_error_estimate", err);
      r.extras.emplace_back("reference_grid_error_estimate", ref_err);
    }
  }
  r.finish();
  r.extras.emplace_back("input_mean", psi_a.mean_photons());
  return r;
}

ConjectureReport check_strong2_gaussian(Transmissivity eta, MeanPhoton k, std::span<const double> squeezes,
                                        double tolerance) {
  if (squeezes.empty()) throw DomainError("squeeze grid must not be empty");
  const auto table = gaussian::strong_conj2_gaussian_check(eta, k, squeezes);
  const auto best = std::min_element(table.begin(), table.end(),
                                     [](const auto& a, const auto& b) { return a.entropy < b.entropy; });
  ConjectureReport r;
  r.which = Which::strong2_gaussian;
  r.family = "two-mode-squeezed-thermal";
  r.eta = eta.value();
  r.k = k.value();
  r.input_entropy = 2.0 * g_of(k.value());
  r.output_entropy = best->entropy;
  r.bound = 2.0 * g_of(eta.complement() * k.value());
  r.tolerance = tolerance;
  r.finish();
  r.extras.emplace_back("argmin_squeeze", best->squeeze);
  r.extras.emplace_back("grid_points", static_cast<double>(squeezes.size()));
  return r;
}

void AnnealConfig::validate() const {
  if (steps < 1) throw DomainError("annealing needs at least one step");
  if (restarts < 1) throw DomainError("annealing needs at least one restart");
  if (!(cooling_ratio > 0.0 && cooling_ratio < 1.0)) throw DomainError("cooling ratio must lie in (0, 1)");
  if (!(initial_temperature > 0.0)) throw DomainError("initial temperature must be positive");
  if (!(proposal_scale > 0.0)) throw DomainError("proposal scale must be positive");
  if (!(entropy_constraint_tol > 0.0)) throw DomainError("entropy constraint tolerance must be positive");
}

Conj1AnnealResult anneal_conj1(Transmissivity eta, MeanPhoton k, const AnnealConfig& cfg) {
  cfg.validate();
  const std::size_t a_cut = pick_cutoff(cfg, 12);
  const auto dim = static_cast<Eigen::Index>(a_cut + 1);
  const auto b = fock::thermal_density(k, fock::thermal_cutoff(k.value()));
  const fock::OutputChannel channel(b, eta, a_cut);
  const auto objective = [&](const CVector& amps) {
    return fock::von_neumann_entropy(channel.output(fock::FockVector(amps)));
  };
  const auto propose = [&](const CVector& cur, CVector& cand, std::mt19937_64& rng) {
    // proposal_scale is the expected norm of the whole perturbation.
    cand = cur + complex_noise(dim, cfg.proposal_scale / std::sqrt(2.0 * static_cast<double>(dim)), rng);
    const double n = cand.norm();
    if (!(n > 0.0)) return false;
    cand /= n;
    return true;
  };

  std::vector<ChainTrace> chains;
  CVector overall_best;
  double overall_value = std::numeric_limits<double>::infinity();
  std::size_t best_chain = 0;
  for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
    auto rng = substream(cfg.seed, restart);
    CVector current = complex_noise(dim, 1.0, rng);
    current /= current.norm();
    double value = objective(current);
    CVector best = current;
    double best_value = value;
    chains.push_back(metropolis(current, value, best, best_value, cfg, rng, propose, objective));
    if (best_value < overall_value) {
      overall_value = best_value;
      overall_best = best;
      best_chain = restart;
    }
  }

  ConjectureReport r;
  r.which = Which::conj1;
  r.family = "annealed-pure";
  r.eta = eta.value();
  r.k = k.value();
  r.cutoff = a_cut;
  r.input_entropy = fock::von_neumann_entropy(b);
  r.output_entropy = overall_value;
  r.bound = g_of(eta.complement() * k.value());
  r.tolerance = kNumericTolerance;
  r.finish();
  add_run_extras(r, cfg, best_chain);
  r.extras.emplace_back("vacuum_fidelity", std::norm(overall_best(0)));
  // Every coherent state attains the same minimum as the vacuum.
  r.extras.emplace_back("coherent_fidelity", nearest_coherent_fidelity(overall_best));
  r.extras.emplace_back("best_mean_photons", fock::FockVector(overall_best).mean_photons());
  return {std::move(r), fock::FockVector(overall_best), std::move(chains)};
}

bool project_entropy(std::vector<double>& p, double target_bits, double tol) {
  std::vector<double> logs;
  double top = 0.0;
  for (double x : p) {
    if (x > 0.0) {
      logs.push_back(std::log(x));
      top = logs.size() == 1 ? x : std::max(top, x);
    }
  }
  if (logs.empty()) return false;
  const double reachable_max = std::log2(static_cast<double>(logs.size()));
  std::size_t ties = 0;
  for (double x : p) ties += (x == top);
  const double reachable_min = std::log2(static_cast<double>(ties));
  if (target_bits >= reachable_max || target_bits <= reachable_min) return false;

  double lo = 0.0, hi = 1.0;
  while (tilted_entropy(logs, hi) > target_bits) {
    hi *= 2.0;
    if (hi > 1e6) return false;
  }
  double s = hi;
  for (int it = 0; it < 200; ++it) {
    s = 0.5 * (lo + hi);
    const double h = tilted_entropy(logs, s);
    if (std::abs(h - target_bits) < 0.01 * tol) break;
    (h > target_bits ? lo : hi) = s;
  }
  double z = 0.0;
  const double shift = s * std::log(top);
  for (double& x : p) {
    x = x > 0.0 ? std::exp(s * std::log(x) - shift) : 0.0;
    z += x;
  }
  for (double& x : p) x /= z;
  return std::abs(entropy_bits(p) - target_bits) < tol;
}

Conj2AnnealResult anneal_conj2_diagonal(Transmissivity eta, MeanPhoton k, const AnnealConfig& cfg,
                                        bool start_thermal) {
  cfg.validate();
  require_open_eta(eta);
  const std::size_t cut = pick_cutoff(cfg, 40);
  const double target = g_of(k.value());
  if (target >= std::log2(static_cast<double>(cut + 1)))
    throw InfeasibleError("entropy target exceeds log2(cutoff + 1); raise the cutoff",
                          std::log2(static_cast<double>(cut + 1)));
  const double tau = eta.complement();
  using Dist = std::vector<double>;
  const auto objective = [&](const Dist& p) { return shannon_entropy(thin(ProbVector::normalized(p), tau)); };
  const auto propose = [&](const Dist& cur, Dist& cand, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double z = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      cand[i] = cur[i] * std::exp(cfg.proposal_scale * normal(rng));
      z += cand[i];
    }
    for (double& x : cand) x /= z;
    return project_entropy(cand, target, cfg.entropy_constraint_tol);
  };

  std::vector<ChainTrace> chains;
  Dist overall_best;
  double overall_value = std::numeric_limits<double>::infinity();
  std::size_t best_chain = 0;
  for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
    auto rng = substream(cfg.seed, restart);
    Dist current(cut + 1);
    if (start_thermal) {
      const auto be = make_distribution(BoseEinstein{k.value()}, cut);
      current.assign(be.probs().begin(), be.probs().end());
    } else {
      std::exponential_distribution<double> expo(1.0);
      for (double& x : current) x = expo(rng);
      double z = 0.0;
      for (double x : current) z += x;
      for (double& x : current) x /= z;
    }
    if (!project_entropy(current, target, cfg.entropy_constraint_tol))
      throw InfeasibleError("could not place the initial state on the entropy constraint", target);
    double value = objective(current);
    Dist best = current;
    double best_value = value;
    chains.push_back(metropolis(current, value, best, best_value, cfg, rng, propose, objective));
    if (best_value < overall_value) {
      overall_value = best_value;
      overall_best = best;
      best_chain = restart;
    }
  }

  ProbVector best_p = ProbVector::normalized(overall_best);
  ConjectureReport r;
  r.which = Which::conj2;
  r.family = start_thermal ? "annealed-diagonal-from-thermal" : "annealed-diagonal";
  r.eta = eta.value();
  r.k = k.value();
  r.cutoff = cut;
  r.input_entropy = shannon_entropy(best_p);
  r.output_entropy = overall_value;
  r.bound = g_of(tau * k.value());
  r.tolerance = kNumericTolerance;
  r.finish();
  add_run_extras(r, cfg, best_chain);
  std::size_t rejected = 0;
  for (const auto& c : chains) rejected += c.rejected_projection;
  r.extras.emplace_back("rejected_projections", static_cast<double>(rejected));
  r.extras.emplace_back("best_mean_photons", best_p.mean());
  return {std::move(r), std::move(best_p), std::move(chains)};
}

Conj2GeneralResult anneal_conj2_general(Transmissivity eta, MeanPhoton k, const AnnealConfig& cfg,
                                        double mean_penalty) {
  cfg.validate();
  require_open_eta(eta);
  const std::size_t cut = pick_cutoff(cfg, 10);
  const auto dim = static_cast<Eigen::Index>(cut + 1);
  const double target = g_of(k.value());
  if (target >= std::log2(static_cast<double>(dim)))
    throw InfeasibleError("entropy target exceeds log2(cutoff + 1); raise the cutoff",
                          std::log2(static_cast<double>(dim)));
  // By symmetry of the output mode, b behind transmissivity 1 - eta
  // against a vacuum port.
  const fock::OutputChannel channel(fock::DensityMatrix::pure(fock::FockVector::vacuum(0)),
                                    Transmissivity{eta.complement()}, cut);
  CMatrix lower = CMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) lower(n - 1, n) = std::sqrt(static_cast<double>(n));

  struct State {
    CMatrix factor;
    CMatrix rho;
  };
  // rho from factor, with the spectrum tilted onto the entropy target.
  const auto build = [&](State& s) {
    CMatrix m = s.factor * s.factor.adjoint();
    m = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(m);
    std::vector<double> lambda(static_cast<std::size_t>(dim));
    double z = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) z += std::max(0.0, eig.eigenvalues()(i));
    for (Eigen::Index i = 0; i < dim; ++i)
      lambda[static_cast<std::size_t>(i)] = std::max(0.0, eig.eigenvalues()(i)) / z;
    if (!project_entropy(lambda, target, cfg.entropy_constraint_tol)) return false;
    const Eigen::VectorXd l = Eigen::Map<const Eigen::VectorXd>(lambda.data(), dim);
    s.rho = eig.eigenvectors() * l.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
    s.rho = 0.5 * (s.rho + s.rho.adjoint());
    s.rho /= s.rho.trace().real();
    return true;
  };
  const auto entropy_only = [&](const State& s) {
    return fock::von_neumann_entropy(channel.output(fock::DensityMatrix(s.rho)));
  };
  const auto objective = [&](const State& s) {
    return entropy_only(s) + mean_penalty * std::norm((s.rho * lower).trace());
  };
  const auto propose = [&](const State& cur, State& cand, std::mt19937_64& rng) {
    cand.factor = cur.factor;
    for (Eigen::Index j = 0; j < dim; ++j) cand.factor.col(j) += complex_noise(dim, cfg.proposal_scale, rng);
    return build(cand);
  };

  std::vector<ChainTrace> chains;
  State overall_best;
  double overall_value = std::numeric_limits<double>::infinity();
  std::size_t best_chain = 0;
  for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
    auto rng = substream(cfg.seed, restart);
    State current{CMatrix(dim, dim), CMatrix()};
    for (Eigen::Index j = 0; j < dim; ++j) current.factor.col(j) = complex_noise(dim, 1.0, rng);
    if (!build(current)) throw InfeasibleError("could not place the initial state on the entropy constraint", target);
    double value = objective(current);
    State best = current;
    double best_value = value;
    chains.push_back(metropolis(current, value, best, best_value, cfg, rng, propose, objective));
    if (best_value < overall_value) {
      overall_value = best_value;
      overall_best = best;
      best_chain = restart;
    }
  }

  fock::DensityMatrix best_rho(overall_best.rho);
  ConjectureReport r;
  r.which = Which::conj2;
  r.family = "annealed-general";
  r.eta = eta.value();
  r.k = k.value();
  r.cutoff = cut;
  r.input_entropy = fock::von_neumann_entropy(best_rho);
  r.output_entropy = entropy_only(overall_best);
  r.bound = g_of(eta.complement() * k.value());
  r.tolerance = kNumericTolerance;
  r.finish();
  add_run_extras(r, cfg, best_chain);
  r.extras.emplace_back("mean_penalty", mean_penalty);
  r.extras.emplace_back("mean_amplitude", std::abs((overall_best.rho * lower).trace()));
  return {std::move(r), std::move(best_rho), std::move(chains)};
}

void LemmaInstance::validate() const {
  if (!(eta > 0.5 && eta <= 1.0)) throw DegradednessError("the converse lemma needs eta > 1/2");
  if (betas.empty() || betas.size() != nbars.size()) throw DomainError("betas and nbars must be nonempty and equal length");
  double mean = 0.0;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] >= 0.0 && betas[i] <= 1.0)) throw DomainError("every beta_k must lie in [0, 1]");
    if (!(nbars[i] >= 0.0)) throw DomainError("every N_k must be nonnegative");
    mean += nbars[i];
  }
  mean /= static_cast<double>(nbars.size());
  if (std::abs(mean - nbar) > 1e-12 * std::max(1.0, nbar)) throw DomainError("weighted mean of N_k must equal nbar");
}

LemmaResult verify_converse_lemma(const LemmaInstance& in) {
  in.validate();
  const double w = 1.0 / static_cast<double>(in.betas.size());
  double bob = 0.0, lhs = 0.0;
  for (std::size_t i = 0; i < in.betas.size(); ++i) {
    const double x = in.betas[i] * in.nbars[i];
    bob += w * g_of(in.eta * x);
    lhs += w * g_of((1.0 - in.eta) * x);
  }
  const double scale = in.eta * in.nbar;
  const double beta = (bob > 0.0 && scale > 0.0) ? g_inverse(bob) / scale : 0.0;
  LemmaResult res;
  res.beta = beta;
  res.lhs = lhs;
  res.rhs = g_of((1.0 - in.eta) * beta * in.nbar);
  res.feasible = beta >= 0.0 && beta <= 1.0 + 1e-12;
  res.holds = lhs >= res.rhs - 1e-12;
  return res;
}

LemmaInstance random_lemma_instance(double eta, double nbar, std::uint64_t seed, std::size_t index) {
  auto rng = substream(seed, index);
  std::uniform_int_distribution<int> count(1, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  const auto m = static_cast<std::size_t>(count(rng));
  LemmaInstance in{eta, std::vector<double>(m), std::vector<double>(m), nbar};
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    in.betas[i] = unit(rng);
    in.nbars[i] = expo(rng);
    total += in.nbars[i];
  }
  const double factor = total > 0.0 ? nbar * static_cast<double>(m) / total : 0.0;
  for (double& x : in.nbars) x *= factor;
  return in;
}

LemmaSuite lemma_suite(double eta, double nbar, std::size_t instances, std::uint64_t seed) {
  LemmaSuite s{eta, nbar, seed, instances, 0, 0, 0, std::numeric_limits<double>::infinity(), std::nullopt};
  for (std::size_t i = 0; i < instances; ++i) {
    const auto in = random_lemma_instance(eta, nbar, seed, i);
    const auto res = verify_converse_lemma(in);
    ++s.evaluated;
    if (!res.feasible) {
      ++s.infeasible_count;
      continue;
    }
    s.min_slack = std::min(s.min_slack, res.lhs - res.rhs);
    if (!res.holds) {
      s.violation = LemmaViolation{i, in, res};
      break;
    }
    ++s.holds_count;
  }
  return s;
}

}  // namespace bbc::conjecture
