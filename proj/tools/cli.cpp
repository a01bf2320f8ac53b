#include "bbc/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bbc/capacity.hpp"
#include "bbc/conjecture.hpp"
#include "bbc/errors.hpp"
#include "bbc/gaussian.hpp"

namespace bbc::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resolved settings for one command, in declaration order.
class Params {
 public:
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string& text(const std::string& key) const {
    for (const auto& [k, v] : entries)
      if (k == key) return v;
    throw std::logic_error("unknown parameter " + key);
  }

  double number(const std::string& key) const {
    const std::string& s = text(key);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("--" + key + " expects a number, got '" + s + "'");
    return v;
  }

  std::uint64_t integer(const std::string& key) const {
    const std::string& s = text(key);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw UsageError("--" + key + " expects a nonnegative integer, got '" + s + "'");
    return v;
  }

  std::string choice(const std::string& key, std::initializer_list<std::string_view> allowed) const {
    const std::string& s = text(key);
    for (auto a : allowed)
      if (s == a) return s;
    std::string list;
    for (auto a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
    throw UsageError("--" + key + " must be one of " + list + ", got '" + s + "'");
  }
};

struct Output {
  std::string body;
  int code = ok;
};

using Handler = std::function<Output(const Params&, const std::string& command)>;

struct Command {
  std::string group;
  std::string name;
  std::string description;
  std::vector<std::pair<std::string, std::string>> defaults;
  Handler handler;
};

// ------------------------------------------------------------ formatting

Json config_json(const Params& p) {
  Json j = Json::object();
  for (const auto& [k, v] : p.entries) j[k] = v;
  return j;
}

Json envelope(const std::string& command, const Params& p) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = config_json(p);
  return j;
}

std::string csv_header(const std::string& command, const Params& p) {
  std::string h = "# " + std::string(kToolName) + " " + std::string(kVersion) + "\n# command: " + command + "\n";
  for (const auto& [k, v] : p.entries) h += "# " + k + " = " + v + "\n";
  return h;
}

Json report_json(const conjecture::ConjectureReport& r) {
  Json j;
  j["which"] = conjecture::which_name(r.which);
  j["family"] = r.family;
  j["eta"] = r.eta;
  j["K"] = r.k;
  j["cutoff"] = r.cutoff;
  j["entropy_kind"] = r.entropy_kind.label();
  j["unit"] = r.entropy_kind.unit();
  j["input_entropy_bits"] = r.input_entropy;
  j["output_entropy"] = r.output_entropy;
  j["bound"] = r.bound;
  j["margin"] = r.margin;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  Json extras = Json::object();
  for (const auto& [k, v] : r.extras) extras[k] = v;
  j["extras"] = extras;
  return j;
}

Json rate_json(const capacity::RatePoint& p) { return Json{{"R_B_bits", p.rb}, {"R_C_bits", p.rc}}; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ------------------------------------------------------------ commands

Transmissivity eta_of(const Params& p) { return Transmissivity{p.number("eta")}; }

std::string require_json(const Params& p) {
  const auto f = p.choice("format", {"json", "csv"});
  if (f != "json") throw UsageError("this command only writes json");
  return f;
}

capacity::Detection detection_of(const std::string& s) {
  if (s == "homodyne") return capacity::Detection::homodyne;
  if (s == "heterodyne") return capacity::Detection::heterodyne;
  return capacity::Detection::ultimate;
}

capacity::MacConstraint constraint_of(const Params& p) {
  const auto c = p.choice("constraint", {"total-transmit", "total-receive", "per-user"});
  if (c == "total-receive") return capacity::MacConstraint::total_receive;
  if (c == "per-user") return capacity::MacConstraint::per_user;
  return capacity::MacConstraint::total_transmit;
}

Output region_broadcast(const Params& p, const std::string& cmd) {
  const auto det = detection_of(p.choice("detection", {"ultimate", "homodyne", "heterodyne"}));
  const auto format = p.choice("format", {"csv", "json"});
  const auto steps = p.integer("beta-steps");
  if (steps < 2) throw UsageError("--beta-steps must be at least 2");
  const auto grid = capacity::beta_grid(steps);
  const auto curve = capacity::broadcast_region(det, eta_of(p), MeanPhoton{p.number("nbar")}, grid);
  if (format == "csv") {
    std::string s = csv_header(cmd, p) + "beta,R_B_bits,R_C_bits\n";
    for (const auto& pt : curve.points())
      s += format_number(pt.beta) + "," + format_number(pt.rate.rb) + "," + format_number(pt.rate.rc) + "\n";
    return {s};
  }
  Json j = envelope(cmd, p);
  Json pts = Json::array();
  for (const auto& pt : curve.points()) pts.push_back({{"beta", pt.beta}, {"R_B_bits", pt.rate.rb}, {"R_C_bits", pt.rate.rc}});
  j["points"] = pts;
  return {dump(j)};
}

Output region_mac(const Params& p, const std::string& cmd) {
  const auto format = p.choice("format", {"csv", "json"});
  const auto env =
      capacity::mac_envelope(eta_of(p), MeanPhoton{p.number("nbar")}, constraint_of(p), p.integer("beta-steps"));
  if (format == "csv") {
    std::string s = csv_header(cmd, p) + "R1_bits,R2_bits\n";
    for (const auto& pt : env.points) s += format_number(pt.rb) + "," + format_number(pt.rc) + "\n";
    return {s};
  }
  Json j = envelope(cmd, p);
  Json pts = Json::array();
  for (const auto& pt : env.points) pts.push_back({{"R1_bits", pt.rb}, {"R2_bits", pt.rc}});
  j["points"] = pts;
  return {dump(j)};
}

Family family_of(const Params& p) {
  const auto f = p.choice("family", {"poisson", "binomial", "bose-einstein"});
  if (f == "poisson") return Poisson{1.0};
  if (f == "binomial") {
    const auto m = p.integer("trials");
    if (m < 1) throw UsageError("--trials must be positive");
    return Binomial{static_cast<int>(m), 0.1};
  }
  return BoseEinstein{1.0};
}

fock::FockVector state_of(const std::string& s, std::size_t cutoff) {
  if (s == "vacuum") return fock::FockVector::vacuum(cutoff);
  if (s.starts_with("number-")) {
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(s.data() + 7, s.data() + s.size(), n);
    if (ec == std::errc() && ptr == s.data() + s.size()) return fock::FockVector::number(n, cutoff);
  }
  if (s.starts_with("coherent-")) {
    double a = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data() + 9, s.data() + s.size(), a);
    if (ec == std::errc() && ptr == s.data() + s.size()) return fock::coherent_state(a, cutoff);
  }
  throw UsageError("--state must be vacuum, number-<n> or coherent-<alpha>, got '" + s + "'");
}

Output finish_reports(Json j, const std::vector<conjecture::ConjectureReport>& reports) {
  Json arr = Json::array();
  bool all = true;
  for (const auto& r : reports) {
    arr.push_back(report_json(r));
    all = all && r.pass;
  }
  j["reports"] = arr;
  j["all_pass"] = all;
  return {dump(j), all ? ok : claim_violation};
}

Output conjecture_check(const Params& p, const std::string& cmd) {
  require_json(p);
  const auto which = p.choice("which", {"1", "2", "strong2"});
  const Transmissivity eta = eta_of(p);
  const MeanPhoton k{p.number("K")};
  const std::string d_text = p.text("D");
  std::vector<conjecture::ConjectureReport> reports;
  if (which == "2") {
    const std::size_t d = d_text == "auto" ? 200 : p.integer("D");
    reports.push_back(conjecture::check_conj2_family(family_of(p), eta, k, d));
  } else if (which == "1") {
    const std::size_t d = d_text == "auto" ? 40 : p.integer("D");
    const auto kind = conjecture::EntropyKind::parse(p.text("entropy"));
    reports.push_back(conjecture::check_conj1_state(state_of(p.text("state"), d), eta, k, d, kind));
  } else {
    const auto points = p.integer("r-points");
    if (points < 1) throw UsageError("--r-points must be positive");
    const auto grid = gaussian::symmetric_grid(p.number("r-max"), points);
    reports.push_back(conjecture::check_strong2_gaussian(eta, k, grid));
  }
  return finish_reports(envelope(cmd, p), reports);
}

conjecture::AnnealConfig anneal_config(const Params& p) {
  conjecture::AnnealConfig c;
  c.seed = p.integer("seed");
  c.steps = p.integer("steps");
  c.restarts = p.integer("restarts");
  c.initial_temperature = p.number("temperature");
  c.cooling_ratio = p.number("cooling");
  c.proposal_scale = p.number("scale");
  c.cutoff = p.text("D") == "auto" ? 0 : p.integer("D");
  return c;
}

Output conjecture_anneal(const Params& p, const std::string& cmd) {
  require_json(p);
  const auto which = p.choice("which", {"1", "2"});
  const auto cfg = anneal_config(p);
  const Transmissivity eta = eta_of(p);
  const MeanPhoton k{p.number("K")};
  Json j = envelope(cmd, p);
  conjecture::ConjectureReport report;
  if (which == "1") {
    const auto r = conjecture::anneal_conj1(eta, k, cfg);
    report = r.report;
    Json amps = Json::array();
    for (Eigen::Index n = 0; n < r.best_state.amplitudes().size(); ++n)
      amps.push_back({r.best_state.amplitudes()(n).real(), r.best_state.amplitudes()(n).imag()});
    j["best_state_amplitudes"] = amps;
  } else {
    const auto mode = p.choice("mode", {"diagonal", "general"});
    if (mode == "diagonal") {
      const auto start = p.choice("start", {"random", "thermal"});
      const auto r = conjecture::anneal_conj2_diagonal(eta, k, cfg, start == "thermal");
      report = r.report;
      j["best_distribution"] = std::vector<double>(r.best_distribution.probs().begin(), r.best_distribution.probs().end());
    } else {
      const auto r = conjecture::anneal_conj2_general(eta, k, cfg);
      report = r.report;
      Json rows = Json::array();
      const auto& m = r.best_state.entries();
      for (Eigen::Index a = 0; a < m.rows(); ++a) {
        Json row = Json::array();
        for (Eigen::Index b = 0; b < m.cols(); ++b) row.push_back({m(a, b).real(), m(a, b).imag()});
        rows.push_back(row);
      }
      j["best_density_matrix"] = rows;
    }
  }
  return finish_reports(std::move(j), {report});
}

Json lemma_instance_json(const conjecture::LemmaInstance& in) {
  return Json{{"eta", in.eta}, {"nbar", in.nbar}, {"betas", in.betas}, {"nbars", in.nbars}};
}

Output conjecture_lemma(const Params& p, const std::string& cmd) {
  require_json(p);
  const auto s = conjecture::lemma_suite(p.number("eta"), p.number("nbar"), p.integer("instances"), p.integer("seed"));
  Json j = envelope(cmd, p);
  j["evaluated"] = s.evaluated;
  j["holds_count"] = s.holds_count;
  j["infeasible_count"] = s.infeasible_count;
  j["min_slack"] = s.evaluated > s.infeasible_count ? Json(s.min_slack) : Json(nullptr);
  if (s.violation) {
    const auto& v = *s.violation;
    j["violation"] = {{"index", v.index},
                      {"instance", lemma_instance_json(v.instance)},
                      {"beta", v.result.beta},
                      {"lhs", v.result.lhs},
                      {"rhs", v.result.rhs}};
    return {dump(j), claim_violation};
  }
  j["violation"] = nullptr;
  return {dump(j), ok};
}

Output verify_coherent(const Params& p, const std::string& cmd) {
  require_json(p);
  const auto r = capacity::verify_coherent_region_numeric(eta_of(p), MeanPhoton{p.number("nbar")}, p.number("beta"),
                                                          p.integer("D"), p.integer("samples"), p.integer("seed"),
                                                          p.number("threshold"));
  Json j = envelope(cmd, p);
  j["bob_expected_bits"] = r.bob_expected;
  j["charlie_expected_bits"] = r.charlie_expected;
  j["charlie_conditional_expected_bits"] = r.charlie_conditional_expected;
  j["charlie_entropy_bits"] = r.charlie_entropy;
  Json samples = Json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"t", {s.t.real(), s.t.imag()}},
                       {"bob_conditional_bits", s.bob_conditional},
                       {"charlie_conditional_bits", s.charlie_conditional}});
  j["samples"] = samples;
  j["max_residual_bits"] = r.max_residual;
  j["passed"] = r.passed;
  return {dump(j), r.passed ? ok : numeric_failure};
}

std::vector<capacity::RatePoint> boundary_of(const std::string& which, const Params& p) {
  const Transmissivity eta = eta_of(p);
  const MeanPhoton nbar{p.number("nbar")};
  const auto steps = p.integer("beta-steps");
  if (steps < 2) throw UsageError("--beta-steps must be at least 2");
  if (which == "mac") return capacity::mac_envelope(eta, nbar, constraint_of(p), steps - 1).points;
  const auto det = which == "broadcast" ? capacity::Detection::ultimate : detection_of(which);
  return capacity::broadcast_region(det, eta, nbar, capacity::beta_grid(steps)).rates();
}

Output verify_dominance(const Params& p, const std::string& cmd) {
  require_json(p);
  const std::initializer_list<std::string_view> kinds = {"mac", "broadcast", "ultimate", "homodyne", "heterodyne"};
  const auto outer_name = p.choice("outer", kinds);
  const auto inner_name = p.choice("inner", kinds);
  const auto outer = boundary_of(outer_name, p);
  const auto inner = boundary_of(inner_name, p);
  const auto d = capacity::region_dominates(outer, inner, p.number("tolerance"));
  Json j = envelope(cmd, p);
  j["dominates"] = d.dominates;
  j["worst_margin_bits"] = d.worst_margin;
  j["witness"] = d.witness ? rate_json(*d.witness) : Json(nullptr);
  const double ro = capacity::equal_rate_point(outer);
  const double ri = capacity::equal_rate_point(inner);
  j["equal_rate_outer_bits"] = ro;
  j["equal_rate_inner_bits"] = ri;
  j["equal_rate_gap_bits"] = ro - ri;
  return {dump(j), d.dominates ? ok : claim_violation};
}

std::vector<Command> commands() {
  using Defaults = std::vector<std::pair<std::string, std::string>>;
  const Defaults anneal = {{"which", "1"},        {"eta", "0.8"},       {"K", "1"},        {"seed", "0"},
                           {"steps", "2000"},     {"restarts", "8"},    {"temperature", "0.1"},
                           {"cooling", "0.97"},   {"scale", "0.05"},    {"D", "auto"},     {"mode", "diagonal"},
                           {"start", "random"},   {"format", "json"}};
  return {
      {"region", "broadcast", "Broadcast capacity region boundary",
       {{"eta", "0.8"}, {"nbar", "15"}, {"detection", "ultimate"}, {"beta-steps", "201"}, {"format", "csv"}},
       region_broadcast},
      {"region", "mac-envelope", "Envelope of coherent-state MAC regions",
       {{"eta", "0.8"}, {"nbar", "15"}, {"constraint", "total-transmit"}, {"beta-steps", "200"}, {"format", "csv"}},
       region_mac},
      {"conjecture", "check", "Single conjecture check",
       {{"which", "2"},
        {"family", "bose-einstein"},
        {"trials", "20"},
        {"eta", "0.8"},
        {"K", "1"},
        {"D", "auto"},
        {"state", "vacuum"},
        {"entropy", "von_neumann"},
        {"r-points", "41"},
        {"r-max", "1"},
        {"format", "json"}},
       conjecture_check},
      {"conjecture", "anneal", "Simulated-annealing counterexample search", anneal, conjecture_anneal},
      {"conjecture", "lemma", "Monte Carlo test of the converse lemma",
       {{"eta", "0.8"}, {"nbar", "2"}, {"instances", "10000"}, {"seed", "0"}, {"format", "json"}},
       conjecture_lemma},
      {"verify", "coherent-region", "Fock-space check of the coherent-state rate expressions",
       {{"eta", "0.8"},
        {"nbar", "1"},
        {"beta", "0.5"},
        {"D", "40"},
        {"samples", "5"},
        {"seed", "0"},
        {"threshold", "1e-4"},
        {"format", "json"}},
       verify_coherent},
      {"verify", "dominance", "Region dominance comparison",
       {{"outer", "mac"},
        {"inner", "broadcast"},
        {"eta", "0.8"},
        {"nbar", "15"},
        {"constraint", "total-transmit"},
        {"beta-steps", "201"},
        {"tolerance", "1e-9"},
        {"format", "json"}},
       verify_dominance},
  };
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(number) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.starts_with("--")) key.erase(0, 2);
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto table = commands();
  CLI::App app{"Capacity regions and minimum-output-entropy checks for the bosonic broadcast channel",
               std::string(kToolName)};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // Flag storage must outlive parsing; std::map nodes are stable.
  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, std::string> config_paths, out_paths;
  struct Bound {
    const Command* command;
    CLI::App* app;
  };
  std::vector<Bound> bound;
  std::map<std::string, CLI::App*> groups;
  for (const auto& c : table) {
    auto*& group = groups[c.group];
    if (!group) {
      group = app.add_subcommand(c.group, c.group + " commands");
      group->require_subcommand(1);
    }
    auto* sub = group->add_subcommand(c.name, c.description);
    const std::string id = c.group + " " + c.name;
    for (const auto& [key, def] : c.defaults)
      sub->add_option("--" + key, raw[id][key], "default: " + def);
    sub->add_option("--config", config_paths[id], "key = value file; flags override it");
    sub->add_option("--out", out_paths[id], "write the result to this file instead of stdout");
    bound.push_back({&c, sub});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return usage;
  }

  for (const auto& b : bound) {
    if (!b.app->parsed()) continue;
    const Command& c = *b.command;
    const std::string id = c.group + " " + c.name;
    try {
      std::map<std::string, std::string> from_config;
      if (!config_paths[id].empty()) from_config = read_config(config_paths[id]);
      for (const auto& [key, value] : from_config) {
        bool known = false;
        for (const auto& d : c.defaults) known = known || d.first == key;
        if (!known) throw UsageError("config key '" + key + "' is not an option of '" + id + "'");
      }
      Params p;
      for (const auto& [key, def] : c.defaults) {
        std::string value = def;
        if (auto it = from_config.find(key); it != from_config.end()) value = it->second;
        if (b.app->count("--" + key) > 0) value = raw[id][key];
        p.entries.emplace_back(key, value);
      }
      Output o = c.handler(p, id);
      if (out_paths[id].empty()) {
        out << o.body;
      } else {
        std::ofstream f(out_paths[id], std::ios::binary);
        if (!f) throw UsageError("cannot write '" + out_paths[id] + "'");
        f << o.body;
      }
      return o.code;
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n" << b.app->help();
      return usage;
    } catch (const DegradednessError& e) {
      err << "error: " << e.what() << "\n";
      return usage;
    } catch (const DomainError& e) {
      err << "error: " << e.what() << "\n";
      return usage;
    } catch (const TruncationError& e) {
      err << "numeric failure: " << e.what() << "\n";
      return numeric_failure;
    } catch (const CoverageError& e) {
      err << "numeric failure: " << e.what() << "\n";
      return numeric_failure;
    } catch (const InfeasibleError& e) {
      err << "numeric failure: " << e.what() << "\n";
      return numeric_failure;
    } catch (const PhysicalityError& e) {
      err << "numeric failure: " << e.what() << "\n";
      return numeric_failure;
    }
  }
  err << app.help();
  return usage;
}

}  // namespace bbc::cli
