// nlbox command line: generate behavior boxes, sweep CHSH curves, solve for
// rule powers, and cross-check the generator against its oracles.
//
// Exit codes: 0 success, 1 internal error, 2 usage/range error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlbox/analysis.hpp"
#include "nlbox/boxgen.hpp"
#include "nlbox/core.hpp"
#include "nlbox/oracle.hpp"
#include "nlbox/rules.hpp"

namespace {

using nlohmann::json;

// Angles accept decimal radians or rational multiples of pi: "pi", "pi/4",
// "11pi/8", "3*pi/8", "-pi/2", "0.5pi".
double parse_angle(const std::string& raw) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos == raw.size()) return v;
  } catch (const std::exception&) {
  }
  static const std::regex pi_form(
      R"(^\s*([+-]?)\s*([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)",
      std::regex::icase);
  std::smatch m;
  if (!std::regex_match(raw, m, pi_form)) {
    throw std::invalid_argument("cannot parse angle: " + raw);
  }
  const double mult = m[2].str().empty() ? 1.0 : std::stod(m[2].str());
  const double div = m[3].matched ? std::stod(m[3].str()) : 1.0;
  if (div == 0.0) throw std::invalid_argument("zero divisor in angle: " + raw);
  const double v = mult * std::numbers::pi / div;
  return m[1].str() == "-" ? -v : v;
}

nlbox::ProbabilityRule parse_rule(const std::string& raw) {
  if (raw == "inf" || raw == "infinity") return nlbox::ProbabilityRule::infinite();
  std::size_t pos = 0;
  double n = 0.0;
  try {
    n = std::stod(raw, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse power: " + raw);
  }
  if (pos != raw.size()) throw std::invalid_argument("cannot parse power: " + raw);
  return nlbox::ProbabilityRule::power(n);
}

std::vector<std::string> split_csv_tokens(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream in(list);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& data, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  out << data;
}

json rule_to_json(const nlbox::ProbabilityRule& rule) {
  if (rule.is_infinite()) return json("inf");
  return json(rule.exponent());
}

struct GenerateOptions {
  bool bell = false;
  std::optional<double> alpha2;
  std::string theta;
  std::string theta_tilde;
  std::string n = "2";
  bool csv = false;
  std::string out_path;
  double tol = nlbox::kDefaultNoSignalingTol;
};

int run_generate(const GenerateOptions& opt) {
  if (opt.bell && opt.alpha2) {
    throw std::invalid_argument("--bell and --alpha2 are mutually exclusive");
  }
  const nlbox::TwoQubitState state =
      opt.alpha2 ? nlbox::TwoQubitState::from_alpha_squared(*opt.alpha2)
                 : nlbox::TwoQubitState::bell();
  const nlbox::MeasurementConfig cfg{parse_angle(opt.theta),
                                     parse_angle(opt.theta_tilde)};
  const nlbox::ProbabilityRule rule = parse_rule(opt.n);

  const nlbox::BehaviorBox box = nlbox::joint_distribution(state, cfg, rule);
  const auto ns = nlbox::no_signaling_report(box, opt.tol);
  const auto chsh = nlbox::chsh_value(box);
  const bool isotropic = nlbox::isotropy_check(box, 1e-9);
  const double distance = nlbox::pr_distance(box);

  if (opt.csv) {
    emit(box.to_csv(), opt.out_path);
    std::fprintf(stderr, "no-signaling: %s (max residual %.3e, tol %.1e)\n",
                 ns.passed ? "PASS" : "FAIL - SIGNALING", ns.max_violation(),
                 ns.tolerance);
    std::fprintf(stderr, "chsh: %.12g (minus on x=%d,y=%d)\n", chsh.value,
                 chsh.minus_x, chsh.minus_y);
    std::fprintf(stderr, "isotropic: %s\n", isotropic ? "yes" : "no");
    std::fprintf(stderr, "pr-distance: %.12g\n", distance);
    return 0;
  }

  json constraints = json::array();
  for (const auto& c : ns.constraints) {
    constraints.push_back(
        {{"receiver", c.receiver == nlbox::Party::kBob ? "bob" : "alice"},
         {"output", c.output},
         {"setting", c.setting},
         {"residual", c.residual}});
  }
  const json doc = {
      {"state", opt.alpha2 ? json{{"alpha2", *opt.alpha2}} : json{{"bell", true}}},
      {"theta", cfg.theta()},
      {"theta_tilde", cfg.theta_tilde()},
      {"n", rule_to_json(rule)},
      {"box", box.to_json()},
      {"analysis",
       {{"no_signaling",
         {{"passed", ns.passed},
          {"max_violation_alice_to_bob", ns.max_violation_alice_to_bob},
          {"max_violation_bob_to_alice", ns.max_violation_bob_to_alice},
          {"tolerance", ns.tolerance},
          {"constraints", constraints}}},
        {"chsh",
         {{"value", chsh.value},
          {"correlators", chsh.correlators},
          {"minus_setting", {chsh.minus_x, chsh.minus_y}}}},
        {"isotropic", isotropic},
        {"pr_distance", distance}}}};
  emit(doc.dump(2) + "\n", opt.out_path);
  return 0;
}

struct SweepOptions {
  std::string mode = "bell";
  std::string theta;
  std::string theta_tilde;
  std::string n = "10";
  std::optional<std::string> grid;
  std::optional<double> min;
  std::optional<double> max;
  int steps = 0;
  std::string out_path;
};

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw std::invalid_argument("--steps must be >= 1");
  std::vector<double> out;
  out.reserve(steps);
  if (steps == 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < steps; ++i) {
    out.push_back(lo + (hi - lo) * i / (steps - 1));
  }
  return out;
}

int run_sweep_n(const SweepOptions& opt) {
  std::vector<nlbox::ProbabilityRule> rules;
  std::vector<std::string> labels;
  if (opt.grid) {
    for (const auto& token : split_csv_tokens(*opt.grid)) {
      rules.push_back(parse_rule(token));
      labels.push_back(rules.back().is_infinite()
                           ? "inf"
                           : format_value(rules.back().exponent()));
    }
  } else if (opt.min && opt.max) {
    for (double n : linspace(*opt.min, *opt.max, opt.steps)) {
      rules.push_back(nlbox::ProbabilityRule::power(n));
      labels.push_back(format_value(n));
    }
  } else {
    throw std::invalid_argument("sweep-n needs --grid or --min/--max/--steps");
  }

  const bool observables = opt.mode == "chsh-observables";
  if (!observables && opt.mode != "bell") {
    throw std::invalid_argument("unknown mode: " + opt.mode);
  }
  double theta = 0.0, theta_tilde = 0.0;
  if (!observables && !rules.empty()) {
    theta = parse_angle(opt.theta);
    theta_tilde = parse_angle(opt.theta_tilde);
  }

  std::string data = "n,chsh\n";
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const double value =
        observables
            ? nlbox::chsh_observables_closed_form(rules[i])
            : nlbox::chsh_value(nlbox::bell_closed_form(theta, theta_tilde, rules[i]))
                  .value;
    data += labels[i] + "," + format_value(value) + "\n";
  }
  emit(data, opt.out_path);
  return 0;
}

int run_sweep_angle(const SweepOptions& opt) {
  std::vector<double> grid;
  if (opt.grid) {
    for (const auto& token : split_csv_tokens(*opt.grid)) {
      grid.push_back(parse_angle(token));
    }
  } else if (opt.min && opt.max) {
    grid = linspace(*opt.min, *opt.max, opt.steps);
  } else {
    throw std::invalid_argument("sweep-angle needs --grid or --min/--max/--steps");
  }
  const double theta = parse_angle(opt.theta);
  const nlbox::ProbabilityRule rule = parse_rule(opt.n);

  std::string data = "theta_tilde,chsh\n";
  for (double theta_tilde : grid) {
    const double value =
        nlbox::chsh_value(nlbox::bell_closed_form(theta, theta_tilde, rule)).value;
    data += format_value(theta_tilde) + "," + format_value(value) + "\n";
  }
  emit(data, opt.out_path);
  return 0;
}

int run_solve(const std::string& target_text) {
  double target = 0.0;
  if (target_text == "trivial-cc") {
    target = 4.0 * std::sqrt(2.0 / 3.0);
  } else {
    std::size_t pos = 0;
    try {
      target = std::stod(target_text, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse target: " + target_text);
    }
    if (pos != target_text.size()) {
      throw std::invalid_argument("cannot parse target: " + target_text);
    }
  }
  std::printf("%.12g\n", nlbox::solve_power_for_chsh(target));
  return 0;
}

struct VerifyOptions {
  std::uint64_t shots = 100000;
  std::uint64_t seed = 1;
  std::string scenario = "bell-n2";
};

int run_verify(const VerifyOptions& opt) {
  if (opt.shots == 0) throw std::invalid_argument("--shots must be >= 1");

  nlbox::TwoQubitState state = nlbox::TwoQubitState::bell();
  nlbox::ProbabilityRule rule = nlbox::ProbabilityRule::born();
  if (opt.scenario == "signaling") {
    state = nlbox::TwoQubitState::from_alpha_squared(0.8);
    rule = nlbox::ProbabilityRule::power(4);
  } else if (opt.scenario != "bell-n2") {
    throw std::invalid_argument("unknown scenario: " + opt.scenario);
  }
  const nlbox::MeasurementConfig cfg{std::numbers::pi / 2.0,
                                     3.0 * std::numbers::pi / 2.0};

  bool pass = true;

  // Born oracle vs sequential generator at n = 2.
  double born_residual = 0.0;
  {
    const auto seq = nlbox::joint_distribution(state, cfg, nlbox::ProbabilityRule::born());
    const auto ref = nlbox::born_oracle(state, cfg);
    for (int i = 0; i < 16; ++i) {
      born_residual = std::max(
          born_residual, std::abs(seq.cells()[i] - ref.cells()[i]));
    }
  }
  std::printf("born-oracle residual: %.3e (tol 1e-10)\n", born_residual);
  pass = pass && born_residual < 1e-10;

  // Monte Carlo frequencies vs the sequential probabilities.
  const auto reference = nlbox::joint_distribution(state, cfg, rule);
  const auto sampled = nlbox::mc_sampler(state, cfg, rule, opt.shots, opt.seed);
  double worst_z = 0.0;
  bool mc_ok = true;
  for (int i = 0; i < 16; ++i) {
    const double p = reference.cells()[i];
    const double dev = std::abs(sampled.box.cells()[i] - p);
    const double sigma =
        std::sqrt(p * (1.0 - p) / static_cast<double>(opt.shots));
    if (sigma == 0.0) {
      mc_ok = mc_ok && dev == 0.0;
    } else {
      worst_z = std::max(worst_z, dev / sigma);
    }
  }
  mc_ok = mc_ok && worst_z <= 4.0;
  std::printf("monte-carlo worst z-score: %.2f (%llu shots, seed %llu)\n",
              worst_z, static_cast<unsigned long long>(opt.shots),
              static_cast<unsigned long long>(opt.seed));
  pass = pass && mc_ok;

  std::printf("verify: %s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipartite behavior boxes from sequentially measured two-qubit "
               "states under a power-law outcome rule"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand(
      "generate", "Generate a behavior box and its analysis summary");
  generate->add_flag("--bell", gen.bell, "Use the |alpha| = |beta| state (default)");
  generate->add_option("--alpha2", gen.alpha2, "|alpha|^2 of the shared state");
  generate->add_option("--theta", gen.theta, "Alice's x=1 axis (radians or pi token)")
      ->required();
  generate
      ->add_option("--theta-tilde", gen.theta_tilde,
                   "Bob's y=1 axis (radians or pi token)")
      ->required();
  generate->add_option("--n", gen.n, "Rule power (>= 0, or 'inf')");
  generate->add_flag("--csv", gen.csv, "Emit the box as CSV instead of JSON");
  generate->add_option("--out", gen.out_path, "Write the box to a file");
  generate->add_option("--tol", gen.tol, "No-signaling tolerance");

  SweepOptions sweep_n;
  auto* sweepn = app.add_subcommand("sweep-n", "CHSH value over a grid of powers");
  sweepn->add_option("--mode", sweep_n.mode, "bell | chsh-observables");
  sweepn->add_option("--theta", sweep_n.theta, "Alice's x=1 axis (bell mode)");
  sweepn->add_option("--theta-tilde", sweep_n.theta_tilde, "Bob's y=1 axis (bell mode)");
  sweepn->add_option("--grid", sweep_n.grid, "Comma-separated powers ('' for none)");
  sweepn->add_option("--min", sweep_n.min, "Grid start");
  sweepn->add_option("--max", sweep_n.max, "Grid end");
  sweepn->add_option("--steps", sweep_n.steps, "Grid point count");
  sweepn->add_option("--out", sweep_n.out_path, "Write CSV to a file");

  SweepOptions sweep_a;
  auto* sweepa = app.add_subcommand("sweep-angle",
                                    "CHSH value over a grid of Bob angles");
  sweepa->add_option("--theta", sweep_a.theta, "Alice's x=1 axis")->required();
  sweepa->add_option("--n", sweep_a.n, "Rule power (>= 0, or 'inf')");
  sweepa->add_option("--grid", sweep_a.grid, "Comma-separated angles ('' for none)");
  sweepa->add_option("--min", sweep_a.min, "Grid start (radians)");
  sweepa->add_option("--max", sweep_a.max, "Grid end (radians)");
  sweepa->add_option("--steps", sweep_a.steps, "Grid point count");
  sweepa->add_option("--out", sweep_a.out_path, "Write CSV to a file");

  std::string target;
  auto* solve = app.add_subcommand(
      "solve", "Rule power whose CHSH-observables value hits a target");
  solve->add_option("--target", target, "CHSH target in (0, 4), or 'trivial-cc'")
      ->required();

  VerifyOptions verify;
  auto* verifyc = app.add_subcommand("verify", "Run the oracle cross-checks");
  verifyc->add_option("--shots", verify.shots, "Monte Carlo shots");
  verifyc->add_option("--seed", verify.seed, "Sampler seed");
  verifyc->add_option("--scenario", verify.scenario, "bell-n2 | signaling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (generate->parsed()) return run_generate(gen);
    if (sweepn->parsed()) return run_sweep_n(sweep_n);
    if (sweepa->parsed()) return run_sweep_angle(sweep_a);
    if (solve->parsed()) return run_solve(target);
    if (verifyc->parsed()) return run_verify(verify);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 1;
}
