// cosparse: command-line front end for operator generation, prior
// estimation, weight design, single solves, bound reports and sweeps.
#include "cosparse/errors.hpp"
#include "cosparse/experiments.hpp"
#include "cosparse/text_io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kNumerical = 3;

struct CommonArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<unsigned> threads;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config, "JSON experiment config")->required();
  sub->add_option("--seed", args.seed, "root seed (overrides config)");
  sub->add_option("--out", args.out, "output path (overrides config)");
  sub->add_option("--threads", args.threads, "worker threads (overrides config)")
      ->check(CLI::PositiveNumber);
}

cosparse::ExperimentConfig load(const CommonArgs& args) {
  auto cfg = cosparse::load_config(args.config);
  if (args.seed) cfg.root_seed = *args.seed;
  if (args.threads) cfg.threads = *args.threads;
  if (!args.out.empty()) cfg.output = args.out;
  return cfg;
}

// Empty output path means stdout.
void emit(const cosparse::ExperimentConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    cosparse::io::write_text(cfg.output, text);
  }
}

std::string require(const std::string& value, const char* key) {
  if (value.empty()) throw cosparse::ValidationError(std::string("config: missing '") + key + "'");
  return value;
}

int gen_operator(const CommonArgs& args) {
  auto cfg = load(args);
  // --seed picks the frame directly, so the same seed gives the same frame
  // whatever the rest of the config says.
  if (args.seed) cfg.op.seed = *args.seed;
  emit(cfg, cosparse::io::format_matrix(cosparse::build_operator(cfg).omega()));
  return kOk;
}

int estimate_prior(const CommonArgs& args) {
  const auto cfg = load(args);
  const auto op = cosparse::build_operator(cfg);
  const auto signals = cosparse::io::read_vectors(require(cfg.signals_path, "signals_path"));
  const auto prior = cosparse::estimate_prior(signals, op, cfg.rel_threshold);
  emit(cfg, cosparse::io::prior_to_json(prior));
  return kOk;
}

int design(const CommonArgs& args) {
  const auto cfg = load(args);
  const auto op = cosparse::build_operator(cfg);
  const auto prior = cosparse::build_prior(cfg);
  const auto res = cosparse::design_weights(op, prior, cfg.design);
  std::string line;
  for (cosparse::Index i = 0; i < res.weights.size(); ++i) {
    if (i) line += ',';
    line += cosparse::io::format_real(res.weights(i));
  }
  emit(cfg, line + '\n');
  if (!cfg.output.empty()) cosparse::io::write_history(cfg.output + ".history", res.history);
  std::cerr << "design: " << res.sweeps << " sweeps, cost " << res.history.front() << " -> "
            << res.history.back() << '\n';
  return kOk;
}

int solve(const CommonArgs& args) {
  const auto cfg = load(args);
  const auto op = cosparse::build_operator(cfg);
  const cosparse::Matrix a = cosparse::io::read_matrix(require(cfg.measurement_path, "measurement_path"));
  const cosparse::Vector y = cosparse::io::read_vector(require(cfg.observation_path, "observation_path"));
  const cosparse::WeightVector v = cfg.weights_path.empty()
                                       ? cosparse::constant_weights(op.rows())
                                       : cosparse::WeightVector(cosparse::io::read_vector(cfg.weights_path));
  const auto res = cosparse::solve_weighted_l1_analysis({op, v, a, y}, cfg.solver);
  emit(cfg, cosparse::io::format_solver_result(res));
  if (res.status == cosparse::SolveStatus::infeasible) {
    std::cerr << "solve: measurements are inconsistent (no z with Az = y)\n";
    return kNumerical;
  }
  if (res.status == cosparse::SolveStatus::max_iters) {
    std::cerr << "solve: iteration limit reached, split residual " << res.split_residual << '\n';
    return kNumerical;
  }
  return kOk;
}

int bound_report(const CommonArgs& args) {
  const auto cfg = load(args);
  const auto report = cosparse::run_bound_report(cfg);
  emit(cfg, cosparse::bound_report_to_json(report));
  if (!cfg.output.empty()) cosparse::io::write_text(cfg.output + ".grid.dat", cosparse::format_grid(report.grid));
  return kOk;
}

int sweep(const CommonArgs& args) {
  const auto cfg = load(args);
  try {
    emit(cfg, cosparse::format_csv(cosparse::run_recovery_sweep(cfg)));
  } catch (const cosparse::SweepError& e) {
    if (!cfg.output.empty()) cosparse::emit_csv(e.partial(), cfg.output);
    std::cerr << "sweep aborted: " << e.what() << " (" << e.partial().size()
              << " rows written)\n";
    return e.numerical() ? kNumerical : kValidation;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted l1 analysis recovery experiments"};
  app.require_subcommand(1);

  CommonArgs args;
  int (*handler)(const CommonArgs&) = nullptr;
  auto add = [&](const char* name, const char* help, int (*fn)(const CommonArgs&)) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, args);
    sub->callback([&handler, fn] { handler = fn; });
  };
  add("gen-operator", "write an analysis operator", gen_operator);
  add("estimate-prior", "estimate support/sign statistics from example signals", estimate_prior);
  add("design-weights", "minimize the expected bound over the weights", design);
  add("solve", "solve one weighted l1 analysis problem", solve);
  add("bound-report", "expected bounds, measurement windows and objective grid", bound_report);
  add("sweep", "Monte Carlo recovery sweep over m and weight schemes", sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    return handler(args);
  } catch (const cosparse::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const cosparse::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}
