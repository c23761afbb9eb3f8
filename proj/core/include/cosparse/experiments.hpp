#pragma once

#include "cosparse/bounds.hpp"
#include "cosparse/operators.hpp"
#include "cosparse/priors.hpp"
#include "cosparse/solver.hpp"
#include "cosparse/weights.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cosparse {

enum class Scheme { constant, heuristic, near_optimal };

std::string_view scheme_label(Scheme s);
Scheme parse_scheme(std::string_view label);

struct OperatorSpec {
  enum class Kind { random_frame, identity, difference, file };
  Kind kind = Kind::random_frame;
  double row_norm_low = 0.5;
  double row_norm_high = 1.5;
  std::optional<std::uint64_t> seed;  // defaults to a stream of root_seed
  std::string path;                   // kind == file
};

/// Either explicit arrays, a file, or the two-level generator
///   beta_k = beta_high for k < high_count, beta_low otherwise;
///   sigma_k = sign_bias * beta_k.
struct PriorSpec {
  std::optional<Vector> beta;
  std::optional<Vector> sigma;
  std::string path;
  Index high_count = 0;
  double beta_high = 0.3;
  double beta_low = 0.3;
  double sign_bias = 0.0;
};

struct GridSpec {
  double t_lo = 0.1;
  double t_hi = 5.0;
  double lambda_lo = 0.1;
  double lambda_hi = 5.0;
  int resolution = 50;
};

struct ExperimentConfig {
  Index p = 0;
  Index n = 0;
  OperatorSpec op;
  PriorSpec prior;
  std::vector<Index> m_grid;
  std::size_t trials = 100;
  std::vector<Scheme> schemes{Scheme::constant, Scheme::heuristic, Scheme::near_optimal};
  SolverOptions solver;
  DesignOptions design;
  std::uint64_t root_seed = 1;
  std::string output;
  unsigned threads = 1;
  /// Relative error at or below which a trial counts as exact recovery.
  double success_threshold = 1e-4;

  // bound-report
  std::vector<double> etas{0.1, 0.05};
  std::size_t sdim_signals = 3;
  std::size_t sdim_trials = 500;
  GridSpec grid;

  // file-driven subcommands
  std::string signals_path;
  std::string measurement_path;
  std::string observation_path;
  std::string weights_path;
  double rel_threshold = kDefaultSupportThreshold;
};

/// Parses and validates a JSON config. Unknown keys, duplicate keys, missing
/// required keys (p, n, operator.kind) and range violations raise
/// ValidationError naming the key path.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Operator, prior and weight vectors shared by every trial of a run.
struct Experiment {
  AnalysisOperator op;
  Prior prior;
  std::map<Scheme, WeightVector> weights;
  std::optional<DesignResult> design;
};

AnalysisOperator build_operator(const ExperimentConfig& config);
Prior build_prior(const ExperimentConfig& config);
/// Builds the operator and prior and every requested weight vector.
Experiment prepare_experiment(const ExperimentConfig& config);

struct SweepRow {
  Index m = 0;
  std::string scheme;
  double mean_error = 0.0;
  double stderr_error = 0.0;
  double success_rate = 0.0;
  std::size_t trials = 0;
};

/// Thrown when a trial fails; carries the rows of every m completed before it.
class SweepError : public std::runtime_error {
 public:
  SweepError(const std::string& what, std::vector<SweepRow> partial, bool numerical)
      : std::runtime_error(what), partial_(std::move(partial)), numerical_(numerical) {}
  const std::vector<SweepRow>& partial() const { return partial_; }
  bool numerical() const { return numerical_; }

 private:
  std::vector<SweepRow> partial_;
  bool numerical_;
};

/// Monte Carlo recovery sweep over config.m_grid and config.schemes. For each
/// (m, trial) a support, signal and Gaussian A are drawn from a stream split
/// off root_seed by (m, trial), and every scheme solves the same instance.
/// Output is sorted by m, then scheme label, and does not depend on threads.
std::vector<SweepRow> run_recovery_sweep(const ExperimentConfig& config);
std::vector<SweepRow> run_recovery_sweep(const ExperimentConfig& config, const Experiment& exp);

struct SchemeBound {
  Scheme scheme;
  BoundResult expected;
  std::vector<std::pair<double, MeasurementWindow>> windows;  // (eta, window)
};

struct SignalBound {
  std::size_t signal = 0;
  Scheme scheme;
  BoundResult lemma1;
  SdimEstimate sdim;
};

/// Fixed-signal objective on a (t, lambda) grid.
struct ObjectiveGrid {
  std::vector<double> t;
  std::vector<double> lambda;
  Matrix values;  // values(i, j) at (t[i], lambda[j])
};

struct BoundReport {
  Index n = 0;
  std::vector<SchemeBound> schemes;
  std::vector<SignalBound> signals;
  ObjectiveGrid grid;
};

BoundReport run_bound_report(const ExperimentConfig& config);
BoundReport run_bound_report(const ExperimentConfig& config, const Experiment& exp);

std::string bound_report_to_json(const BoundReport& report);
/// gnuplot "splot" layout: "t lambda value" rows, blank line between t blocks.
std::string format_grid(const ObjectiveGrid& grid);

/// Header m,scheme,mean_error,stderr,success_rate,trials; reals at 17
/// significant digits; rows sorted by m then scheme.
std::string format_csv(std::vector<SweepRow> rows);
std::vector<SweepRow> parse_csv(const std::string& text);
void emit_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

}  // namespace cosparse
