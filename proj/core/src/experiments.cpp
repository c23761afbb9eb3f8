#include "cosparse/experiments.hpp"

#include "cosparse/errors.hpp"
#include "cosparse/parallel.hpp"
#include "cosparse/text_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace cosparse {
namespace {

constexpr std::uint64_t kOperatorStream = 1;
constexpr std::uint64_t kTrialStream = 2;
constexpr std::uint64_t kSignalStream = 3;
constexpr std::uint64_t kSdimStream = 4;

struct TrialOutcome {
  std::vector<double> errors;
  std::vector<char> success;
};

std::string trial_context(Index m, std::size_t trial) {
  return "m=" + std::to_string(m) + ", trial=" + std::to_string(trial);
}

}  // namespace

AnalysisOperator build_operator(const ExperimentConfig& config) {
  const auto& spec = config.op;
  switch (spec.kind) {
    case OperatorSpec::Kind::identity:
      return identity_operator(config.n);
    case OperatorSpec::Kind::difference:
      return difference_operator(config.n);
    case OperatorSpec::Kind::file: {
      AnalysisOperator op(io::read_matrix(spec.path));
      if (op.rows() != config.p || op.cols() != config.n) {
        throw ValidationError("operator file '" + spec.path + "' is " +
                              std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                              ", config says " + std::to_string(config.p) + "x" +
                              std::to_string(config.n));
      }
      return op;
    }
    case OperatorSpec::Kind::random_frame:
      break;
  }
  Rng rng = spec.seed ? Rng(*spec.seed) : Rng(config.root_seed).split(kOperatorStream);
  return gen_random_frame(config.p, config.n, spec.row_norm_low, spec.row_norm_high, rng);
}

Prior build_prior(const ExperimentConfig& config) {
  const auto& spec = config.prior;
  Prior prior;
  if (spec.beta) {
    prior = make_prior(*spec.beta, *spec.sigma);
  } else if (!spec.path.empty()) {
    prior = io::read_prior(spec.path);
  } else {
    Vector beta(config.p);
    for (Index k = 0; k < config.p; ++k) {
      beta(k) = k < spec.high_count ? spec.beta_high : spec.beta_low;
    }
    prior = make_prior(beta, spec.sign_bias * beta);
  }
  if (prior.size() != config.p) {
    throw ValidationError("prior length " + std::to_string(prior.size()) + " does not match p=" +
                          std::to_string(config.p));
  }
  return prior;
}

Experiment prepare_experiment(const ExperimentConfig& config) {
  Experiment exp{build_operator(config), build_prior(config), {}, std::nullopt};
  for (Scheme s : config.schemes) {
    switch (s) {
      case Scheme::constant:
        exp.weights.emplace(s, constant_weights(config.p));
        break;
      case Scheme::heuristic:
        exp.weights.emplace(s, heuristic_weights(exp.prior));
        break;
      case Scheme::near_optimal: {
        exp.design = design_weights(exp.op, exp.prior, config.design);
        exp.weights.emplace(s, exp.design->weights);
        break;
      }
    }
  }
  return exp;
}

std::vector<SweepRow> run_recovery_sweep(const ExperimentConfig& config) {
  return run_recovery_sweep(config, prepare_experiment(config));
}

std::vector<SweepRow> run_recovery_sweep(const ExperimentConfig& config, const Experiment& exp) {
  std::vector<Scheme> schemes = config.schemes;
  std::sort(schemes.begin(), schemes.end(),
            [](Scheme a, Scheme b) { return scheme_label(a) < scheme_label(b); });
  std::vector<Index> grid = config.m_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const Rng trial_root = Rng(config.root_seed).split(kTrialStream);
  std::vector<SweepRow> rows;
  for (Index m : grid) {
    std::vector<TrialOutcome> outcomes(config.trials);
    try {
      parallel_for(config.trials, config.threads, [&](std::size_t trial) {
        Rng rng = trial_root.split(static_cast<std::uint64_t>(m)).split(trial);
        const SupportSet support = sample_support(exp.prior, exp.op, rng);
        const Vector x = sample_signal(exp.op, support, rng);
        const Matrix a = gaussian_measurements(config.n, m, rng);
        const Vector y = a * x;
        const AnalysisL1Solver solver(exp.op, a);
        TrialOutcome out;
        for (Scheme s : schemes) {
          try {
            const SolverResult res = solver.solve(exp.weights.at(s), y, config.solver);
            const double err = recovery_error(x, res);
            out.errors.push_back(err);
            out.success.push_back(err <= config.success_threshold * x.norm() ? 1 : 0);
          } catch (const std::exception& e) {
            throw NumericalError(trial_context(m, trial) + ", scheme=" +
                                 std::string(scheme_label(s)) + ": " + e.what());
          }
        }
        outcomes[trial] = std::move(out);
      });
    } catch (const ValidationError& e) {
      throw SweepError(std::string(e.what()) + " (m=" + std::to_string(m) + ")", rows, false);
    } catch (const std::exception& e) {
      throw SweepError(std::string(e.what()) + " (m=" + std::to_string(m) + ")", rows, true);
    }

    for (std::size_t si = 0; si < schemes.size(); ++si) {
      RunningStats stats;
      std::size_t successes = 0;
      for (const auto& o : outcomes) {
        stats.add(o.errors[si]);
        successes += static_cast<std::size_t>(o.success[si]);
      }
      rows.push_back(SweepRow{m, std::string(scheme_label(schemes[si])), stats.mean(),
                              stats.stderr_of_mean(),
                              static_cast<double>(successes) / static_cast<double>(config.trials),
                              config.trials});
    }
  }
  return rows;
}

BoundReport run_bound_report(const ExperimentConfig& config) {
  return run_bound_report(config, prepare_experiment(config));
}

BoundReport run_bound_report(const ExperimentConfig& config, const Experiment& exp) {
  BoundReport report;
  report.n = exp.op.cols();
  for (Scheme s : config.schemes) {
    SchemeBound sb{s, expected_bound(exp.op, exp.prior, exp.weights.at(s)), {}};
    for (double eta : config.etas) {
      sb.windows.emplace_back(eta, predicted_measurements(sb.expected.value, exp.op.cols(), eta));
    }
    report.schemes.push_back(std::move(sb));
  }

  const Rng signal_root = Rng(config.root_seed).split(kSignalStream);
  const Rng sdim_root = Rng(config.root_seed).split(kSdimStream);
  std::vector<Vector> signals;
  for (std::size_t k = 0; k < std::max<std::size_t>(config.sdim_signals, 1); ++k) {
    Rng rng = signal_root.split(k);
    const SupportSet support = sample_support(exp.prior, exp.op, rng);
    signals.push_back(sample_signal(exp.op, support, rng));
  }
  for (std::size_t k = 0; k < config.sdim_signals; ++k) {
    for (Scheme s : config.schemes) {
      const auto& v = exp.weights.at(s);
      SignalBound sb;
      sb.signal = k;
      sb.scheme = s;
      sb.lemma1 = lemma1_bound(exp.op, v, signals[k]);
      sb.sdim = empirical_sdim(exp.op, v, signals[k], config.sdim_trials, sdim_root.split(k),
                               config.threads);
      report.signals.push_back(sb);
    }
  }

  const auto& g = config.grid;
  const WeightVector ones = constant_weights(exp.op.rows());
  Vector pattern = Vector::Zero(exp.op.rows());
  {
    const Vector d = exp.op.apply(signals.front());
    for (Index k : support_of(d).indices) pattern(k) = sign_of(d(k));
  }
  const double n = static_cast<double>(exp.op.cols());
  report.grid.values.resize(g.resolution, g.resolution);
  for (int i = 0; i < g.resolution; ++i) {
    const double frac = static_cast<double>(i) / (g.resolution - 1);
    report.grid.t.push_back(g.t_lo + frac * (g.t_hi - g.t_lo));
    report.grid.lambda.push_back(g.lambda_lo + frac * (g.lambda_hi - g.lambda_lo));
  }
  for (int i = 0; i < g.resolution; ++i) {
    const auto terms = lemma1_terms(exp.op, ones, pattern, report.grid.t[i]);
    for (int j = 0; j < g.resolution; ++j) {
      report.grid.values(i, j) = terms.at(n, report.grid.lambda[j]);
    }
  }
  return report;
}

std::string bound_report_to_json(const BoundReport& report) {
  using nlohmann::ordered_json;
  auto bound_json = [](const BoundResult& r) {
    return ordered_json::parse(io::bound_result_to_json(r));
  };
  ordered_json j;
  j["n"] = report.n;
  j["schemes"] = ordered_json::array();
  for (const auto& s : report.schemes) {
    ordered_json e;
    e["scheme"] = std::string(scheme_label(s.scheme));
    e["expected_bound"] = bound_json(s.expected);
    e["windows"] = ordered_json::array();
    for (const auto& [eta, w] : s.windows) {
      e["windows"].push_back({{"eta", eta}, {"m_low", w.m_low}, {"m_high", w.m_high}});
    }
    j["schemes"].push_back(e);
  }
  j["signals"] = ordered_json::array();
  for (const auto& s : report.signals) {
    ordered_json e;
    e["signal"] = s.signal;
    e["scheme"] = std::string(scheme_label(s.scheme));
    e["lemma1_bound"] = bound_json(s.lemma1);
    e["empirical_sdim"] = {{"estimate", s.sdim.estimate},
                           {"stderr", s.sdim.standard_error},
                           {"trials", s.sdim.trials},
                           {"nonconverged", s.sdim.nonconverged}};
    j["signals"].push_back(e);
  }
  if (report.grid.values.size() > 0) {
    Index bi = 0;
    Index bj = 0;
    report.grid.values.minCoeff(&bi, &bj);
    const Index last = report.grid.values.rows() - 1;
    j["grid"] = {{"t_points", report.grid.t.size()},
                 {"lambda_points", report.grid.lambda.size()},
                 {"min_t", report.grid.t[bi]},
                 {"min_lambda", report.grid.lambda[bj]},
                 {"min_value", report.grid.values(bi, bj)},
                 {"interior_min", bi > 0 && bi < last && bj > 0 && bj < last}};
  }
  return j.dump(2) + "\n";
}

std::string format_grid(const ObjectiveGrid& grid) {
  std::string out = "# t lambda objective\n";
  for (std::size_t i = 0; i < grid.t.size(); ++i) {
    for (std::size_t j = 0; j < grid.lambda.size(); ++j) {
      out += io::format_real(grid.t[i]) + ' ' + io::format_real(grid.lambda[j]) + ' ' +
             io::format_real(grid.values(static_cast<Index>(i), static_cast<Index>(j))) + '\n';
    }
    out += '\n';
  }
  return out;
}

std::string format_csv(std::vector<SweepRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.m != b.m ? a.m < b.m : a.scheme < b.scheme;
  });
  std::string out = "m,scheme,mean_error,stderr,success_rate,trials\n";
  for (const auto& r : rows) {
    out += std::to_string(r.m) + ',' + r.scheme + ',' + io::format_real(r.mean_error) + ',' +
           io::format_real(r.stderr_error) + ',' + io::format_real(r.success_rate) + ',' +
           std::to_string(r.trials) + '\n';
  }
  return out;
}

std::vector<SweepRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "m,scheme,mean_error,stderr,success_rate,trials") {
    throw ValidationError("sweep csv: unexpected header");
  }
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) {
      throw ValidationError("sweep csv line " + std::to_string(line_no) + ": expected 6 fields");
    }
    try {
      rows.push_back(SweepRow{std::stol(cells[0]), cells[1], std::stod(cells[2]),
                              std::stod(cells[3]), std::stod(cells[4]),
                              static_cast<std::size_t>(std::stoul(cells[5]))});
    } catch (const std::logic_error&) {
      throw ValidationError("sweep csv line " + std::to_string(line_no) + ": bad number");
    }
  }
  return rows;
}

void emit_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  io::write_text(path, format_csv(rows));
}

}  // namespace cosparse
