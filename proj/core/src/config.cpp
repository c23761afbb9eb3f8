#include "cosparse/errors.hpp"
#include "cosparse/experiments.hpp"
#include "cosparse/text_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <set>

namespace cosparse {
namespace {

using nlohmann::json;

// Parses with a callback that rejects repeated keys inside one object.
json parse_strict(const std::string& text) {
  std::vector<std::set<std::string>> seen;
  std::vector<std::string> path;
  auto cb = [&](int /*depth*/, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        seen.emplace_back();
        break;
      case json::parse_event_t::object_end:
        if (!seen.empty()) seen.pop_back();
        break;
      case json::parse_event_t::key: {
        const auto key = parsed.get<std::string>();
        if (!seen.empty() && !seen.back().insert(key).second) {
          throw ValidationError("config: duplicate key '" + key + "'");
        }
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text, cb);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ValidationError(path_ + ": expected an object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    for (const auto& [key, _] : j_.items()) {
      const bool known = std::any_of(keys.begin(), keys.end(),
                                     [&](const char* k) { return key == k; });
      if (!known) throw ValidationError(path_ + "." + key + ": unknown key");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }
  std::string key_path(const char* key) const { return path_ + "." + key; }
  const json& raw(const char* key) const { return j_.at(key); }
  Node child(const char* key) const { return Node(j_.at(key), key_path(key)); }

  double real(const char* key, double fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_number()) throw ValidationError(key_path(key) + ": expected a number");
    return v.get<double>();
  }

  std::int64_t integer(const char* key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_number_integer()) throw ValidationError(key_path(key) + ": expected an integer");
    return v.get<std::int64_t>();
  }

  std::uint64_t unsigned_integer(const char* key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                   v.get<std::int64_t>() < 0)) {
      throw ValidationError(key_path(key) + ": expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::string string(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_string()) throw ValidationError(key_path(key) + ": expected a string");
    return v.get<std::string>();
  }

  Vector reals(const char* key) const {
    const auto& v = j_.at(key);
    if (!v.is_array()) throw ValidationError(key_path(key) + ": expected an array");
    Vector out(static_cast<Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        throw ValidationError(key_path(key) + "[" + std::to_string(i) + "]: expected a number");
      }
      out(static_cast<Index>(i)) = v[i].get<double>();
    }
    return out;
  }

 private:
  const json& j_;
  std::string path_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

}  // namespace

std::string_view scheme_label(Scheme s) {
  switch (s) {
    case Scheme::constant:
      return "constant";
    case Scheme::heuristic:
      return "heuristic";
    case Scheme::near_optimal:
      return "near_optimal";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view label) {
  if (label == "constant") return Scheme::constant;
  if (label == "heuristic") return Scheme::heuristic;
  if (label == "near_optimal") return Scheme::near_optimal;
  throw ValidationError("unknown weight scheme '" + std::string(label) + "'");
}

ExperimentConfig parse_config(const std::string& text) {
  const json doc = parse_strict(text);
  const Node root(doc, "config");
  root.allow({"p", "n", "operator", "prior", "m_grid", "trials", "weight_schemes", "solver",
              "design", "root_seed", "output", "threads", "success_threshold", "etas",
              "sdim_signals", "sdim_trials", "grid", "signals_path", "measurement_path",
              "observation_path", "weights_path", "rel_threshold"});

  ExperimentConfig c;
  for (const char* key : {"p", "n", "operator"}) {
    require(root.has(key), root.key_path(key) + ": missing required key");
  }
  c.p = root.integer("p", 0);
  c.n = root.integer("n", 0);
  require(c.p >= 1, "config.p: must be >= 1");
  require(c.n >= 1, "config.n: must be >= 1");

  {
    const Node op = root.child("operator");
    op.allow({"kind", "row_norm_low", "row_norm_high", "seed", "path"});
    require(op.has("kind"), op.key_path("kind") + ": missing required key");
    const std::string kind = op.string("kind", "");
    if (kind == "random_frame") {
      c.op.kind = OperatorSpec::Kind::random_frame;
      require(c.p >= c.n, "config.p: random_frame needs p >= n");
    } else if (kind == "identity") {
      c.op.kind = OperatorSpec::Kind::identity;
      require(c.p == c.n, "config.p: identity operator needs p == n");
    } else if (kind == "difference") {
      c.op.kind = OperatorSpec::Kind::difference;
      require(c.n >= 2 && c.p == c.n - 1, "config.p: difference operator needs p == n - 1");
    } else if (kind == "file") {
      c.op.kind = OperatorSpec::Kind::file;
      require(op.has("path"), op.key_path("path") + ": required for kind 'file'");
    } else {
      throw ValidationError(op.key_path("kind") + ": unknown operator kind '" + kind + "'");
    }
    c.op.row_norm_low = op.real("row_norm_low", c.op.row_norm_low);
    c.op.row_norm_high = op.real("row_norm_high", c.op.row_norm_high);
    require(c.op.row_norm_low > 0.0 && c.op.row_norm_low <= c.op.row_norm_high,
            op.key_path("row_norm_low") + ": need 0 < row_norm_low <= row_norm_high");
    if (op.has("seed")) c.op.seed = op.unsigned_integer("seed", 0);
    c.op.path = op.string("path", "");
  }

  if (root.has("prior")) {
    const Node pr = root.child("prior");
    pr.allow({"beta", "sigma", "path", "two_level"});
    const int forms = int(pr.has("beta") || pr.has("sigma")) + int(pr.has("path")) +
                      int(pr.has("two_level"));
    require(forms == 1, "config.prior: give exactly one of beta/sigma, path, two_level");
    if (pr.has("beta") || pr.has("sigma")) {
      require(pr.has("beta") && pr.has("sigma"), "config.prior: beta and sigma go together");
      c.prior.beta = pr.reals("beta");
      c.prior.sigma = pr.reals("sigma");
      require(c.prior.beta->size() == c.p, "config.prior.beta: length must equal p");
      require(c.prior.sigma->size() == c.p, "config.prior.sigma: length must equal p");
    } else if (pr.has("path")) {
      c.prior.path = pr.string("path", "");
    } else {
      const Node tl = pr.child("two_level");
      tl.allow({"high_count", "beta_high", "beta_low", "sign_bias"});
      c.prior.high_count = tl.integer("high_count", 0);
      c.prior.beta_high = tl.real("beta_high", c.prior.beta_high);
      c.prior.beta_low = tl.real("beta_low", c.prior.beta_low);
      c.prior.sign_bias = tl.real("sign_bias", 0.0);
      require(c.prior.high_count >= 0 && c.prior.high_count <= c.p,
              tl.key_path("high_count") + ": must lie in [0, p]");
      require(c.prior.beta_high >= 0.0 && c.prior.beta_high <= 1.0,
              tl.key_path("beta_high") + ": must lie in [0, 1]");
      require(c.prior.beta_low >= 0.0 && c.prior.beta_low <= 1.0,
              tl.key_path("beta_low") + ": must lie in [0, 1]");
      require(std::abs(c.prior.sign_bias) <= 1.0,
              tl.key_path("sign_bias") + ": must lie in [-1, 1]");
    }
  }

  if (root.has("m_grid")) {
    const auto& grid = root.raw("m_grid");
    require(grid.is_array() && !grid.empty(), "config.m_grid: expected a non-empty array");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const std::string where = "config.m_grid[" + std::to_string(i) + "]";
      require(grid[i].is_number_integer(), where + ": expected an integer");
      const auto m = grid[i].get<std::int64_t>();
      require(m >= 1 && m <= c.n,
              where + ": value " + std::to_string(m) + " outside [1, n=" + std::to_string(c.n) + "]");
      c.m_grid.push_back(m);
    }
  } else {
    for (Index m = std::min<Index>(5, c.n); m <= c.n; ++m) c.m_grid.push_back(m);
  }

  const auto trials = root.integer("trials", 100);
  require(trials >= 1, "config.trials: must be >= 1");
  c.trials = static_cast<std::size_t>(trials);

  if (root.has("weight_schemes")) {
    const auto& s = root.raw("weight_schemes");
    require(s.is_array() && !s.empty(), "config.weight_schemes: expected a non-empty array");
    c.schemes.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string where = "config.weight_schemes[" + std::to_string(i) + "]";
      require(s[i].is_string(), where + ": expected a string");
      try {
        const Scheme sc = parse_scheme(s[i].get<std::string>());
        if (std::find(c.schemes.begin(), c.schemes.end(), sc) == c.schemes.end()) {
          c.schemes.push_back(sc);
        }
      } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
      }
    }
  }

  if (root.has("solver")) {
    const Node s = root.child("solver");
    s.allow({"tol_abs", "tol_rel", "max_iters", "rho"});
    c.solver.tol_abs = s.real("tol_abs", c.solver.tol_abs);
    c.solver.tol_rel = s.real("tol_rel", c.solver.tol_rel);
    c.solver.max_iters = static_cast<int>(s.integer("max_iters", c.solver.max_iters));
    c.solver.rho = s.real("rho", c.solver.rho);
    require(c.solver.tol_abs > 0.0, s.key_path("tol_abs") + ": must be positive");
    require(c.solver.tol_rel >= 0.0, s.key_path("tol_rel") + ": must be non-negative");
    require(c.solver.max_iters >= 1, s.key_path("max_iters") + ": must be >= 1");
    require(c.solver.rho > 0.0, s.key_path("rho") + ": must be positive");
  }

  if (root.has("design")) {
    const Node d = root.child("design");
    d.allow({"maxiter", "tol", "scalar_lo", "scalar_hi", "scalar_tol"});
    c.design.maxiter = static_cast<int>(d.integer("maxiter", c.design.maxiter));
    c.design.tol = d.real("tol", c.design.tol);
    c.design.scalar_lo = d.real("scalar_lo", c.design.scalar_lo);
    c.design.scalar_hi = d.real("scalar_hi", c.design.scalar_hi);
    c.design.scalar_tol = d.real("scalar_tol", c.design.scalar_tol);
    try {
      c.design.validate();
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("config.design: ") + e.what());
    }
  }

  c.root_seed = root.unsigned_integer("root_seed", c.root_seed);
  c.output = root.string("output", "");
  const auto threads = root.integer("threads", 1);
  require(threads >= 1 && threads <= 1024, "config.threads: must lie in [1, 1024]");
  c.threads = static_cast<unsigned>(threads);
  c.success_threshold = root.real("success_threshold", c.success_threshold);
  require(c.success_threshold > 0.0, "config.success_threshold: must be positive");

  if (root.has("etas")) {
    const Vector etas = root.reals("etas");
    c.etas.assign(etas.data(), etas.data() + etas.size());
    for (std::size_t i = 0; i < c.etas.size(); ++i) {
      require(c.etas[i] > 0.0 && c.etas[i] < 1.0,
              "config.etas[" + std::to_string(i) + "]: must lie in (0, 1)");
    }
  }
  const auto sdim_signals = root.integer("sdim_signals", 3);
  const auto sdim_trials = root.integer("sdim_trials", 500);
  require(sdim_signals >= 0, "config.sdim_signals: must be >= 0");
  require(sdim_trials >= 1, "config.sdim_trials: must be >= 1");
  c.sdim_signals = static_cast<std::size_t>(sdim_signals);
  c.sdim_trials = static_cast<std::size_t>(sdim_trials);

  if (root.has("grid")) {
    const Node g = root.child("grid");
    g.allow({"t_lo", "t_hi", "lambda_lo", "lambda_hi", "resolution"});
    c.grid.t_lo = g.real("t_lo", c.grid.t_lo);
    c.grid.t_hi = g.real("t_hi", c.grid.t_hi);
    c.grid.lambda_lo = g.real("lambda_lo", c.grid.lambda_lo);
    c.grid.lambda_hi = g.real("lambda_hi", c.grid.lambda_hi);
    c.grid.resolution = static_cast<int>(g.integer("resolution", c.grid.resolution));
    require(c.grid.t_lo > 0.0 && c.grid.t_lo < c.grid.t_hi, "config.grid: need 0 < t_lo < t_hi");
    require(c.grid.lambda_lo > 0.0 && c.grid.lambda_lo < c.grid.lambda_hi,
            "config.grid: need 0 < lambda_lo < lambda_hi");
    require(c.grid.resolution >= 2, "config.grid.resolution: must be >= 2");
  }

  c.signals_path = root.string("signals_path", "");
  c.measurement_path = root.string("measurement_path", "");
  c.observation_path = root.string("observation_path", "");
  c.weights_path = root.string("weights_path", "");
  c.rel_threshold = root.real("rel_threshold", c.rel_threshold);
  require(c.rel_threshold > 0.0, "config.rel_threshold: must be positive");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(io::read_text(path));
}

}  // namespace cosparse
