#include "sus/tuner.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "sus/environment.hpp"
#include "sus/io_util.hpp"
#include "sus/nelder_mead.hpp"
#include "sus/updates.hpp"

namespace sus {

using nlohmann::json;

void NagHyperparams::validate() const {
  if (!(eta1 > 0.0)) throw std::invalid_argument("eta1 must be positive");
  if (!(mu >= 0.0 && mu < 1.0))
    throw std::invalid_argument("mu must lie in [0, 1)");
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
}

Aggregation parse_aggregation(const std::string& name) {
  if (name == "mean_log") return Aggregation::kMeanLog;
  if (name == "mean_raw") return Aggregation::kMeanRaw;
  throw std::invalid_argument("unknown aggregation: " + name);
}

std::string aggregation_name(Aggregation a) {
  return a == Aggregation::kMeanLog ? "mean_log" : "mean_raw";
}

void TunerConfig::validate(int training_set_size) const {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (sample_size < 1 || sample_size > training_set_size)
    throw std::invalid_argument(
        "sample_size must lie in [1, training set size]");
  if (K < 1) throw std::invalid_argument("run length K must be >= 1");
  init.validate();
  if (!(init.mu > 0.0) || !(init.delta > 0.0))
    throw std::invalid_argument(
        "tuning start point needs mu and delta strictly positive");
}

NagRunResult run_nag_fixed(const QuadraticProblem& p, const NagHyperparams& hp,
                           int K, bool literal_interim) {
  if (K < 1) throw std::invalid_argument("run length K must be >= 1");
  hp.validate();
  UpdateParams params;
  params.eta = hp.eta1;
  params.mu = hp.mu;
  params.delta = hp.delta;

  NagRunResult res;
  res.ys.reserve(static_cast<std::size_t>(K));
  UpdateMemory mem;
  Vector x = p.x1;
  Vector g;
  double y = clamp_observed(evaluate_with_gradient(p, x, g));
  res.ys.push_back(y);
  res.best_y = y;
  for (int k = 1; k < K; ++k) {
    x = nag_update(mem, x, g, k, params, literal_interim);
    y = clamp_observed(evaluate_with_gradient(p, x, g));
    res.ys.push_back(y);
    if (y < res.best_y) res.best_y = y;
  }
  res.final_y = y;
  return res;
}

TargetRunResult run_nag_to_target(const QuadraticProblem& p,
                                  const NagHyperparams& hp, double target,
                                  int eval_cap, bool literal_interim) {
  if (eval_cap < 1) throw std::invalid_argument("evaluation cap must be >= 1");
  hp.validate();
  UpdateParams params;
  params.eta = hp.eta1;
  params.mu = hp.mu;
  params.delta = hp.delta;

  TargetRunResult res;
  UpdateMemory mem;
  Vector x = p.x1;
  Vector g;
  double y = clamp_observed(evaluate_with_gradient(p, x, g));
  res.best_y = y;
  res.evals = 1;
  int k = 1;
  while (res.best_y > target && res.evals < eval_cap) {
    x = nag_update(mem, x, g, k, params, literal_interim);
    y = clamp_observed(evaluate_with_gradient(p, x, g));
    ++res.evals;
    ++k;
    if (y < res.best_y) res.best_y = y;
  }
  res.final_y = y;
  res.censored = res.best_y > target;
  return res;
}

Vector to_unconstrained(const NagHyperparams& hp) {
  hp.validate();
  if (!(hp.mu > 0.0) || !(hp.delta > 0.0))
    throw std::invalid_argument(
        "transform needs mu in (0,1) and delta > 0");
  Vector p(3);
  p(0) = std::log(hp.eta1);
  p(1) = std::log(hp.mu / (1.0 - hp.mu));
  p(2) = std::log(hp.delta);
  return p;
}

NagHyperparams from_unconstrained(const Vector& p) {
  if (p.size() != 3) throw std::invalid_argument("expected 3 parameters");
  NagHyperparams hp;
  hp.eta1 = std::exp(p(0));
  hp.mu = 1.0 / (1.0 + std::exp(-p(1)));
  hp.delta = std::exp(p(2));
  return hp;
}

HyperObjective::HyperObjective(const ProblemSet& training_set, TunerConfig cfg)
    : set_(&training_set), cfg_(cfg) {
  cfg_.validate(training_set.size());
}

double HyperObjective::operator()(const Vector& params) {
  const NagHyperparams hp = from_unconstrained(params);
  const double value = evaluate_call(hp, calls_);
  ++calls_;
  return value;
}

double HyperObjective::evaluate_call(const NagHyperparams& hp,
                                     std::uint64_t call_index) const {
  const std::uint64_t draw = cfg_.resample ? call_index : 0;
  Rng rng(derive_seed(cfg_.seed, draw));
  double acc = 0.0;
  for (int i = 0; i < cfg_.sample_size; ++i) {
    const QuadraticProblem& p =
        set_->instances[static_cast<std::size_t>(rng.uniform_int(set_->size()))];
    const NagRunResult run = run_nag_fixed(p, hp, cfg_.K, cfg_.literal_interim);
    if (cfg_.aggregation == Aggregation::kMeanLog)
      acc += std::log(std::max(run.final_y, 1e-300));
    else
      acc += run.final_y;
  }
  return acc / cfg_.sample_size;
}

TunedBaseline tune_baseline(const ProblemSet& training_set,
                            const TunerConfig& cfg) {
  cfg.validate(training_set.size());
  HyperObjective objective(training_set, cfg);
  NelderMeadOptions opts;
  opts.max_iters = cfg.max_iters;
  const NelderMeadResult res = nelder_mead(
      [&objective](const Vector& p) { return objective(p); },
      to_unconstrained(cfg.init), opts);

  TunedBaseline tuned;
  tuned.hp = from_unconstrained(res.x);
  tuned.objective = res.value;
  tuned.seed = cfg.seed;
  tuned.K = cfg.K;
  tuned.sample_size = cfg.sample_size;
  tuned.max_iters = cfg.max_iters;
  tuned.aggregation = cfg.aggregation;
  tuned.resample = cfg.resample;
  tuned.literal_interim = cfg.literal_interim;
  tuned.problem_d = training_set.d;
  tuned.problem_count = training_set.size();
  tuned.kappa_lo = training_set.kappa.lo;
  tuned.kappa_hi = training_set.kappa.hi;
  tuned.problem_seed = training_set.seed;
  return tuned;
}

void save_tuned(const std::string& path, const TunedBaseline& tuned) {
  json doc;
  doc["eta_star"] = tuned.hp.eta1;
  doc["mu_star"] = tuned.hp.mu;
  doc["delta_star"] = tuned.hp.delta;
  doc["objective"] = tuned.objective;
  doc["seed"] = tuned.seed;
  doc["config_hash"] = tuned.config_hash;
  doc["context"] = {
      {"K", tuned.K},
      {"sample_size", tuned.sample_size},
      {"max_iters", tuned.max_iters},
      {"aggregation", aggregation_name(tuned.aggregation)},
      {"resample", tuned.resample},
      {"literal_interim", tuned.literal_interim},
      {"problem_d", tuned.problem_d},
      {"problem_count", tuned.problem_count},
      {"kappa_lo", tuned.kappa_lo},
      {"kappa_hi", tuned.kappa_hi},
      {"problem_seed", tuned.problem_seed},
  };
  io::write_text_file(path, doc.dump(2) + "\n");
}

TunedBaseline load_tuned(const std::string& path) {
  json doc;
  try {
    doc = json::parse(io::read_text_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": not a tuned-baseline file (" +
                             e.what() + ")");
  }
  TunedBaseline tuned;
  try {
    tuned.hp.eta1 = doc.at("eta_star").get<double>();
    tuned.hp.mu = doc.at("mu_star").get<double>();
    tuned.hp.delta = doc.at("delta_star").get<double>();
    tuned.objective = doc.at("objective").get<double>();
    tuned.seed = doc.at("seed").get<std::uint64_t>();
    tuned.config_hash = doc.at("config_hash").get<std::string>();
    const json& ctx = doc.at("context");
    tuned.K = ctx.at("K").get<int>();
    tuned.sample_size = ctx.at("sample_size").get<int>();
    tuned.max_iters = ctx.at("max_iters").get<int>();
    tuned.aggregation = parse_aggregation(ctx.at("aggregation").get<std::string>());
    tuned.resample = ctx.at("resample").get<bool>();
    tuned.literal_interim = ctx.at("literal_interim").get<bool>();
    tuned.problem_d = ctx.at("problem_d").get<int>();
    tuned.problem_count = ctx.at("problem_count").get<int>();
    tuned.kappa_lo = ctx.at("kappa_lo").get<double>();
    tuned.kappa_hi = ctx.at("kappa_hi").get<double>();
    tuned.problem_seed = ctx.at("problem_seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": malformed tuned-baseline file (" +
                             e.what() + ")");
  }
  tuned.hp.validate();
  return tuned;
}

}  // namespace sus
