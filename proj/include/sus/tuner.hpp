#ifndef SUS_TUNER_HPP
#define SUS_TUNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sus/problem.hpp"
#include "sus/rng.hpp"

namespace sus {

struct NagHyperparams {
  double eta1 = 1e-3;  // initial learning rate of the decaying schedule
  double mu = 0.9;
  double delta = 1e-2;

  void validate() const;
};

enum class Aggregation { kMeanLog, kMeanRaw };

Aggregation parse_aggregation(const std::string& name);
std::string aggregation_name(Aggregation a);

struct TunerConfig {
  int max_iters = 500;
  int sample_size = 50;
  int K = 100;  // run length of each tuning rollout
  std::uint64_t seed = 0;
  Aggregation aggregation = Aggregation::kMeanLog;
  // Fresh subsample per objective call; false reuses the first draw
  // (common random numbers).
  bool resample = true;
  NagHyperparams init{1e-3, 0.9, 1e-2};
  bool literal_interim = false;

  void validate(int training_set_size) const;
};

struct NagRunResult {
  double final_y = 0.0;
  double best_y = 0.0;
  std::vector<double> ys;  // observed objective per evaluation, length K
};

// Fixed-parameter momentum scheme from p.x1: K evaluations, K-1 updates,
// matching the selection environment's budget accounting step for step.
// Observed values are clamped like the environment's.
NagRunResult run_nag_fixed(const QuadraticProblem& p, const NagHyperparams& hp,
                           int K, bool literal_interim = false);

struct TargetRunResult {
  int evals = 0;  // evaluations consumed (the cap when censored)
  bool censored = false;
  double final_y = 0.0;
  double best_y = 0.0;
};

// Same scheme, run until best observed value <= target or eval_cap
// evaluations are spent.
TargetRunResult run_nag_to_target(const QuadraticProblem& p,
                                  const NagHyperparams& hp, double target,
                                  int eval_cap, bool literal_interim = false);

// Bijection onto R^3 for simplex search: eta1 = exp(p0),
// mu = 1/(1+exp(-p1)), delta = exp(p2).
Vector to_unconstrained(const NagHyperparams& hp);
NagHyperparams from_unconstrained(const Vector& p);

// Noisy tuning objective: each call draws sample_size training instances
// uniformly with replacement (stream derived from the config seed and the
// call counter), runs the fixed scheme on each, and aggregates the final
// objectives (mean of ln y under kMeanLog, plain mean under kMeanRaw).
class HyperObjective {
 public:
  HyperObjective(const ProblemSet& training_set, TunerConfig cfg);

  // Evaluates transformed parameters and advances the call counter.
  double operator()(const Vector& params);

  // Deterministic single call, shared by operator() and tests.
  double evaluate_call(const NagHyperparams& hp,
                       std::uint64_t call_index) const;

  std::uint64_t calls() const { return calls_; }

 private:
  const ProblemSet* set_;
  TunerConfig cfg_;
  std::uint64_t calls_ = 0;
};

struct TunedBaseline {
  NagHyperparams hp;
  double objective = 0.0;  // recorded value at the returned vertex
  std::uint64_t seed = 0;
  std::string config_hash;  // hex digest of the driving experiment config

  // Tuning context, kept so downstream runs can detect stale artifacts.
  int K = 0;
  int sample_size = 0;
  int max_iters = 0;
  Aggregation aggregation = Aggregation::kMeanLog;
  bool resample = true;
  bool literal_interim = false;
  int problem_d = 0;
  int problem_count = 0;
  double kappa_lo = 1.0;
  double kappa_hi = 1.0;
  std::uint64_t problem_seed = 0;
};

// Nelder-Mead over the unconstrained parameterization, starting from
// cfg.init with 10% simplex perturbations.
TunedBaseline tune_baseline(const ProblemSet& training_set,
                            const TunerConfig& cfg);

void save_tuned(const std::string& path, const TunedBaseline& tuned);
TunedBaseline load_tuned(const std::string& path);

}  // namespace sus

#endif  // SUS_TUNER_HPP
