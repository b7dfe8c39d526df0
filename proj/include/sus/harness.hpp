#ifndef SUS_HARNESS_HPP
#define SUS_HARNESS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sus/agent.hpp"
#include "sus/environment.hpp"
#include "sus/problem.hpp"
#include "sus/tuner.hpp"
#include "sus/updates.hpp"

namespace sus {

enum class RunMode { kFixedBudget, kFixedTarget };

RunMode parse_run_mode(const std::string& name);
std::string run_mode_name(RunMode mode);

// How evaluation episodes terminate. Fixed-budget compares final objectives
// after exactly K evaluations; fixed-target compares evaluation counts until
// the objective falls below T = target_fraction * f(x1), capped at
// eval_cap_factor * K evaluations (censored when the cap is hit).
struct RunProtocol {
  RunMode mode = RunMode::kFixedBudget;
  double target_fraction = 1e-4;
  int eval_cap_factor = 10;

  void validate() const;
};

struct SweepConfig {
  std::vector<int> episode_grid = {100, 400, 1600, 6400};
  std::vector<int> dim_grid = {10, 20, 50};
  int seeds_per_point = 5;
  std::vector<std::pair<int, int>> state_variants;  // (m1, m2); empty = config's
};

// One experiment, mirroring the configuration file schema (see README).
struct ExperimentConfig {
  int d = 20;
  KappaSpec kappa = KappaSpec::uniform(1e2, 1e3);
  int train_instances = 100;
  int test_instances = 100;
  int K = 50;
  RunProtocol protocol;
  ActionSetVariant action_set = ActionSetVariant::kH1;
  int m1 = 10;
  int m2 = 20;
  bool use_log_state = true;
  bool auto_bounds = true;
  double auto_width = 8.0;
  double l = -8.0;
  double u = 0.0;
  RewardKind reward = RewardKind::kDifference;
  bool greedy_revert = true;
  bool literal_interim = false;
  AgentConfig agent;
  TunerConfig tuner;  // K and seed are filled from the experiment at run time
  SweepConfig sweep;
  std::string output_dir = "out";

  void validate() const;
  EnvConfig env_config() const;  // budget-mode environment (training shape)
};

// Parses a strict-keyed JSON config; unknown keys anywhere are rejected.
// Every key is optional and defaults to the values above.
ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::string& origin);

// Hex digest of the canonicalized config document; whitespace-insensitive.
std::string config_hash_hex(const std::string& config_text);

// Seed derivation labels shared by the CLI stages so chained runs agree.
std::uint64_t train_problems_seed(std::uint64_t master);
std::uint64_t test_problems_seed(std::uint64_t master);
std::uint64_t tuner_seed(std::uint64_t master);
std::uint64_t training_seed(std::uint64_t master);
std::uint64_t eval_seed(std::uint64_t master);

TunerConfig make_tuner_config(const ExperimentConfig& cfg,
                              std::uint64_t master_seed);
ActionSet action_set_for(const ExperimentConfig& cfg,
                         const NagHyperparams& tuned);

struct TrainReport {
  std::vector<double> episode_returns;  // reward sum per episode
  std::vector<double> episode_final_y;
  std::vector<double> episode_best_y;
  long long total_steps = 0;
};

// SARSA training over uniformly resampled training instances with
// per-episode exploration/learning-rate schedules. All randomness (instance
// choice, exploration, random restarts) comes from one stream seeded here.
// Training episodes run under the protocol: fixed-budget episodes last K
// evaluations, fixed-target episodes end at the per-instance target or the
// censoring cap, exactly like deployment.
std::pair<QTable, TrainReport> train_agent(const ProblemSet& training_set,
                                           const ActionSet& set,
                                           const EnvConfig& env_cfg,
                                           const AgentConfig& agent_cfg,
                                           std::uint64_t seed,
                                           const RunProtocol& protocol);
std::pair<QTable, TrainReport> train_agent(const ProblemSet& training_set,
                                           const ActionSet& set,
                                           const EnvConfig& env_cfg,
                                           const AgentConfig& agent_cfg,
                                           std::uint64_t seed);

// One greedy (eps = 0, no learning) episode of the trained selector.
EpisodeTrace run_policy_episode(const QuadraticProblem& p, const QTable& q,
                                const ActionSet& set, const EnvConfig& cfg,
                                std::uint64_t seed);

struct InstanceOutcome {
  int instance_id = 0;
  double y1 = 0.0;
  double final_y = 0.0;  // last observed objective
  double best_y = 0.0;
  int evals = 0;
  bool censored = false;  // fixed-target cap reached
};

// Per-instance environment shape under the protocol. In fixed-target mode
// the budget becomes the cap and the target is target_fraction * f(x1).
EnvConfig protocol_env_config(const EnvConfig& base, const RunProtocol& protocol,
                              const QuadraticProblem& p);

// Greedy deployment on every test instance. The per-instance stream is
// derived from seed and the instance index, so exporting a trace for
// instance i reproduces the evaluated episode exactly.
std::vector<InstanceOutcome> evaluate_policy(const ProblemSet& test_set,
                                             const QTable& q,
                                             const ActionSet& set,
                                             const EnvConfig& env_cfg,
                                             const RunProtocol& protocol,
                                             std::uint64_t seed);

// Fixed-parameter baseline on the same instances from the same x1.
std::vector<InstanceOutcome> evaluate_nag(const ProblemSet& test_set,
                                          const NagHyperparams& hp,
                                          const EnvConfig& env_cfg,
                                          const RunProtocol& protocol);

// (y_nag - y_sus) / y_nag. Requires y_nag > 0.
double relative_improvement(double y_nag, double y_sus);

// (k_nag - k_sus) / k_nag. Requires k_nag >= 1.
double runtime_reduction(int k_nag, int k_sus);

// Linear-interpolation quantile of the sorted values at rank q*(n-1).
double quantiles(std::vector<double> values, double q);

struct EvalRecord {
  int instance_id = 0;
  double y1 = 0.0;
  double nag = 0.0;  // y_K in fixed-budget mode, k_T in fixed-target mode
  double sus = 0.0;
  double metric = 0.0;
  bool excluded = false;  // metric undefined (nonpositive baseline objective)
  bool censored_nag = false;
  bool censored_sus = false;
};

struct EvalAggregates {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  int count = 0;
};

struct EvalReport {
  RunMode mode = RunMode::kFixedBudget;
  std::vector<EvalRecord> records;
  EvalAggregates aggregates;
  int excluded = 0;
};

// Pairs baseline and selector outcomes per instance and aggregates the
// protocol metric. Excluded records (undefined metric) are reported and
// warned about, never silently dropped.
EvalReport build_eval_report(const std::vector<InstanceOutcome>& nag,
                             const std::vector<InstanceOutcome>& sus,
                             RunMode mode);

void write_eval_csv(const std::string& path, const EvalReport& report);

struct EpisodeSweepRow {
  int episodes = 0;
  int m1 = 0;
  int m2 = 0;
  double mean_improvement = 0.0;
  double std_improvement = 0.0;  // across training seeds
  int seeds = 0;
};

// Fixed-budget sweep over training lengths: one tuned baseline, then
// train+evaluate per (state variant, episode count, seed). The per-row mean
// and deviation are over the per-seed mean improvements.
std::vector<EpisodeSweepRow> sweep_training_length(const ExperimentConfig& cfg,
                                                   std::uint64_t master_seed);

void write_episode_sweep_csv(const std::string& path,
                             const std::vector<EpisodeSweepRow>& rows);

struct DimSweepRow {
  int d = 0;
  double median_reduction = 0.0;
  double q25_reduction = 0.0;
  double q75_reduction = 0.0;
  int censored_nag = 0;
  int censored_sus = 0;
  int seeds = 0;
  int instances = 0;  // pooled reduction samples behind the quantiles
};

// Fixed-target sweep over problem dimension: per d, fresh problem sets and
// baseline, seeds_per_point trained selectors, runtime reductions pooled
// across seeds.
std::vector<DimSweepRow> sweep_dimension(const ExperimentConfig& cfg,
                                         std::uint64_t master_seed);

void write_dim_sweep_csv(const std::string& path,
                         const std::vector<DimSweepRow>& rows);

}  // namespace sus

#endif  // SUS_HARNESS_HPP
