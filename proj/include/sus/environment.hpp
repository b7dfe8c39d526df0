#ifndef SUS_ENVIRONMENT_HPP
#define SUS_ENVIRONMENT_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sus/problem.hpp"
#include "sus/updates.hpp"

namespace sus {

enum class RewardKind { kDifference, kLogRatio, kStepCost, kPacedRatio };

RewardKind parse_reward_kind(const std::string& name);
std::string reward_kind_name(RewardKind kind);

struct EnvConfig {
  int K = 100;                    // function-evaluation budget
  std::optional<double> target;   // fixed-target mode when set
  int s2_horizon = 0;             // budget used by the s2 time feature; 0 = K.
                                  // Target-mode runs extend K for censoring but
                                  // keep the trained time binning, clamping
                                  // overtime iterations into the last bin.
  int m1 = 10;
  int m2 = 20;
  bool auto_bounds = true;        // per-episode l,u from the initial objective
  double auto_width = 8.0;        // decades below y1 covered when auto_bounds on
  double l = -8.0;                // state-value bounds when auto_bounds off
  double u = 0.0;
  bool use_log_state = true;
  RewardKind reward_kind = RewardKind::kDifference;
  double pace = 0.0;              // nats charged per evaluation (paced_ratio)
  bool greedy_revert = true;      // roll back worsening random jumps
  bool literal_interim = false;   // forwarded to nag_update

  void validate() const;
};

// Observed objective values are pinned to [-inf, kYClamp] before any
// bookkeeping (state, reward, best, traces); non-finite evaluations also map
// to kYClamp. Raw iterates keep evolving so divergence stays observable.
constexpr double kYClamp = 1e150;
double clamp_observed(double y);

// Bin index in [1, m1] for objective value y against bounds [l, u], after an
// optional log10 transform of y. Out-of-range and non-finite values clamp to
// the boundary bins.
int state_s1(double y, int m1, double l, double u, bool use_log_state);

// Bin index in [1, m2] for iteration k of a budget-K run; the final
// iteration is clamped into the last bin.
int state_s2(int k, int K, int m2);

// Difference mode: y_prev - y. Log-ratio mode: ln(y_prev/y) with nonpositive
// arguments clamped to 1e-300 (sets *clamped when provided). Step-cost mode:
// a flat -1 per update, so the undiscounted return is the negative number of
// updates spent; pair it with a termination target to train for speed.
// Paced-ratio mode: ln(y_prev/y) - pace. Reaching a fixed target banks a
// fixed number of nats, so the return is that constant minus pace times the
// updates spent: the same speed objective as step cost, but the per-step log
// term hands the learner an immediate contraction signal instead of one
// deferred to termination.
double compute_reward(double y_prev, double y, RewardKind kind,
                      bool* clamped = nullptr, double pace = 0.0);

enum class TerminationReason { kNone, kBudget, kTarget };

struct Observation {
  int s1 = 1;
  int s2 = 1;
  double r = 0.0;
  bool terminated = false;
};

struct TraceRow {
  int k = 0;       // evaluation index, 1-based
  int action = 0;  // 0 for the reset evaluation
  double y = 0.0;
  double best_y = 0.0;
  double r = 0.0;
  int s1 = 1;
  int s2 = 1;
};

struct EpisodeTrace {
  std::vector<TraceRow> rows;
  double best_y = 0.0;
  int evals = 0;
  TerminationReason reason = TerminationReason::kNone;
};

void write_trace_csv(const std::string& path, const EpisodeTrace& trace);

// One episode of the selection loop. The budget K counts evaluations; reset
// spends one on the initial point, each step spends one more, so a budget-K
// episode performs K-1 updates.
//
// Momentum state follows the working chain: consecutive applications of one
// entry extend its memory, a switch between two momentum entries hands
// position and velocity over (only the parameters change), and any other
// switch restarts the acting entry from the current point. After a random
// jump every entry restarts.
class Environment {
 public:
  explicit Environment(EnvConfig cfg);

  // Starts an episode on p with the given action set. Binds both by
  // reference; they must outlive the episode.
  Observation reset(const QuadraticProblem& p, const ActionSet& set);

  // Applies action a (1-based). rng feeds random-restart entries only.
  Observation step(int a, Rng& rng);

  bool terminated() const { return terminated_; }
  TerminationReason reason() const { return reason_; }
  int k() const { return k_; }
  double y() const { return y_; }
  // Most recent evaluation as observed, independent of any revert.
  double last_observed() const { return y_obs_prev_; }
  double y1() const { return y1_; }
  double best_y() const { return best_y_; }
  const Vector& best_x() const { return best_x_; }
  const Vector& x() const { return x_; }
  double bounds_l() const { return l_eff_; }
  double bounds_u() const { return u_eff_; }
  int reward_clamps() const { return reward_clamps_; }
  const std::vector<UpdateMemory>& memories() const { return memories_; }
  const EnvConfig& config() const { return cfg_; }

 private:
  EnvConfig cfg_;
  const QuadraticProblem* problem_ = nullptr;
  const ActionSet* set_ = nullptr;

  int k_ = 0;          // evaluations consumed
  Vector x_;           // working iterate (the point whose gradient is g_)
  double y_ = 0.0;     // observed objective at x_
  Vector g_;
  double y_obs_prev_ = 0.0;  // previous observed objective, for rewards
  double y1_ = 0.0;
  Vector best_x_;
  double best_y_ = 0.0;
  bool last_was_random_ = false;
  int last_mover_ = -1;  // entry index that produced the working point
  std::vector<UpdateMemory> memories_;
  bool terminated_ = true;
  TerminationReason reason_ = TerminationReason::kNone;
  double l_eff_ = 0.0;
  double u_eff_ = 1.0;
  int reward_clamps_ = 0;

  void check_termination();
  Observation make_observation(double y_obs, int iter, double r) const;
};

// Policy callback: Observation -> 1-based action index.
using PolicyFn = std::function<int(const Observation&)>;

EpisodeTrace run_episode(const QuadraticProblem& p, const PolicyFn& policy,
                         const ActionSet& set, const EnvConfig& cfg, Rng& rng);

}  // namespace sus

#endif  // SUS_ENVIRONMENT_HPP
