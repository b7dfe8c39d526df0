#include "sus/environment.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sus/io_util.hpp"

namespace sus {

RewardKind parse_reward_kind(const std::string& name) {
  if (name == "difference") return RewardKind::kDifference;
  if (name == "log_ratio") return RewardKind::kLogRatio;
  if (name == "step_cost") return RewardKind::kStepCost;
  if (name == "paced_ratio") return RewardKind::kPacedRatio;
  throw std::invalid_argument("unknown reward kind: " + name);
}

std::string reward_kind_name(RewardKind kind) {
  switch (kind) {
    case RewardKind::kDifference: return "difference";
    case RewardKind::kLogRatio: return "log_ratio";
    case RewardKind::kStepCost: return "step_cost";
    case RewardKind::kPacedRatio: return "paced_ratio";
  }
  throw std::logic_error("unhandled reward kind");
}

void EnvConfig::validate() const {
  if (K < 1) throw std::invalid_argument("evaluation budget K must be >= 1");
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("bin counts must be >= 1");
  if (!auto_bounds && !(l < u))
    throw std::invalid_argument("state bounds require l < u");
  if (auto_bounds && !(auto_width > 0.0))
    throw std::invalid_argument("automatic state bounds need positive width");
  if (s2_horizon < 0)
    throw std::invalid_argument("s2 horizon must be nonnegative");
  if (auto_bounds && !use_log_state)
    throw std::invalid_argument("automatic state bounds are defined in log space");
  if (target && !(*target >= 0.0))
    throw std::invalid_argument("target must be nonnegative");
}

double clamp_observed(double y) {
  if (!std::isfinite(y) || y > kYClamp) return kYClamp;
  return y;
}

int state_s1(double y, int m1, double l, double u, bool use_log_state) {
  const double z = use_log_state ? std::log10(std::max(y, 1e-300)) : y;
  double t = (z - l) / (u - l);
  if (!(t > 0.0)) t = 0.0;       // also catches NaN
  else if (t > 1.0) t = 1.0;
  const int bin = static_cast<int>(std::floor(t * (m1 - 1))) + 1;
  return bin < 1 ? 1 : (bin > m1 ? m1 : bin);
}

int state_s2(int k, int K, int m2) {
  // floor(k / (K/m2)) computed exactly in integers
  const long long raw =
      (static_cast<long long>(k) * m2) / K + 1;
  const long long clamped = raw < static_cast<long long>(m2) ? raw : m2;
  return static_cast<int>(clamped < 1 ? 1 : clamped);
}

double compute_reward(double y_prev, double y, RewardKind kind, bool* clamped) {
  if (clamped) *clamped = false;
  if (kind == RewardKind::kStepCost) return -1.0;
  if (kind == RewardKind::kDifference) return y_prev - y;
  double a = y_prev;
  double b = y;
  if (!(a > 0.0) || !(b > 0.0)) {
    if (clamped) *clamped = true;
    a = std::max(a, 1e-300);
    b = std::max(b, 1e-300);
  }
  return std::log(a / b);
}

Environment::Environment(EnvConfig cfg) : cfg_(cfg) { cfg_.validate(); }

Observation Environment::make_observation(double y_obs, int iter,
                                          double r) const {
  Observation obs;
  obs.s1 = state_s1(y_obs, cfg_.m1, l_eff_, u_eff_, cfg_.use_log_state);
  obs.s2 = state_s2(iter, cfg_.s2_horizon > 0 ? cfg_.s2_horizon : cfg_.K,
                     cfg_.m2);
  obs.r = r;
  obs.terminated = terminated_;
  return obs;
}

void Environment::check_termination() {
  if (cfg_.target && best_y_ <= *cfg_.target) {
    terminated_ = true;
    reason_ = TerminationReason::kTarget;
  } else if (k_ >= cfg_.K) {
    terminated_ = true;
    reason_ = TerminationReason::kBudget;
  }
}

Observation Environment::reset(const QuadraticProblem& p,
                               const ActionSet& set) {
  set.validate();
  problem_ = &p;
  set_ = &set;
  memories_.assign(static_cast<std::size_t>(set.size()), UpdateMemory{});

  x_ = p.x1;
  const double y_raw = evaluate_with_gradient(p, x_, g_);
  const double y_obs = clamp_observed(y_raw);
  y_ = y_obs;
  y1_ = y_obs;
  y_obs_prev_ = y_obs;
  best_x_ = x_;
  best_y_ = y_obs;
  k_ = 1;
  last_was_random_ = false;
  last_mover_ = -1;
  reward_clamps_ = 0;
  terminated_ = false;
  reason_ = TerminationReason::kNone;

  if (cfg_.auto_bounds) {
    u_eff_ = std::log10(std::max(y1_, 1e-300));
    l_eff_ = u_eff_ - cfg_.auto_width;
  } else {
    l_eff_ = cfg_.l;
    u_eff_ = cfg_.u;
  }

  check_termination();
  return make_observation(y_obs, 0, 0.0);
}

Observation Environment::step(int a, Rng& rng) {
  if (problem_ == nullptr) throw std::logic_error("step before reset");
  if (terminated_) throw std::logic_error("step on terminated episode");
  if (a < 1 || a > set_->size())
    throw std::out_of_range("action index out of range");

  const ActionEntry& entry = set_->entries[static_cast<std::size_t>(a - 1)];

  // Memory is only meaningful for the entry that owns the working chain.
  // Switching between two momentum entries hands the chain over (position
  // and velocity continue, only the parameters change); any other switch
  // leaves the stored position stale, so the entry restarts from the current
  // iterate. A random jump invalidates every chain.
  if (last_was_random_) {
    for (UpdateMemory& mem : memories_) reset_memory(mem);
  } else if (a - 1 != last_mover_) {
    UpdateMemory& mine = memories_[static_cast<std::size_t>(a - 1)];
    const bool chain_handoff =
        entry.kind == UpdateKind::kNag && last_mover_ >= 0 &&
        set_->entries[static_cast<std::size_t>(last_mover_)].kind ==
            UpdateKind::kNag &&
        memories_[static_cast<std::size_t>(last_mover_)].initialized;
    if (chain_handoff)
      mine = memories_[static_cast<std::size_t>(last_mover_)];
    else
      reset_memory(mine);
  }

  const int iter = k_;  // index of the update this step performs
  Vector x_next;
  switch (entry.kind) {
    case UpdateKind::kGd:
      x_next = gd_update(x_, g_, iter, entry.params);
      break;
    case UpdateKind::kNag:
      x_next = nag_update(memories_[static_cast<std::size_t>(a - 1)], x_, g_,
                          iter, entry.params, cfg_.literal_interim);
      break;
    case UpdateKind::kGuru:
      x_next = guru_update(problem_->d, entry.params, rng);
      break;
  }

  Vector g_next;
  const double y_raw = evaluate_with_gradient(*problem_, x_next, g_next);
  const double y_obs = clamp_observed(y_raw);

  if (y_obs < best_y_) {
    best_y_ = y_obs;
    best_x_ = x_next;
  }

  bool clamped = false;
  const double r = compute_reward(y_obs_prev_, y_obs, cfg_.reward_kind, &clamped);
  if (clamped) ++reward_clamps_;

  // A worsening random jump is rolled back before the next update; the spent
  // evaluation and the observed reward stand.
  const bool revert = cfg_.greedy_revert && entry.kind == UpdateKind::kGuru &&
                      y_obs > y_;
  if (!revert) {
    x_ = std::move(x_next);
    y_ = y_obs;
    g_ = std::move(g_next);
  }

  y_obs_prev_ = y_obs;
  last_was_random_ = entry.kind == UpdateKind::kGuru;
  last_mover_ = a - 1;
  k_ += 1;
  check_termination();
  return make_observation(y_obs, iter, r);
}

EpisodeTrace run_episode(const QuadraticProblem& p, const PolicyFn& policy,
                         const ActionSet& set, const EnvConfig& cfg, Rng& rng) {
  Environment env(cfg);
  EpisodeTrace trace;

  Observation obs = env.reset(p, set);
  trace.rows.push_back(
      {1, 0, env.last_observed(), env.best_y(), obs.r, obs.s1, obs.s2});
  while (!obs.terminated) {
    const int a = policy(obs);
    obs = env.step(a, rng);
    trace.rows.push_back(
        {env.k(), a, env.last_observed(), env.best_y(), obs.r, obs.s1, obs.s2});
  }

  trace.best_y = env.best_y();
  trace.evals = env.k();
  trace.reason = env.reason();
  return trace;
}

void write_trace_csv(const std::string& path, const EpisodeTrace& trace) {
  std::ostringstream out;
  out << "k,action,y,best_y,r,s1,s2\n";
  for (const TraceRow& row : trace.rows) {
    out << row.k << ',' << row.action << ',' << io::format_double(row.y) << ','
        << io::format_double(row.best_y) << ',' << io::format_double(row.r)
        << ',' << row.s1 << ',' << row.s2 << '\n';
  }
  io::write_text_file(path, out.str());
}

}  // namespace sus
