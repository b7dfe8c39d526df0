#include <cstdio>

#include "sus/harness.hpp"

using namespace sus;

int main() {
  ExperimentConfig cfg;
  cfg.d = 20;
  cfg.kappa = KappaSpec::uniform(1e2, 1e3);
  cfg.K = 50;
  cfg.action_set = ActionSetVariant::kH1;
  cfg.m1 = 10;
  cfg.m2 = 20;
  cfg.agent.N = 6400;

  const std::uint64_t master = 2026;
  const ProblemSet train_set = sample_problem_set(
      cfg.d, cfg.kappa, cfg.train_instances, train_problems_seed(master),
      SetRole::kTraining);
  const ProblemSet test_set =
      sample_problem_set(cfg.d, cfg.kappa, cfg.test_instances,
                         test_problems_seed(master), SetRole::kTest);

  const TunerConfig tuner_cfg = make_tuner_config(cfg, master);
  const TunedBaseline tuned = tune_baseline(train_set, tuner_cfg);
  std::printf("tuned eta*=%g mu*=%g delta*=%g objective=%g\n", tuned.hp.eta1,
              tuned.hp.mu, tuned.hp.delta, tuned.objective);

  const ActionSet set = action_set_for(cfg, tuned.hp);
  const EnvConfig env = cfg.env_config();
  const auto [q, report] = train_agent(train_set, set, env, cfg.agent,
                                       training_seed(master));
  double mean_return = 0.0;
  for (std::size_t i = report.episode_returns.size() - 100;
       i < report.episode_returns.size(); ++i)
    mean_return += report.episode_returns[i] / 100.0;
  std::printf("mean return over last 100 train episodes: %g\n", mean_return);

  for (int i = 0; i < 3; ++i) {
    const QuadraticProblem& p = test_set.instances[i];
    const EpisodeTrace sus_trace = run_policy_episode(
        p, q, set, env, derive_seed(eval_seed(master), i));
    const NagRunResult nag = run_nag_fixed(p, tuned.hp, cfg.K);
    std::printf("instance %d: y1=%.3e  y_nag=%.3e  y_sus=%.3e\n", i,
                sus_trace.rows.front().y, nag.final_y,
                sus_trace.rows.back().y);
    std::printf("  actions:");
    for (const TraceRow& row : sus_trace.rows) std::printf(" %d", row.action);
    std::printf("\n  y:");
    for (const TraceRow& row : sus_trace.rows) std::printf(" %.2e", row.y);
    std::printf("\n");
  }
  return 0;
}
