#include <cstdio>

#include <string>

#include "sus/harness.hpp"

using namespace sus;

int main(int argc, char** argv) {
  ExperimentConfig cfg;
  cfg.d = argc > 1 ? std::atoi(argv[1]) : 100;
  cfg.kappa = KappaSpec::uniform(1e2, 1e3);
  cfg.K = 50;
  cfg.action_set = ActionSetVariant::kH1;
  cfg.m1 = argc > 2 ? std::atoi(argv[2]) : 20;
  cfg.m2 = argc > 3 ? std::atoi(argv[3]) : 40;
  cfg.agent.N = argc > 4 ? std::atoi(argv[4]) : 6400;
  if (argc > 5) cfg.agent.gamma = std::atof(argv[5]);
  if (argc > 6) cfg.auto_width = std::atof(argv[6]);
  if (argc > 7 && std::string(argv[7]) == "log") cfg.reward = RewardKind::kLogRatio;

  const std::uint64_t master = 2026;
  const ProblemSet train_set = sample_problem_set(
      cfg.d, cfg.kappa, cfg.train_instances, train_problems_seed(master),
      SetRole::kTraining);
  const ProblemSet test_set =
      sample_problem_set(cfg.d, cfg.kappa, cfg.test_instances,
                         test_problems_seed(master), SetRole::kTest);
  const TunedBaseline tuned = tune_baseline(train_set, make_tuner_config(cfg, master));
  std::printf("tuned eta*=%g mu*=%g delta*=%g\n", tuned.hp.eta1, tuned.hp.mu,
              tuned.hp.delta);

  const ActionSet set = action_set_for(cfg, tuned.hp);
  const EnvConfig env = cfg.env_config();
  RunProtocol protocol;

  const auto nag_out = evaluate_nag(test_set, tuned.hp, env, protocol);

  // Constant policies through the same environment.
  auto run_constant = [&](int action) {
    double mean = 0.0;
    Rng rng(0);
    for (int i = 0; i < test_set.size(); ++i) {
      const EpisodeTrace t = run_episode(
          test_set.instances[i], [action](const Observation&) { return action; },
          set, env, rng);
      mean += relative_improvement(nag_out[i].final_y, t.rows.back().y);
    }
    return mean / test_set.size();
  };
  std::printf("constant eta*/2: mean improvement %.4f\n", run_constant(1));
  std::printf("constant eta*  : mean improvement %.4f\n", run_constant(2));

  const auto [q, report] = train_agent(train_set, set, env, cfg.agent,
                                       training_seed(master));
  double tail_return = 0.0;
  for (std::size_t i = report.episode_returns.size() - 200;
       i < report.episode_returns.size(); ++i)
    tail_return += report.episode_returns[i] / 200.0;
  std::printf("mean return, last 200 train episodes: %g\n", tail_return);

  const PolicyTable policy = greedy_policy(q);
  std::printf("greedy action by (s1 row, s2 col), s1=1 bottom bin:\n");
  for (int s1 = cfg.m1; s1 >= 1; --s1) {
    std::printf("  s1=%2d: ", s1);
    for (int s2 = 1; s2 <= cfg.m2; ++s2)
      std::printf("%d", policy.at(s1, s2));
    std::printf("\n");
  }

  const auto sus_out = evaluate_policy(test_set, q, set, env, protocol,
                                       derive_seed(eval_seed(master), 0));
  const EvalReport rep = build_eval_report(nag_out, sus_out, RunMode::kFixedBudget);
  std::printf("learned policy: mean=%.4f median=%.4f\n", rep.aggregates.mean,
              rep.aggregates.median);
  return 0;
}
