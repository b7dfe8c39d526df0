#include <algorithm>
#include <cstdio>

#include "sus/harness.hpp"

using namespace sus;

int main(int argc, char** argv) {
  ExperimentConfig cfg;
  cfg.d = argc > 1 ? std::atoi(argv[1]) : 20;
  cfg.kappa = KappaSpec::uniform(1e2, 1e3);
  cfg.K = 50;
  cfg.action_set = ActionSetVariant::kH1;
  cfg.m1 = argc > 2 ? std::atoi(argv[2]) : 10;
  cfg.m2 = argc > 3 ? std::atoi(argv[3]) : 20;
  cfg.agent.N = argc > 4 ? std::atoi(argv[4]) : 6400;

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
  for (int seed = 0; seed < 3; ++seed) {
    const auto [q, report] = train_agent(train_set, set, env, cfg.agent,
                                         training_seed(master) + seed);
    const auto sus_out = evaluate_policy(test_set, q, set, env, protocol,
                                         derive_seed(eval_seed(master), seed));
    const EvalReport rep = build_eval_report(nag_out, sus_out, RunMode::kFixedBudget);
    std::vector<double> imps;
    for (const auto& rec : rep.records)
      if (!rec.excluded) imps.push_back(rec.metric);
    std::sort(imps.begin(), imps.end());
    std::printf(
        "seed %d: mean=%.4f median=%.4f min=%.4f p10=%.4f p90=%.4f max=%.4f\n",
        seed, rep.aggregates.mean, rep.aggregates.median, imps.front(),
        imps[imps.size() / 10], imps[imps.size() * 9 / 10], imps.back());
  }
  return 0;
}
