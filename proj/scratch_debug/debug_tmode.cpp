// One-seed probe of target-mode training with step-cost reward, replicating
// the dimension sweep's seeding. args: d_index [N] [seed_index]
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "sus/harness.hpp"
#include "sus/tuner.hpp"

using namespace sus;

int main(int argc, char** argv) {
  const std::size_t di = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 0;
  const int N = argc > 2 ? std::atoi(argv[2]) : 6400;
  const std::uint64_t si = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 0;

  ExperimentConfig cfg;
  cfg.kappa = KappaSpec::uniform(1e2, 1e3);
  cfg.train_instances = 100;
  cfg.test_instances = 100;
  cfg.K = 50;
  cfg.protocol.mode = RunMode::kFixedTarget;
  cfg.protocol.target_fraction = 1e-4;
  cfg.protocol.eval_cap_factor = 10;
  cfg.action_set = ActionSetVariant::kH2;
  cfg.m1 = 20;
  cfg.m2 = 40;
  cfg.reward = argc > 5 ? parse_reward_kind(argv[5]) : RewardKind::kStepCost;
  cfg.auto_width = argc > 4 ? std::atof(argv[4]) : 5.0;
  cfg.agent.eps0 = 0.99;
  cfg.agent.alpha0 = 0.3;
  cfg.agent.gamma = argc > 6 ? std::atof(argv[6]) : 1.0;
  cfg.agent.N = N;

  RunProtocol protocol = cfg.protocol;
  const std::vector<int> dims = {10, 20, 50};
  const int d = dims[di];
  cfg.d = d;
  const std::uint64_t base = derive_seed(2027, "sweep-dim");
  const std::uint64_t dim_seed = derive_seed(base, di);
  const ProblemSet train_set = sample_problem_set(
      d, cfg.kappa, cfg.train_instances,
      derive_seed(dim_seed, "train-problems"), SetRole::kTraining);
  const ProblemSet test_set = sample_problem_set(
      d, cfg.kappa, cfg.test_instances, derive_seed(dim_seed, "test-problems"),
      SetRole::kTest);

  TunerConfig tuner_cfg = cfg.tuner;
  tuner_cfg.K = cfg.K;
  tuner_cfg.seed = derive_seed(dim_seed, "tuner");
  tuner_cfg.literal_interim = cfg.literal_interim;
  const TunedBaseline tuned = tune_baseline(train_set, tuner_cfg);
  const ActionSet set = action_set_for(cfg, tuned.hp);

  const EnvConfig env = cfg.env_config();
  const std::vector<InstanceOutcome> nag_out =
      evaluate_nag(test_set, tuned.hp, env, protocol);

  const std::uint64_t train_seed =
      derive_seed(derive_seed(dim_seed, "train"), si);
  auto [q, train_report] =
      train_agent(train_set, set, env, cfg.agent, train_seed, protocol);
  std::printf("d=%d N=%d total train steps %lld\n", d, N,
              train_report.total_steps);
  const std::vector<InstanceOutcome> sus_out = evaluate_policy(
      test_set, q, set, env, protocol, derive_seed(train_seed, "eval"));
  const EvalReport report =
      build_eval_report(nag_out, sus_out, RunMode::kFixedTarget);
  int cen_nag = 0, cen_sus = 0;
  for (const auto& o : nag_out) cen_nag += o.censored ? 1 : 0;
  for (const auto& o : sus_out) cen_sus += o.censored ? 1 : 0;
  std::printf(
      "d=%d seed %llu: med=%.4f q25=%.4f q75=%.4f mean=%.4f censored nag=%d "
      "sus=%d\n",
      d, static_cast<unsigned long long>(si), report.aggregates.median,
      report.aggregates.q25, report.aggregates.q75, report.aggregates.mean,
      cen_nag, cen_sus);

  // Greedy action histogram over test deployments: which entries get used.
  std::vector<long long> counts(static_cast<std::size_t>(set.size()) + 1, 0);
  for (int i = 0; i < test_set.size(); ++i) {
    const QuadraticProblem& p = test_set.instances[static_cast<std::size_t>(i)];
    const EnvConfig env_p = protocol_env_config(env, protocol, p);
    const EpisodeTrace trace =
        run_policy_episode(p, q, set, env_p,
                           derive_seed(derive_seed(train_seed, "eval"),
                                       static_cast<std::uint64_t>(i)));
    for (const auto& row : trace.rows)
      if (row.action >= 1) ++counts[static_cast<std::size_t>(row.action)];
  }
  std::printf("  greedy action usage:");
  for (int j = 1; j <= set.size(); ++j)
    std::printf(" %d:%lld", j, counts[static_cast<std::size_t>(j)]);
  std::printf("\n");

  std::printf("  greedy grid (rows s2, cols s1 1..%d):\n", cfg.m1);
  Rng tie(0);
  for (int s2 = 1; s2 <= cfg.m2; s2 += cfg.m2 / 8) {
    std::printf("    s2=%2d: ", s2);
    for (int s1 = 1; s1 <= cfg.m1; ++s1) {
      const int a = select_action(q, s1, s2, 0.0, tie);
      std::printf("%d", a);
    }
    std::printf("\n");
  }
  // Q-value spread at a mid-level cell.
  for (int s1 : {4, 8, 12, 16, 20}) {
    std::printf("    q(s1=%2d,s2=40,a): ", s1);
    for (int a = 1; a <= set.size(); ++a)
      std::printf("%8.2f", q.at(s1, 40, a));
    std::printf("\n");
  }
  return 0;
}
