// Target-mode headroom probe: per d, compare tuned-NAG time-to-target against
// uniform H2 policies and the per-instance oracle over them.
#include <cstdio>
#include <vector>

#include "sus/harness.hpp"
#include "sus/tuner.hpp"

using namespace sus;

int main() {
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
  cfg.reward = RewardKind::kLogRatio;
  cfg.auto_width = 5.0;

  RunProtocol protocol = cfg.protocol;
  protocol.mode = RunMode::kFixedTarget;

  const std::uint64_t base = derive_seed(2027, "sweep-dim");
  const std::vector<int> dims = {10, 20, 50};
  for (std::size_t di = 0; di < dims.size(); ++di) {
    const int d = dims[di];
    cfg.d = d;
    const std::uint64_t dim_seed = derive_seed(base, di);
    const ProblemSet train_set =
        sample_problem_set(d, cfg.kappa, cfg.train_instances,
                           derive_seed(dim_seed, "train-problems"),
                           SetRole::kTraining);
    const ProblemSet test_set = sample_problem_set(
        d, cfg.kappa, cfg.test_instances,
        derive_seed(dim_seed, "test-problems"), SetRole::kTest);

    TunerConfig tuner_cfg = cfg.tuner;
    tuner_cfg.K = cfg.K;
    tuner_cfg.seed = derive_seed(dim_seed, "tuner");
    tuner_cfg.literal_interim = cfg.literal_interim;
    const TunedBaseline tuned = tune_baseline(train_set, tuner_cfg);
    const ActionSet set = action_set_for(cfg, tuned.hp);
    std::printf("d=%d tuned eta1=%g mu=%g delta=%g\n", d, tuned.hp.eta1,
                tuned.hp.mu, tuned.hp.delta);

    const EnvConfig env = cfg.env_config();
    const std::vector<InstanceOutcome> nag_out =
        evaluate_nag(test_set, tuned.hp, env, protocol);
    int nag_censored = 0;
    std::vector<double> nag_evals;
    for (const auto& o : nag_out) {
      nag_evals.push_back(static_cast<double>(o.evals));
      if (o.censored) ++nag_censored;
    }
    std::printf("  nag evals: q25=%.0f med=%.0f q75=%.0f censored=%d\n",
                quantiles(nag_evals, 0.25), quantiles(nag_evals, 0.5),
                quantiles(nag_evals, 0.75), nag_censored);

    const int J = static_cast<int>(set.size());
    std::vector<std::vector<int>> evals_by_action(
        static_cast<std::size_t>(J));
    for (int j = 1; j <= J; ++j) {
      std::vector<double> reds;
      int censored = 0;
      for (int i = 0; i < test_set.size(); ++i) {
        const QuadraticProblem& p =
            test_set.instances[static_cast<std::size_t>(i)];
        const EnvConfig env_p = protocol_env_config(env, protocol, p);
        Rng rng(derive_seed(derive_seed(dim_seed, "probe"),
                            static_cast<std::uint64_t>(i)));
        const PolicyFn fixed = [j](const Observation&) { return j; };
        const EpisodeTrace trace = run_episode(p, fixed, set, env_p, rng);
        evals_by_action[static_cast<std::size_t>(j - 1)].push_back(
            trace.evals);
        if (trace.reason == TerminationReason::kBudget) ++censored;
        reds.push_back(runtime_reduction(nag_out[static_cast<std::size_t>(i)].evals,
                                         trace.evals));
      }
      std::printf("  uniform action %d (eta scale %.2f): med red=%.4f q25=%.4f q75=%.4f censored=%d\n",
                  j, set.entries[static_cast<std::size_t>(j - 1)].params.eta / tuned.hp.eta1,
                  quantiles(reds, 0.5), quantiles(reds, 0.25),
                  quantiles(reds, 0.75), censored);
    }

    std::vector<double> oracle_reds;
    for (int i = 0; i < test_set.size(); ++i) {
      int best = evals_by_action[0][static_cast<std::size_t>(i)];
      for (int j = 1; j < J; ++j)
        best = std::min(best, evals_by_action[static_cast<std::size_t>(j)]
                                  [static_cast<std::size_t>(i)]);
      oracle_reds.push_back(
          runtime_reduction(nag_out[static_cast<std::size_t>(i)].evals, best));
    }
    std::printf("  oracle over uniforms: med red=%.4f q25=%.4f q75=%.4f\n",
                quantiles(oracle_reds, 0.5), quantiles(oracle_reds, 0.25),
                quantiles(oracle_reds, 0.75));
  }
  return 0;
}
