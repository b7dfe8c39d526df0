#include <cstdio>

#include "sus/environment.hpp"
#include "sus/harness.hpp"

using namespace sus;

int main() {
  ExperimentConfig cfg;
  cfg.d = 100;
  cfg.kappa = KappaSpec::uniform(1e2, 1e3);
  cfg.K = 50;
  cfg.action_set = ActionSetVariant::kH1;
  cfg.m1 = 20;
  cfg.m2 = 40;

  const std::uint64_t master = 2026;
  const ProblemSet train_set = sample_problem_set(
      cfg.d, cfg.kappa, cfg.train_instances, train_problems_seed(master),
      SetRole::kTraining);
  const ProblemSet test_set =
      sample_problem_set(cfg.d, cfg.kappa, cfg.test_instances,
                         test_problems_seed(master), SetRole::kTest);
  const TunedBaseline tuned = tune_baseline(train_set, make_tuner_config(cfg, master));

  const ActionSet set = action_set_for(cfg, tuned.hp);
  for (int j = 0; j < set.size(); ++j)
    std::printf("entry %d: kind=%d eta=%g mu=%g delta=%g\n", j + 1,
                static_cast<int>(set.entries[j].kind), set.entries[j].params.eta,
                set.entries[j].params.mu, set.entries[j].params.delta);

  const QuadraticProblem& p = test_set.instances[6];
  Environment env(cfg.env_config());
  Rng rng(0);
  env.reset(p, set);
  std::printf("k=1 y=%.6e\n", env.y());
  for (int step = 0; step < 49; ++step) {
    const int a = step < 25 ? 2 : 1;
    env.step(a, rng);
    const auto& mems = env.memories();
    std::printf("k=%2d a=%d y=%-14.6e |v1|=%-12.4e |v2|=%-12.4e |x|=%-12.4e\n",
                env.k(), a, env.y(),
                mems[0].initialized ? mems[0].v.norm() : -1.0,
                mems[1].initialized ? mems[1].v.norm() : -1.0, env.x().norm());
  }
  return 0;
}
