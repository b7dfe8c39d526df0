#include <cstdio>

#include "sus/environment.hpp"
#include "sus/harness.hpp"

using namespace sus;

namespace {

double run_pattern(const QuadraticProblem& p, const ActionSet& set,
                   const EnvConfig& ec, int K, int mode) {
  Environment env(ec);
  Rng rng(0);
  env.reset(p, set);
  for (int step = 0; step < K - 1; ++step) {
    int a = 2;
    if (mode == 1) a = 1;
    if (mode == 2) a = step < (K - 1) / 2 ? 2 : 1;
    env.step(a, rng);
  }
  return env.y();
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig cfg;
  cfg.d = argc > 1 ? std::atoi(argv[1]) : 100;
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
  const EnvConfig ec = cfg.env_config();

  std::printf("%4s %10s %14s %14s %14s %10s\n", "i", "kappa", "y_base",
              "y_always1", "y_switch25", "ratio_sw");
  for (int i = 0; i < test_set.size(); ++i) {
    const QuadraticProblem& p = test_set.instances[i];
    const double yb = run_pattern(p, set, ec, cfg.K, 0);
    const double y1 = run_pattern(p, set, ec, cfg.K, 1);
    const double ysw = run_pattern(p, set, ec, cfg.K, 2);
    std::printf("%4d %10.1f %14.6e %14.6e %14.6e %10.2e\n", i, p.kappa, yb, y1,
                ysw, (yb - ysw) / yb);
  }
  return 0;
}
