#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "sus/environment.hpp"
#include "sus/harness.hpp"

using namespace sus;

namespace {

// action chooser: (step index from 0, env, problem) -> action
using Chooser = std::function<int(int, const Environment&, const QuadraticProblem&)>;

double mean_improvement(const ProblemSet& test_set, const ActionSet& set,
                        const EnvConfig& ec, int K, const NagHyperparams& hp,
                        const Chooser& choose) {
  double acc = 0.0;
  int n = 0;
  for (const QuadraticProblem& p : test_set.instances) {
    const double y_nag = run_nag_fixed(p, hp, K, false).final_y;
    if (y_nag <= 0.0) continue;
    Environment env(ec);
    Rng rng(0);
    env.reset(p, set);
    for (int step = 0; step < K - 1; ++step) env.step(choose(step, env, p), rng);
    acc += (y_nag - env.y()) / y_nag;
    n += 1;
  }
  return acc / n;
}

}  // namespace

int main(int argc, char** argv) {
  const int d = argc > 1 ? std::atoi(argv[1]) : 20;
  ExperimentConfig cfg;
  cfg.d = d;
  cfg.kappa = KappaSpec::uniform(1e2, 1e3);
  cfg.K = 50;
  cfg.action_set = ActionSetVariant::kH1;

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
  const EnvConfig ec = cfg.env_config();

  auto report = [&](const char* name, const Chooser& c) {
    std::printf("%-44s mean=%.4f\n", name,
                mean_improvement(test_set, set, ec, cfg.K, tuned.hp, c));
  };

  report("always 2 (baseline)", [](int, const Environment&, const QuadraticProblem&) {
    return 2;
  });
  for (int J : {1, 2, 3, 4, 6, 8})
    for (double thr : {300.0, 500.0, 700.0}) {
      char name[80];
      std::snprintf(name, sizeof(name), "oracle: 1 for first %d steps if kappa>%g",
                    J, thr);
      report(name, [J, thr](int step, const Environment&, const QuadraticProblem& p) {
        return (p.kappa > thr && step < J) ? 1 : 2;
      });
    }
  report("halve while y > y1", [](int, const Environment& env, const QuadraticProblem&) {
    return env.y() > env.y1() ? 1 : 2;
  });
  for (double c : {10.0, 100.0, 1000.0, 1e4, 1e6}) {
    char name[80];
    std::snprintf(name, sizeof(name), "halve while y > %g*y1", c);
    report(name, [c](int, const Environment& env, const QuadraticProblem&) {
      return env.y() > c * env.y1() ? 1 : 2;
    });
  }
  for (double c : {10.0, 100.0, 1000.0}) {
    char name[80];
    std::snprintf(name, sizeof(name), "halve while y1 < y < %g*y1", c);
    report(name, [c](int, const Environment& env, const QuadraticProblem&) {
      const double y = env.y();
      return (y > env.y1() && y < c * env.y1()) ? 1 : 2;
    });
  }
  report("halve when y rose vs prev obs", [](int, const Environment& env, const QuadraticProblem&) {
    return env.y() > env.last_observed() ? 1 : 2;
  });
  return 0;
}
