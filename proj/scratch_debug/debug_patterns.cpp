#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sus/harness.hpp"

using namespace sus;

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
  std::printf("tuned eta*=%g mu*=%g delta*=%g\n", tuned.hp.eta1, tuned.hp.mu,
              tuned.hp.delta);

  const ActionSet set = action_set_for(cfg, tuned.hp);
  const EnvConfig env = cfg.env_config();
  RunProtocol protocol;
  const auto nag_out = evaluate_nag(test_set, tuned.hp, env, protocol);

  struct Pattern {
    std::string name;
    std::function<int(int /*step*/, const Observation&)> pick;
  };
  const int m1 = cfg.m1;
  std::vector<Pattern> patterns = {
      {"always 2 (baseline)", [](int, const Observation&) { return 2; }},
      {"always 1", [](int, const Observation&) { return 1; }},
      {"1 first half, 2 second", [](int step, const Observation&) {
         return step < 25 ? 1 : 2;
       }},
      {"2 first half, 1 second", [](int step, const Observation&) {
         return step < 25 ? 2 : 1;
       }},
      {"alternate 1,2", [](int step, const Observation&) {
         return 1 + step % 2;
       }},
      {"1 in top s1 bin, else 2", [m1](int, const Observation& obs) {
         return obs.s1 == m1 ? 1 : 2;
       }},
      {"1 in top 2 s1 bins, else 2", [m1](int, const Observation& obs) {
         return obs.s1 >= m1 - 1 ? 1 : 2;
       }},
      {"2 in top 2 s1 bins, else 1", [m1](int, const Observation& obs) {
         return obs.s1 >= m1 - 1 ? 2 : 1;
       }},
      {"1 in last quarter of budget", [&cfg](int, const Observation& obs) {
         return obs.s2 > (3 * cfg.m2) / 4 ? 1 : 2;
       }},
      {"1 in first quarter of budget", [&cfg](int, const Observation& obs) {
         return obs.s2 <= cfg.m2 / 4 ? 1 : 2;
       }},
  };

  for (const Pattern& pattern : patterns) {
    double mean = 0.0;
    double worst = 1e300;
    Rng rng(0);
    for (int i = 0; i < test_set.size(); ++i) {
      int step = 0;
      const EpisodeTrace t = run_episode(
          test_set.instances[i],
          [&](const Observation& obs) { return pattern.pick(step++, obs); },
          set, env, rng);
      const double imp =
          relative_improvement(nag_out[i].final_y, t.rows.back().y);
      mean += imp;
      worst = std::min(worst, imp);
    }
    std::printf("%-28s mean=%8.4f worst=%8.4f\n", pattern.name.c_str(),
                mean / test_set.size(), worst);
  }
  return 0;
}
