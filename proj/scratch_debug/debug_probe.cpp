#include <cmath>
#include <cstdio>
#include <vector>

#include "sus/harness.hpp"
#include "sus/tuner.hpp"

using namespace sus;

namespace {

double mean_log_final(const ProblemSet& set, const NagHyperparams& hp, int K) {
  double acc = 0.0;
  for (const QuadraticProblem& p : set.instances) {
    const NagRunResult r = run_nag_fixed(p, hp, K, false);
    acc += std::log(std::max(r.final_y, 1e-300));
  }
  return acc / static_cast<double>(set.size());
}

}  // namespace

int main(int argc, char** argv) {
  const int d = argc > 1 ? std::atoi(argv[1]) : 100;
  ExperimentConfig cfg;
  cfg.d = d;
  cfg.kappa = KappaSpec::uniform(1e2, 1e3);
  cfg.K = 50;

  const std::uint64_t master = 2026;
  const ProblemSet train_set = sample_problem_set(
      cfg.d, cfg.kappa, cfg.train_instances, train_problems_seed(master),
      SetRole::kTraining);
  const TunedBaseline tuned = tune_baseline(train_set, make_tuner_config(cfg, master));
  std::printf("NM point: eta=%g mu=%g delta=%g  -> mean_log(full set) = %.4f\n",
              tuned.hp.eta1, tuned.hp.mu, tuned.hp.delta,
              mean_log_final(train_set, tuned.hp, cfg.K));

  double best = 1e300;
  NagHyperparams best_hp;
  for (double eta : {5e-4, 7.5e-4, 1e-3, 1.2e-3, 1.36e-3, 1.5e-3, 2e-3, 3e-3, 4e-3})
    for (double mu : {0.80, 0.85, 0.90, 0.92, 0.95, 0.97})
      for (double delta : {0.0, 0.005, 0.01, 0.02, 0.032, 0.05, 0.08}) {
        NagHyperparams hp; hp.eta1 = eta; hp.mu = mu; hp.delta = delta;
        const double v = mean_log_final(train_set, hp, cfg.K);
        if (v < best) {
          best = v;
          best_hp = hp;
          std::printf("  new best %.4f at eta=%g mu=%g delta=%g\n", v, eta, mu,
                      delta);
        }
      }
  std::printf("grid best: eta=%g mu=%g delta=%g -> %.4f\n", best_hp.eta1,
              best_hp.mu, best_hp.delta, best);
  return 0;
}
