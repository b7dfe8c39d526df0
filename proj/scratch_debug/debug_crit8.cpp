#include <cstdio>
#include <string>

#include "sus/harness.hpp"

using namespace sus;

int main(int argc, char** argv) {
  ExperimentConfig cfg;
  cfg.d = 20;
  cfg.kappa = KappaSpec::uniform(1e2, 1e3);
  cfg.K = 50;
  cfg.action_set = ActionSetVariant::kH1;
  cfg.m1 = 10;
  cfg.m2 = 20;
  cfg.agent.eps0 = 0.99;
  cfg.agent.alpha0 = 0.3;
  cfg.sweep.episode_grid = {100, 6400};
  cfg.sweep.seeds_per_point = 5;
  cfg.sweep.state_variants = {{10, 20}};
  if (argc > 1 && std::string(argv[1]) == "log") cfg.reward = RewardKind::kLogRatio;
  if (argc > 2) cfg.auto_width = std::atof(argv[2]);

  const auto rows = sweep_training_length(cfg, 2026);
  for (const auto& row : rows)
    std::printf("N=%5d m1=%d m2=%d mean=%+.4f std=%.4f seeds=%d\n", row.episodes,
                row.m1, row.m2, row.mean_improvement, row.std_improvement,
                row.seeds);
  return 0;
}
