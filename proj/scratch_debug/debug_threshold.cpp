// Threshold-policy headroom at one dimension: play 2*eta (action 4) while the
// level bin is at or below a threshold, else fall back to eta (action 3);
// also open-loop time thresholds on s2. args: d_index
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <vector>

#include "sus/harness.hpp"
#include "sus/tuner.hpp"

using namespace sus;

int main(int argc, char** argv) {
  const std::size_t di = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2;

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
  cfg.reward = RewardKind::kStepCost;
  cfg.auto_width = 5.0;

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

  auto eval_policy = [&](const PolicyFn& pol, const char* name) {
    std::vector<double> reds;
    std::vector<double> times;
    int censored = 0;
    for (int i = 0; i < test_set.size(); ++i) {
      const QuadraticProblem& p =
          test_set.instances[static_cast<std::size_t>(i)];
      const EnvConfig env_p = protocol_env_config(env, protocol, p);
      Rng rng(derive_seed(derive_seed(dim_seed, "thresh"),
                          static_cast<std::uint64_t>(i)));
      const EpisodeTrace trace = run_episode(p, pol, set, env_p, rng);
      if (trace.reason == TerminationReason::kBudget) ++censored;
      times.push_back(static_cast<double>(trace.evals));
      reds.push_back(runtime_reduction(
          nag_out[static_cast<std::size_t>(i)].evals, trace.evals));
    }
    double tm = 0.0;
    for (double t : times) tm += t;
    std::printf("  %-22s med=%.4f q25=%.4f mean=%.4f meanT=%.1f cens=%d\n",
                name, quantiles(reds, 0.5), quantiles(reds, 0.25),
                quantiles(times, 0.0) * 0.0 +
                    [&] {
                      double s = 0.0;
                      for (double r : reds) s += r;
                      return s / reds.size();
                    }(),
                tm / times.size(), censored);
  };

  std::printf("d=%d tuned eta1=%g mu=%g delta=%g\n", d, tuned.hp.eta1,
              tuned.hp.mu, tuned.hp.delta);
  char buf[64];
  for (int t = 10; t <= 20; t += 2) {
    const PolicyFn pol = [t](const Observation& o) {
      return o.s1 <= t ? 4 : 3;
    };
    std::snprintf(buf, sizeof buf, "s1<=%d ? 2eta : eta", t);
    eval_policy(pol, buf);
  }
  // Sticky variant: once the level bin breaches the threshold, stay on eta.
  for (int t = 12; t <= 20; t += 2) {
    auto tripped = std::make_shared<bool>(false);
    const PolicyFn pol = [t, tripped](const Observation& o) {
      if (o.s1 > t) *tripped = true;
      return *tripped ? 3 : 4;
    };
    std::snprintf(buf, sizeof buf, "sticky s1>%d -> eta", t);
    // note: tripped leaks across instances; reset via wrapper
    const PolicyFn fresh = [t](const Observation&) { return 0; };
    (void)fresh;
    eval_policy([t, state = std::make_shared<std::pair<int, bool>>(-1, false)](
                    const Observation& o) mutable {
      // s2 resets to bin 1 only at episode start; detect restart by k? not
      // visible. Use s2 monotonicity: a drop in s2 means a new episode.
      auto& [last_s2, trip] = *state;
      if (o.s2 < last_s2) trip = false;
      last_s2 = o.s2;
      if (o.s1 > t) trip = true;
      return trip ? 3 : 4;
    }, buf);
  }
  for (int t2 = 4; t2 <= 40; t2 += 4) {
    const PolicyFn pol = [t2](const Observation& o) {
      return o.s2 <= t2 ? 4 : 3;
    };
    std::snprintf(buf, sizeof buf, "s2<=%d ? 2eta : eta", t2);
    eval_policy(pol, buf);
  }
  for (int t2 = 4; t2 <= 40; t2 += 4) {
    const PolicyFn pol = [t2](const Observation& o) {
      return o.s2 <= t2 ? 3 : 4;
    };
    std::snprintf(buf, sizeof buf, "s2<=%d ? eta : 2eta", t2);
    eval_policy(pol, buf);
  }
  return 0;
}
