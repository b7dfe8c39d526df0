// Acceptance gate: one check per release criterion, each printing a single
// PASS/FAIL line with the measured quantity. Exits nonzero if anything fails.
//
// Default run covers the desk-scale criteria (about a minute). --paper-scale
// appends the long-running full-size replications; --only N runs one check.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "sus/agent.hpp"
#include "sus/cli.hpp"
#include "sus/environment.hpp"
#include "sus/harness.hpp"
#include "sus/io_util.hpp"
#include "sus/nelder_mead.hpp"
#include "sus/problem.hpp"
#include "sus/rng.hpp"
#include "sus/tuner.hpp"
#include "sus/updates.hpp"

#include <Eigen/Eigenvalues>

using namespace sus;
namespace fs = std::filesystem;

namespace {

std::string strf(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buffer[512];
  std::vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

// Empty string = pass; anything else is the failure explanation.
using CheckFn = std::function<std::string()>;

struct Criterion {
  int id;
  std::string name;
  CheckFn run;
};

double rel_err(double measured, double expected) {
  return std::abs(measured - expected) / std::max(1.0, std::abs(expected));
}

// ---------------------------------------------------------------- criterion 1

std::string check_gradients() {
  const int dims[] = {1, 2, 5, 20};
  Rng rng(1001);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int d = dims[i % 4];
    const KappaSpec spec =
        d == 1 ? KappaSpec::fixed(1.0) : KappaSpec::uniform(1e1, 1e3);
    const QuadraticProblem p = make_problem(d, spec, rng);
    Vector x(d);
    for (int j = 0; j < d; ++j) x(j) = 2.0 * rng.normal();
    const Vector g = gradient(p, x);
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    const double h = 1e-6;
    for (int j = 0; j < d; ++j) {
      Vector xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      const double fd = (evaluate(p, xp) - evaluate(p, xm)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - g(j)) / scale);
    }
  }
  if (worst > 1e-6)
    return strf("finite-difference mismatch: max rel err %.3e > 1e-6", worst);
  std::printf("        max gradient rel err %.3e over 50 problems\n", worst);
  return "";
}

// ---------------------------------------------------------------- criterion 2

std::string check_problem_invariants() {
  Rng rng(1002);
  double worst_kappa = 0.0;
  double worst_opt = 0.0;
  double worst_neg = 0.0;
  for (int i = 0; i < 50; ++i) {
    const QuadraticProblem p = make_problem(8, KappaSpec::uniform(1e1, 1e3), rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(p.A);
    const double measured = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
    worst_kappa = std::max(worst_kappa, std::abs(measured - p.kappa) / p.kappa);

    const double y1 = evaluate(p, p.x1);
    worst_opt = std::max(worst_opt, evaluate(p, p.x_star) / std::max(y1, 1e-300));
    for (int j = 0; j < 100; ++j) {
      Vector x(p.d);
      for (int k = 0; k < p.d; ++k) x(k) = 3.0 * rng.normal();
      worst_neg = std::min(worst_neg, evaluate(p, x));
    }
  }
  if (worst_kappa > 1e-8)
    return strf("condition number off by rel %.3e > 1e-8", worst_kappa);
  if (worst_opt > 1e-10)
    return strf("f(x_star)/f(x1) = %.3e > 1e-10", worst_opt);
  if (worst_neg < -1e-12)
    return strf("objective dipped to %.3e < -1e-12", worst_neg);
  std::printf("        kappa rel err %.1e, f(x*)/f(x1) <= %.1e, min f %.1e\n",
              worst_kappa, worst_opt, worst_neg);
  return "";
}

// ---------------------------------------------------------------- criterion 3

std::string check_hand_oracles() {
  // One learning step from zero toward target 3 at rate 0.3.
  QTable q = QTable::zeros(2, 2, 2, 1.0, 0);
  sarsa_update(q, 1, 1, 1, 3.0, 2, 2, 2, 0.3, 1.0);
  if (rel_err(q.at(1, 1, 1), 0.9) > 1e-12)
    return strf("learning step gave %.17g, want 0.9", q.at(1, 1, 1));

  // 1-D momentum trace: x=1, g=1, eta=0.1, mu=0.9 -> interim point 0.81.
  Vector x(1), g(1);
  x << 1.0;
  g << 1.0;
  UpdateMemory mem;
  UpdateParams params;
  params.eta = 0.1;
  params.mu = 0.9;
  const Vector out = nag_update(mem, x, g, 1, params);
  if (rel_err(out(0), 0.81) > 1e-12)
    return strf("momentum trace gave %.17g, want 0.81", out(0));

  if (state_s1(5.0, 20, 0.0, 10.0, false) != 10)
    return strf("objective bin gave %d, want 10",
                state_s1(5.0, 20, 0.0, 10.0, false));
  if (state_s2(50, 100, 40) != 21)
    return strf("budget bin gave %d, want 21", state_s2(50, 100, 40));

  const double endpoint = schedule_value(0.99, 1000, 1000, 0.005);
  if (rel_err(endpoint, 0.99 * 0.005) > 1e-12)
    return strf("schedule endpoint gave %.17g, want %.17g", endpoint,
                0.99 * 0.005);
  return "";
}

// ---------------------------------------------------------------- criterion 4

std::string check_telescoping() {
  Rng problem_rng(1004);
  Rng policy_rng(1005);
  ActionSet set;
  set.entries = {ActionEntry::guru(-2.0, 2.0), ActionEntry::gd(0.01),
                 ActionEntry::nag(0.05, 0.8, 0.01)};
  EnvConfig cfg;
  cfg.K = 30;
  cfg.m1 = 8;
  cfg.m2 = 8;
  double worst = 0.0;
  for (int episode = 0; episode < 100; ++episode) {
    const QuadraticProblem p =
        make_problem(4, KappaSpec::uniform(1.0, 100.0), problem_rng);
    Rng step_rng(derive_seed(9000, static_cast<std::uint64_t>(episode)));
    const EpisodeTrace trace = run_episode(
        p,
        [&policy_rng, &set](const Observation&) {
          return 1 + policy_rng.uniform_int(set.size());
        },
        set, cfg, step_rng);
    double sum = 0.0;
    for (const TraceRow& row : trace.rows) sum += row.r;
    const double y1 = trace.rows.front().y;
    const double drop = y1 - trace.rows.back().y;
    worst = std::max(worst,
                     std::abs(sum - drop) / std::max(1.0, std::abs(y1)));
  }
  if (worst > 1e-10)
    return strf("reward sum drifted from the observed drop by rel %.3e", worst);
  std::printf("        worst telescoping drift %.3e over 100 episodes\n", worst);
  return "";
}

// ---------------------------------------------------------------- criterion 5

std::string check_exploration_stats() {
  QTable q = QTable::zeros(1, 1, 4, 1.0, 0);
  q.at(1, 1, 3) = 42.0;  // must be ignored at eps = 1
  Rng rng(1006);
  int counts[4] = {0, 0, 0, 0};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[select_action(q, 1, 1, 1.0, rng) - 1];
  for (int a = 0; a < 4; ++a) {
    const double freq = static_cast<double>(counts[a]) / n;
    if (std::abs(freq - 0.25) > 0.01)
      return strf("action %d frequency %.4f outside 0.25 +/- 0.01", a + 1, freq);
  }

  if (select_action(q, 1, 1, 0.0, rng) != 3)
    return "greedy selection missed the argmax";
  QTable ties = QTable::zeros(1, 1, 4, 1.0, 0);
  ties.at(1, 1, 2) = 1.0;
  ties.at(1, 1, 4) = 1.0;
  if (select_action(ties, 1, 1, 0.0, rng) != 2)
    return "tie not broken by lowest index";
  std::printf("        eps=1 frequencies within %.4f of 0.25\n", 0.01);
  return "";
}

// ---------------------------------------------------------------- criterion 6

std::string check_baseline_equivalence() {
  Rng rng(1007);
  NagHyperparams hp;
  hp.eta1 = 0.05;
  hp.mu = 0.85;
  hp.delta = 1e-3;
  ActionSet set;
  set.entries = {ActionEntry::nag(hp.eta1, hp.mu, hp.delta)};
  EnvConfig cfg;
  cfg.K = 40;
  cfg.m1 = 10;
  cfg.m2 = 10;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const QuadraticProblem p = make_problem(6, KappaSpec::uniform(1e1, 1e3), rng);
    const NagRunResult run = run_nag_fixed(p, hp, cfg.K);
    Rng step_rng(0);
    const EpisodeTrace trace = run_episode(
        p, [](const Observation&) { return 1; }, set, cfg, step_rng);
    if (trace.rows.size() != run.ys.size())
      return strf("trajectory lengths differ: %zu vs %zu", trace.rows.size(),
                  run.ys.size());
    for (std::size_t k = 0; k < run.ys.size(); ++k)
      worst = std::max(worst, rel_err(trace.rows[k].y, run.ys[k]));
  }
  if (worst > 1e-12)
    return strf("iterates diverge by rel %.3e > 1e-12", worst);
  std::printf("        max per-iterate rel diff %.3e over 20 instances\n", worst);
  return "";
}

// ---------------------------------------------------------------- criterion 7

std::string check_nelder_mead() {
  const auto parabola = [](const Vector& p) {
    return (p(0) - 3.0) * (p(0) - 3.0);
  };
  Vector x0(1);
  x0 << 0.0;
  const NelderMeadResult a = nelder_mead(parabola, x0);
  if (std::abs(a.x(0) - 3.0) > 1e-4)
    return strf("parabola minimizer %.6f not within 1e-4 of 3", a.x(0));

  const auto rosenbrock = [](const Vector& p) {
    const double u = 1.0 - p(0);
    const double v = p(1) - p(0) * p(0);
    return u * u + 100.0 * v * v;
  };
  Vector r0(2);
  r0 << -1.2, 1.0;
  const NelderMeadResult b = nelder_mead(rosenbrock, r0);
  if (b.iterations > 500) return strf("Rosenbrock used %d iterations", b.iterations);
  if (std::abs(b.x(0) - 1.0) > 1e-3 || std::abs(b.x(1) - 1.0) > 1e-3)
    return strf("Rosenbrock ended at (%.5f, %.5f), want (1, 1) +/- 1e-3",
                b.x(0), b.x(1));
  std::printf("        parabola at %.6f, Rosenbrock at (%.5f, %.5f) in %d iters\n",
              a.x(0), b.x(0), b.x(1), b.iterations);
  return "";
}

// ---------------------------------------------------------------- criterion 8

ExperimentConfig training_trend_config() {
  ExperimentConfig cfg;
  cfg.d = 20;
  cfg.kappa = KappaSpec::uniform(1e2, 1e3);
  cfg.train_instances = 100;
  cfg.test_instances = 100;
  cfg.K = 50;
  cfg.action_set = ActionSetVariant::kH1;
  cfg.m1 = 10;
  cfg.m2 = 20;
  // End-game emphasis: per-step contraction rewards keep value gaps on the
  // same scale across the run, and a 5-decade state span keeps every level
  // bin inside the reachable range. Both choices are mirrored in
  // configs/desk_budget_h1.json.
  cfg.reward = RewardKind::kLogRatio;
  cfg.auto_width = 5.0;
  cfg.agent.eps0 = 0.99;
  cfg.agent.alpha0 = 0.3;
  cfg.sweep.episode_grid = {100, 400, 1600, 6400};
  cfg.sweep.seeds_per_point = 5;
  return cfg;
}

std::string check_training_trend() {
  const ExperimentConfig cfg = training_trend_config();
  const auto rows = sweep_training_length(cfg, 2026);
  std::printf("        mean improvement by episodes:");
  for (const auto& row : rows)
    std::printf(" %d:%.4f", row.episodes, row.mean_improvement);
  std::printf("\n");
  const double first = rows.front().mean_improvement;
  const double last = rows.back().mean_improvement;
  if (!(last > first))
    return strf("no growth: mean at N=6400 (%.4f) <= mean at N=100 (%.4f)",
                last, first);
  if (!(last > 0.0))
    return strf("mean improvement at N=6400 is %.4f, not positive", last);
  return "";
}

std::string check_training_trend_paper_scale() {
  ExperimentConfig cfg = training_trend_config();
  cfg.d = 100;
  cfg.m1 = 20;
  cfg.m2 = 40;
  cfg.sweep.episode_grid = {12800};
  cfg.sweep.seeds_per_point = 3;
  const auto rows = sweep_training_length(cfg, 2026);
  const double mean = rows.front().mean_improvement;
  std::printf("        mean improvement at N=12800, d=100: %.4f\n", mean);
  if (!(mean >= 0.20))
    return strf("mean improvement %.4f below the 0.20 floor", mean);
  return "";
}

// ---------------------------------------------------------------- criterion 9

ExperimentConfig runtime_trend_config() {
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
  // Runtime is the metric here, so train on it directly: target-mode episodes
  // with a flat -1 per update make the return the negative evaluation count.
  // Contraction rewards are blind to speed in this mode (their return
  // telescopes to the same total for every run that reaches the target). The
  // 5-decade span mirrors the budget config; the matching run configuration
  // ships as configs/desk_target_h2.json.
  cfg.reward = RewardKind::kStepCost;
  cfg.auto_width = 5.0;
  cfg.agent.eps0 = 0.99;
  cfg.agent.alpha0 = 0.3;
  cfg.agent.N = 6400;
  cfg.sweep.dim_grid = {10, 20, 50};
  cfg.sweep.seeds_per_point = 3;
  return cfg;
}

std::string check_runtime_trend() {
  const ExperimentConfig cfg = runtime_trend_config();
  const auto rows = sweep_dimension(cfg, 2027);
  std::printf("        median runtime reduction by d:");
  for (const auto& row : rows) std::printf(" %d:%.4f", row.d, row.median_reduction);
  std::printf("\n");
  for (const auto& row : rows)
    if (!(row.median_reduction > 0.0))
      return strf("median reduction at d=%d is %.4f, not positive", row.d,
                  row.median_reduction);
  return "";
}

std::string check_runtime_trend_paper_scale() {
  ExperimentConfig cfg = runtime_trend_config();
  cfg.agent.N = 12800;
  const auto rows = sweep_dimension(cfg, 2027);
  std::printf("        median runtime reduction by d:");
  for (const auto& row : rows) std::printf(" %d:%.4f", row.d, row.median_reduction);
  std::printf("\n");
  for (const auto& row : rows)
    if (row.median_reduction < 0.10 || row.median_reduction > 0.55)
      return strf("median reduction at d=%d is %.4f, outside [0.10, 0.55]",
                  row.d, row.median_reduction);
  return "";
}

// --------------------------------------------------------------- criterion 10

std::string check_persistence() {
  const fs::path dir = "scratch/acceptance_persistence";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const ProblemSet set =
      sample_problem_set(5, KappaSpec::uniform(1e1, 1e2), 8, 21, SetRole::kTest);
  save_problem_set((dir / "a.bin").string(), set);
  save_problem_set((dir / "b.bin").string(), load_problem_set((dir / "a.bin").string()));
  if (io::read_text_file((dir / "a.bin").string()) !=
      io::read_text_file((dir / "b.bin").string()))
    return "problem set bytes changed across a load/save cycle";

  QTable q = QTable::zeros(6, 7, 3, 0.98, 0x1234);
  Rng rng(5);
  for (double& v : q.values) v = rng.normal();
  save_qtable((dir / "q1.bin").string(), q);
  save_qtable((dir / "q2.bin").string(), load_qtable((dir / "q1.bin").string()));
  if (io::read_text_file((dir / "q1.bin").string()) !=
      io::read_text_file((dir / "q2.bin").string()))
    return "value table bytes changed across a load/save cycle";

  const PolicyTable policy = greedy_policy(q);
  save_policy((dir / "p1.bin").string(), policy);
  save_policy((dir / "p2.bin").string(), load_policy((dir / "p1.bin").string()));
  if (io::read_text_file((dir / "p1.bin").string()) !=
      io::read_text_file((dir / "p2.bin").string()))
    return "policy bytes changed across a load/save cycle";

  TunedBaseline tuned;
  tuned.hp = {0.0123456789012345, 0.87654321, 3.14e-4};
  tuned.objective = -2.25;
  tuned.seed = 31;
  tuned.config_hash = "feedface00000000";
  tuned.K = 50;
  tuned.sample_size = 40;
  tuned.max_iters = 500;
  tuned.problem_d = 20;
  tuned.problem_count = 100;
  tuned.kappa_lo = 1e2;
  tuned.kappa_hi = 1e3;
  tuned.problem_seed = 77;
  save_tuned((dir / "t1.json").string(), tuned);
  save_tuned((dir / "t2.json").string(), load_tuned((dir / "t1.json").string()));
  if (io::read_text_file((dir / "t1.json").string()) !=
      io::read_text_file((dir / "t2.json").string()))
    return "tuned parameters changed across a load/save cycle";

  QTableFingerprint other = q.fp;
  other.action_hash = 0x4321;
  try {
    load_qtable((dir / "q1.bin").string(), other);
    return "fingerprint mismatch was not rejected";
  } catch (const std::runtime_error& e) {
    if (std::string(e.what()).find("fingerprint") == std::string::npos)
      return strf("mismatch diagnostic says \"%s\"", e.what());
  }
  return "";
}

// --------------------------------------------------------------- criterion 11

std::string check_determinism() {
  const char* config_text = R"({
    "d": 10,
    "kappa": {"lo": 100, "hi": 1000},
    "train_instances": 40,
    "test_instances": 40,
    "K": 30,
    "action_set": "H1",
    "m1": 10,
    "m2": 20,
    "eps0": 0.99,
    "alpha0": 0.3,
    "episodes": 800,
    "tuner": {"max_iters": 150, "sample_size": 20}
  })";
  const fs::path base = "scratch/acceptance_determinism";
  fs::remove_all(base);
  fs::create_directories(base);
  io::write_text_file((base / "config.json").string(), config_text);

  auto run_into = [&](const std::string& sub) {
    cli::CommonArgs args;
    args.config_path = (base / "config.json").string();
    args.seed = 4242;
    args.output_dir = (base / sub).string();
    cli::run_tune(args);
    cli::run_train(args);
    cli::run_eval(args, 0);
  };
  run_into("a");
  run_into("b");

  for (const char* name : {"eval.csv", "train_report.csv", "summary.json",
                           "tuned_nag.json"}) {
    const std::string a = io::read_text_file((base / "a" / name).string());
    const std::string b = io::read_text_file((base / "b" / name).string());
    if (a != b) return strf("%s differs between identically seeded runs", name);
  }
  std::printf("        tune/train/eval rerun produced identical CSV and JSON\n");
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  bool paper_scale = false;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--paper-scale") == 0) paper_scale = true;
    else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
      only = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: %s [--paper-scale] [--only N]\n", argv[0]);
      return 2;
    }
  }

  std::vector<Criterion> criteria = {
      {1, "analytic gradients match central finite differences", check_gradients},
      {2, "problem-class invariants hold on random draws", check_problem_invariants},
      {3, "hand-oracle equalities are exact to 1e-12", check_hand_oracles},
      {4, "difference rewards telescope to the observed drop", check_telescoping},
      {5, "eps-greedy frequencies and argmax tie-breaking", check_exploration_stats},
      {6, "single-entry deployment equals the plain baseline runner",
       check_baseline_equivalence},
      {7, "simplex search solves the parabola and Rosenbrock", check_nelder_mead},
      {8, "mean improvement grows with training episodes (desk scale)",
       check_training_trend},
      {9, "median runtime reduction is positive per dimension (desk scale)",
       check_runtime_trend},
      {10, "artifacts round-trip bit-exactly and reject mismatches",
       check_persistence},
      {11, "identically seeded end-to-end runs write identical outputs",
       check_determinism},
  };
  if (paper_scale) {
    criteria.push_back({8, "mean improvement at paper scale reaches 20%",
                        check_training_trend_paper_scale});
    criteria.push_back({9, "median runtime reduction at paper scale in [0.10, 0.55]",
                        check_runtime_trend_paper_scale});
  }

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    std::string detail;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      detail = strf("exception: %s", e.what());
    }
    if (detail.empty()) {
      std::printf("PASS  criterion %2d: %s\n", c.id, c.name.c_str());
    } else {
      ++failures;
      std::printf("FAIL  criterion %2d: %s\n        %s\n", c.id, c.name.c_str(),
                  detail.c_str());
    }
    std::fflush(stdout);
  }

  if (failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
