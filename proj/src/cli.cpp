#include "sus/cli.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "sus/harness.hpp"
#include "sus/io_util.hpp"
#include "sus/version.hpp"

namespace sus::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunContext {
  ExperimentConfig cfg;
  std::uint64_t master_seed = 0;
  std::string config_hash;
  fs::path out_dir;
};

RunContext open_run(const CommonArgs& args) {
  RunContext ctx;
  const std::string text = io::read_text_file(args.config_path);
  ctx.cfg = parse_experiment_config(text, args.config_path);
  ctx.master_seed = args.seed;
  ctx.config_hash = config_hash_hex(text);
  ctx.out_dir = args.output_dir.empty() ? fs::path(ctx.cfg.output_dir)
                                        : fs::path(args.output_dir);
  fs::create_directories(ctx.out_dir);
  return ctx;
}

std::string version_string() {
  std::ostringstream out;
  out << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.'
      << EIGEN_MINOR_VERSION;
  return out.str();
}

json versions_block() {
  return json{{"sus", kVersion},
              {"eigen", version_string()},
              {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

// Manifests record provenance (hashes, seeds, versions, outputs) and nothing
// volatile, so identical runs write identical manifests.
void write_manifest(const RunContext& ctx, const std::string& command,
                    const json& seeds, const std::vector<std::string>& outputs) {
  json doc;
  doc["command"] = command;
  doc["config_hash"] = ctx.config_hash;
  doc["master_seed"] = ctx.master_seed;
  doc["derived_seeds"] = seeds;
  doc["versions"] = versions_block();
  doc["outputs"] = outputs;
  io::write_text_file((ctx.out_dir / ("manifest_" + command + ".json")).string(),
                      doc.dump(2) + "\n");
}

std::string problem_file_name(SetRole role) {
  return role == SetRole::kTraining ? "train_problems.bin" : "test_problems.bin";
}

// Loads the problem set when present (validating it against the config and
// master seed), regenerates it otherwise. Chained stages therefore agree on
// instances whether or not gen-problems ran first.
ProblemSet obtain_problem_set(const RunContext& ctx, SetRole role) {
  const int n = role == SetRole::kTraining ? ctx.cfg.train_instances
                                           : ctx.cfg.test_instances;
  const std::uint64_t seed = role == SetRole::kTraining
                                 ? train_problems_seed(ctx.master_seed)
                                 : test_problems_seed(ctx.master_seed);
  const fs::path path = ctx.out_dir / problem_file_name(role);
  if (!fs::exists(path))
    return sample_problem_set(ctx.cfg.d, ctx.cfg.kappa, n, seed, role);

  ProblemSet set = load_problem_set(path.string());
  if (set.d != ctx.cfg.d || set.size() != n || set.seed != seed ||
      set.role != role || set.kappa.lo != ctx.cfg.kappa.lo ||
      set.kappa.hi != ctx.cfg.kappa.hi)
    throw std::runtime_error(
        path.string() +
        " disagrees with the current config and seed; rerun gen-problems "
        "or remove the file");
  return set;
}

TunedBaseline obtain_tuned(const RunContext& ctx) {
  const fs::path path = ctx.out_dir / "tuned_nag.json";
  if (!fs::exists(path))
    throw std::runtime_error(path.string() +
                             " not found; run the tune command first");
  TunedBaseline tuned = load_tuned(path.string());
  if (tuned.K != ctx.cfg.K || tuned.problem_d != ctx.cfg.d ||
      tuned.problem_count != ctx.cfg.train_instances ||
      tuned.problem_seed != train_problems_seed(ctx.master_seed) ||
      tuned.kappa_lo != ctx.cfg.kappa.lo ||
      tuned.kappa_hi != ctx.cfg.kappa.hi ||
      tuned.literal_interim != ctx.cfg.literal_interim)
    throw std::runtime_error(path.string() +
                             " was tuned under a different setup; rerun tune");
  if (tuned.config_hash != ctx.config_hash)
    std::cerr << "warning: " << path.string()
              << " was produced from a different config revision\n";
  return tuned;
}

QTableFingerprint expected_fingerprint(const ExperimentConfig& cfg,
                                       const ActionSet& set) {
  return {cfg.m1, cfg.m2, set.size(), cfg.agent.gamma, action_set_hash(set)};
}

void write_train_report_csv(const std::string& path, const TrainReport& report) {
  std::ostringstream out;
  out << "episode,return,final_y,best_y\n";
  for (std::size_t i = 0; i < report.episode_returns.size(); ++i)
    out << i + 1 << ',' << io::format_double(report.episode_returns[i]) << ','
        << io::format_double(report.episode_final_y[i]) << ','
        << io::format_double(report.episode_best_y[i]) << '\n';
  io::write_text_file(path, out.str());
}

void write_summary_json(const RunContext& ctx, const EvalReport& report,
                        const TunedBaseline& tuned) {
  int censored_nag = 0;
  int censored_sus = 0;
  for (const EvalRecord& rec : report.records) {
    censored_nag += rec.censored_nag ? 1 : 0;
    censored_sus += rec.censored_sus ? 1 : 0;
  }
  json doc;
  doc["mode"] = run_mode_name(report.mode);
  doc["instances"] = report.records.size();
  doc["excluded"] = report.excluded;
  doc["metric"] = {{"mean", report.aggregates.mean},
                   {"stddev", report.aggregates.stddev},
                   {"median", report.aggregates.median},
                   {"q25", report.aggregates.q25},
                   {"q75", report.aggregates.q75},
                   {"count", report.aggregates.count}};
  doc["censored_nag"] = censored_nag;
  doc["censored_sus"] = censored_sus;
  doc["baseline"] = {{"eta_star", tuned.hp.eta1},
                     {"mu_star", tuned.hp.mu},
                     {"delta_star", tuned.hp.delta},
                     {"objective", tuned.objective}};
  doc["config_hash"] = ctx.config_hash;
  doc["master_seed"] = ctx.master_seed;
  io::write_text_file((ctx.out_dir / "summary.json").string(),
                      doc.dump(2) + "\n");
}

void write_nag_trace_csv(const std::string& path, const NagRunResult& run) {
  std::ostringstream out;
  out << "k,y,best_y\n";
  double best = run.ys.empty() ? 0.0 : run.ys.front();
  for (std::size_t i = 0; i < run.ys.size(); ++i) {
    best = std::min(best, run.ys[i]);
    out << i + 1 << ',' << io::format_double(run.ys[i]) << ','
        << io::format_double(best) << '\n';
  }
  io::write_text_file(path, out.str());
}

}  // namespace

void run_gen_problems(const CommonArgs& args) {
  const RunContext ctx = open_run(args);
  const ProblemSet train = sample_problem_set(
      ctx.cfg.d, ctx.cfg.kappa, ctx.cfg.train_instances,
      train_problems_seed(ctx.master_seed), SetRole::kTraining);
  const ProblemSet test = sample_problem_set(
      ctx.cfg.d, ctx.cfg.kappa, ctx.cfg.test_instances,
      test_problems_seed(ctx.master_seed), SetRole::kTest);
  save_problem_set((ctx.out_dir / "train_problems.bin").string(), train);
  save_problem_set((ctx.out_dir / "test_problems.bin").string(), test);
  write_manifest(ctx, "gen-problems",
                 json{{"train_problems", train.seed}, {"test_problems", test.seed}},
                 {"train_problems.bin", "test_problems.bin"});
  std::cout << "wrote " << train.size() << "+" << test.size()
            << " instances (d=" << ctx.cfg.d << ") to " << ctx.out_dir.string()
            << "\n";
}

void run_tune(const CommonArgs& args) {
  const RunContext ctx = open_run(args);
  const ProblemSet train = obtain_problem_set(ctx, SetRole::kTraining);
  TunedBaseline tuned = tune_baseline(train, make_tuner_config(ctx.cfg, ctx.master_seed));
  tuned.config_hash = ctx.config_hash;
  save_tuned((ctx.out_dir / "tuned_nag.json").string(), tuned);
  write_manifest(ctx, "tune", json{{"tuner", tuned.seed}}, {"tuned_nag.json"});
  std::cout << "tuned baseline: eta*=" << io::format_double(tuned.hp.eta1)
            << " mu*=" << io::format_double(tuned.hp.mu)
            << " delta*=" << io::format_double(tuned.hp.delta)
            << " objective=" << io::format_double(tuned.objective) << "\n";
}

void run_train(const CommonArgs& args) {
  const RunContext ctx = open_run(args);
  const ProblemSet train = obtain_problem_set(ctx, SetRole::kTraining);
  const TunedBaseline tuned = obtain_tuned(ctx);
  const ActionSet set = action_set_for(ctx.cfg, tuned.hp);
  const std::uint64_t seed = training_seed(ctx.master_seed);
  auto [q, report] = train_agent(train, set, ctx.cfg.env_config(),
                                 ctx.cfg.agent, seed, ctx.cfg.protocol);
  save_qtable((ctx.out_dir / "qtable.bin").string(), q);
  write_train_report_csv((ctx.out_dir / "train_report.csv").string(), report);
  write_manifest(ctx, "train", json{{"train", seed}},
                 {"qtable.bin", "train_report.csv"});
  std::cout << "trained " << ctx.cfg.agent.N << " episodes ("
            << report.total_steps << " steps) on action set " << set.name
            << "\n";
}

void run_eval(const CommonArgs& args, int trace_count) {
  if (trace_count < 0) throw std::invalid_argument("trace count must be >= 0");
  const RunContext ctx = open_run(args);
  const ProblemSet test = obtain_problem_set(ctx, SetRole::kTest);
  const TunedBaseline tuned = obtain_tuned(ctx);
  const ActionSet set = action_set_for(ctx.cfg, tuned.hp);
  const QTable q = load_qtable((ctx.out_dir / "qtable.bin").string(),
                               expected_fingerprint(ctx.cfg, set));

  const EnvConfig env = ctx.cfg.env_config();
  const std::uint64_t seed = eval_seed(ctx.master_seed);
  const std::vector<InstanceOutcome> nag_out =
      evaluate_nag(test, tuned.hp, env, ctx.cfg.protocol);
  const std::vector<InstanceOutcome> sus_out =
      evaluate_policy(test, q, set, env, ctx.cfg.protocol, seed);
  const EvalReport report =
      build_eval_report(nag_out, sus_out, ctx.cfg.protocol.mode);

  write_eval_csv((ctx.out_dir / "eval.csv").string(), report);
  write_summary_json(ctx, report, tuned);
  std::vector<std::string> outputs = {"eval.csv", "summary.json"};

  if (trace_count > 0) {
    const fs::path trace_dir = ctx.out_dir / "traces";
    fs::create_directories(trace_dir);
    const int n = std::min(trace_count, test.size());
    for (int i = 0; i < n; ++i) {
      const QuadraticProblem& p = test.instances[static_cast<std::size_t>(i)];
      const EnvConfig episode_env = protocol_env_config(env, ctx.cfg.protocol, p);
      const EpisodeTrace trace = run_policy_episode(
          p, q, set, episode_env, derive_seed(seed, static_cast<std::uint64_t>(i)));
      const std::string name = "traces/sus_trace_" + std::to_string(i) + ".csv";
      write_trace_csv((ctx.out_dir / name).string(), trace);
      outputs.push_back(name);
      if (ctx.cfg.protocol.mode == RunMode::kFixedBudget) {
        const NagRunResult run =
            run_nag_fixed(p, tuned.hp, env.K, env.literal_interim);
        const std::string nag_name =
            "traces/nag_trace_" + std::to_string(i) + ".csv";
        write_nag_trace_csv((ctx.out_dir / nag_name).string(), run);
        outputs.push_back(nag_name);
      }
    }
  }

  write_manifest(ctx, "eval", json{{"eval", seed}}, outputs);
  std::cout << "evaluated " << test.size() << " instances: metric mean="
            << io::format_double(report.aggregates.mean)
            << " median=" << io::format_double(report.aggregates.median)
            << (report.excluded > 0
                    ? " (" + std::to_string(report.excluded) + " excluded)"
                    : "")
            << "\n";
}

void run_sweep_episodes(const CommonArgs& args) {
  const RunContext ctx = open_run(args);
  const auto rows = sweep_training_length(ctx.cfg, ctx.master_seed);
  write_episode_sweep_csv((ctx.out_dir / "sweep_episodes.csv").string(), rows);
  write_manifest(ctx, "sweep-episodes",
                 json{{"sweep", derive_seed(ctx.master_seed, "sweep-episodes")}},
                 {"sweep_episodes.csv"});
  std::cout << "episode sweep: " << rows.size() << " rows\n";
}

void run_sweep_dim(const CommonArgs& args) {
  const RunContext ctx = open_run(args);
  const auto rows = sweep_dimension(ctx.cfg, ctx.master_seed);
  write_dim_sweep_csv((ctx.out_dir / "sweep_dim.csv").string(), rows);
  write_manifest(ctx, "sweep-dim",
                 json{{"sweep", derive_seed(ctx.master_seed, "sweep-dim")}},
                 {"sweep_dim.csv"});
  std::cout << "dimension sweep: " << rows.size() << " rows\n";
}

void run_export_policy(const CommonArgs& args) {
  const RunContext ctx = open_run(args);
  const TunedBaseline tuned = obtain_tuned(ctx);
  const ActionSet set = action_set_for(ctx.cfg, tuned.hp);
  const QTable q = load_qtable((ctx.out_dir / "qtable.bin").string(),
                               expected_fingerprint(ctx.cfg, set));
  const PolicyTable policy = greedy_policy(q);
  save_policy((ctx.out_dir / "policy.bin").string(), policy);
  write_policy_csv((ctx.out_dir / "policy.csv").string(), policy);
  write_manifest(ctx, "export-policy", json::object(),
                 {"policy.bin", "policy.csv"});
  std::cout << "exported greedy policy (" << policy.fp.m1 << "x" << policy.fp.m2
            << " states, " << policy.fp.J << " actions)\n";
}

}  // namespace sus::cli
