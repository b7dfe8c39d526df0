#include "sus/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "sus/io_util.hpp"

namespace sus {

using nlohmann::json;

RunMode parse_run_mode(const std::string& name) {
  if (name == "fixed_budget") return RunMode::kFixedBudget;
  if (name == "fixed_target") return RunMode::kFixedTarget;
  throw std::invalid_argument("unknown mode: " + name);
}

std::string run_mode_name(RunMode mode) {
  return mode == RunMode::kFixedBudget ? "fixed_budget" : "fixed_target";
}

void RunProtocol::validate() const {
  if (!(target_fraction > 0.0 && target_fraction < 1.0))
    throw std::invalid_argument("target_fraction must lie in (0, 1)");
  if (eval_cap_factor < 1)
    throw std::invalid_argument("eval_cap_factor must be >= 1");
}

void ExperimentConfig::validate() const {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  kappa.validate();
  if (train_instances < 1 || test_instances < 1)
    throw std::invalid_argument("instance counts must be >= 1");
  if (K < 1) throw std::invalid_argument("budget K must be >= 1");
  protocol.validate();
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("bin counts must be >= 1");
  if (!auto_bounds && !(l < u))
    throw std::invalid_argument("state bounds require l < u");
  if (auto_bounds && !(auto_width > 0.0))
    throw std::invalid_argument("automatic state bounds need positive width");
  if (reward == RewardKind::kStepCost && protocol.mode != RunMode::kFixedTarget)
    throw std::invalid_argument(
        "step cost reward needs fixed_target mode; in a fixed budget every "
        "episode costs the same");
  agent.validate();
  if (sweep.seeds_per_point < 1)
    throw std::invalid_argument("seeds_per_point must be >= 1");
  for (const auto& [v1, v2] : sweep.state_variants)
    if (v1 < 1 || v2 < 1)
      throw std::invalid_argument("state variants need bin counts >= 1");
  for (int n : sweep.episode_grid)
    if (n < 0) throw std::invalid_argument("episode grid entries must be >= 0");
  for (int dim : sweep.dim_grid)
    if (dim < 1) throw std::invalid_argument("dimension grid entries must be >= 1");
}

EnvConfig ExperimentConfig::env_config() const {
  EnvConfig env;
  env.K = K;
  env.m1 = m1;
  env.m2 = m2;
  env.auto_bounds = auto_bounds;
  env.auto_width = auto_width;
  env.l = l;
  env.u = u;
  env.use_log_state = use_log_state;
  env.reward_kind = reward;
  env.greedy_revert = greedy_revert;
  env.literal_interim = literal_interim;
  return env;
}

namespace {

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* name : allowed)
      if (key == name) {
        known = true;
        break;
      }
    if (!known)
      throw std::invalid_argument(where + ": unknown key \"" + key + "\"");
  }
}

KappaSpec parse_kappa(const json& node, const std::string& where) {
  if (node.is_number()) return KappaSpec::fixed(node.get<double>());
  if (node.is_object()) {
    check_keys(node, where, {"lo", "hi"});
    KappaSpec spec;
    spec.lo = node.value("lo", 1.0);
    spec.hi = node.value("hi", spec.lo);
    return spec;
  }
  throw std::invalid_argument(where + ": expected a number or {lo, hi}");
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(origin + ": invalid JSON (" + e.what() + ")");
  }
  if (!doc.is_object())
    throw std::invalid_argument(origin + ": config must be a JSON object");

  check_keys(doc, origin,
             {"d", "kappa", "train_instances", "test_instances", "K", "mode",
              "target_fraction", "eval_cap_factor", "action_set", "m1", "m2",
              "use_log_state", "auto_bounds", "auto_width", "l", "u", "reward",
              "greedy_revert", "literal_interim", "eps0", "alpha0", "gamma",
              "episodes", "final_fraction", "tuner", "sweep", "output_dir"});

  ExperimentConfig cfg;
  try {
    cfg.d = doc.value("d", cfg.d);
    if (doc.contains("kappa")) cfg.kappa = parse_kappa(doc["kappa"], origin + ".kappa");
    cfg.train_instances = doc.value("train_instances", cfg.train_instances);
    cfg.test_instances = doc.value("test_instances", cfg.test_instances);
    cfg.K = doc.value("K", cfg.K);
    if (doc.contains("mode"))
      cfg.protocol.mode = parse_run_mode(doc["mode"].get<std::string>());
    cfg.protocol.target_fraction =
        doc.value("target_fraction", cfg.protocol.target_fraction);
    cfg.protocol.eval_cap_factor =
        doc.value("eval_cap_factor", cfg.protocol.eval_cap_factor);
    if (doc.contains("action_set"))
      cfg.action_set =
          parse_action_set_variant(doc["action_set"].get<std::string>());
    cfg.m1 = doc.value("m1", cfg.m1);
    cfg.m2 = doc.value("m2", cfg.m2);
    cfg.use_log_state = doc.value("use_log_state", cfg.use_log_state);
    cfg.auto_bounds = doc.value("auto_bounds", cfg.auto_bounds);
    cfg.auto_width = doc.value("auto_width", cfg.auto_width);
    cfg.l = doc.value("l", cfg.l);
    cfg.u = doc.value("u", cfg.u);
    if (doc.contains("reward"))
      cfg.reward = parse_reward_kind(doc["reward"].get<std::string>());
    cfg.greedy_revert = doc.value("greedy_revert", cfg.greedy_revert);
    cfg.literal_interim = doc.value("literal_interim", cfg.literal_interim);
    cfg.agent.eps0 = doc.value("eps0", cfg.agent.eps0);
    cfg.agent.alpha0 = doc.value("alpha0", cfg.agent.alpha0);
    cfg.agent.gamma = doc.value("gamma", cfg.agent.gamma);
    cfg.agent.N = doc.value("episodes", cfg.agent.N);
    cfg.agent.final_fraction =
        doc.value("final_fraction", cfg.agent.final_fraction);

    if (doc.contains("tuner")) {
      const json& t = doc["tuner"];
      check_keys(t, origin + ".tuner",
                 {"max_iters", "sample_size", "aggregation", "resample", "init"});
      cfg.tuner.max_iters = t.value("max_iters", cfg.tuner.max_iters);
      cfg.tuner.sample_size = t.value("sample_size", cfg.tuner.sample_size);
      if (t.contains("aggregation"))
        cfg.tuner.aggregation =
            parse_aggregation(t["aggregation"].get<std::string>());
      cfg.tuner.resample = t.value("resample", cfg.tuner.resample);
      if (t.contains("init")) {
        const json& init = t["init"];
        check_keys(init, origin + ".tuner.init", {"eta1", "mu", "delta"});
        cfg.tuner.init.eta1 = init.value("eta1", cfg.tuner.init.eta1);
        cfg.tuner.init.mu = init.value("mu", cfg.tuner.init.mu);
        cfg.tuner.init.delta = init.value("delta", cfg.tuner.init.delta);
      }
    }

    if (doc.contains("sweep")) {
      const json& s = doc["sweep"];
      check_keys(s, origin + ".sweep",
                 {"episode_grid", "dim_grid", "seeds_per_point",
                  "state_variants"});
      if (s.contains("episode_grid"))
        cfg.sweep.episode_grid = s["episode_grid"].get<std::vector<int>>();
      if (s.contains("dim_grid"))
        cfg.sweep.dim_grid = s["dim_grid"].get<std::vector<int>>();
      cfg.sweep.seeds_per_point =
          s.value("seeds_per_point", cfg.sweep.seeds_per_point);
      if (s.contains("state_variants")) {
        cfg.sweep.state_variants.clear();
        for (const json& pair : s["state_variants"]) {
          if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument(origin +
                                        ".sweep.state_variants: expected "
                                        "[m1, m2] pairs");
          cfg.sweep.state_variants.emplace_back(pair[0].get<int>(),
                                                pair[1].get<int>());
        }
      }
    }

    cfg.output_dir = doc.value("output_dir", cfg.output_dir);
  } catch (const json::exception& e) {
    throw std::invalid_argument(origin + ": malformed config (" + e.what() +
                                ")");
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(io::read_text_file(path), path);
}

std::string config_hash_hex(const std::string& config_text) {
  const std::string canonical = json::parse(config_text).dump();
  return io::hex_u64(fnv1a64(canonical));
}

std::uint64_t train_problems_seed(std::uint64_t master) {
  return derive_seed(master, "train-problems");
}
std::uint64_t test_problems_seed(std::uint64_t master) {
  return derive_seed(master, "test-problems");
}
std::uint64_t tuner_seed(std::uint64_t master) {
  return derive_seed(master, "tuner");
}
std::uint64_t training_seed(std::uint64_t master) {
  return derive_seed(master, "train");
}
std::uint64_t eval_seed(std::uint64_t master) {
  return derive_seed(master, "eval");
}

TunerConfig make_tuner_config(const ExperimentConfig& cfg,
                              std::uint64_t master_seed) {
  TunerConfig t = cfg.tuner;
  t.K = cfg.K;
  t.seed = tuner_seed(master_seed);
  t.literal_interim = cfg.literal_interim;
  return t;
}

ActionSet action_set_for(const ExperimentConfig& cfg,
                         const NagHyperparams& tuned) {
  return make_action_set(cfg.action_set, tuned.eta1, tuned.mu, tuned.delta);
}

std::pair<QTable, TrainReport> train_agent(const ProblemSet& training_set,
                                           const ActionSet& set,
                                           const EnvConfig& env_cfg,
                                           const AgentConfig& agent_cfg,
                                           std::uint64_t seed) {
  return train_agent(training_set, set, env_cfg, agent_cfg, seed,
                     RunProtocol{});
}

std::pair<QTable, TrainReport> train_agent(const ProblemSet& training_set,
                                           const ActionSet& set,
                                           const EnvConfig& env_cfg,
                                           const AgentConfig& agent_cfg,
                                           std::uint64_t seed,
                                           const RunProtocol& protocol) {
  env_cfg.validate();
  agent_cfg.validate();
  protocol.validate();
  set.validate();
  if (training_set.size() < 1)
    throw std::invalid_argument("training set is empty");

  QTable q = QTable::zeros(env_cfg.m1, env_cfg.m2, set.size(),
                           agent_cfg.gamma, action_set_hash(set));
  TrainReport report;
  report.episode_returns.reserve(static_cast<std::size_t>(agent_cfg.N));

  const bool target_mode = protocol.mode == RunMode::kFixedTarget;
  Rng rng(seed);
  Environment budget_env(env_cfg);
  for (int n = 1; n <= agent_cfg.N; ++n) {
    const double eps =
        schedule_value(agent_cfg.eps0, n, agent_cfg.N, agent_cfg.final_fraction);
    const double alpha = schedule_value(agent_cfg.alpha0, n, agent_cfg.N,
                                        agent_cfg.final_fraction);
    const QuadraticProblem& p =
        training_set
            .instances[static_cast<std::size_t>(rng.uniform_int(training_set.size()))];

    // The per-instance target forces a fresh environment in target mode.
    std::optional<Environment> target_env;
    if (target_mode)
      target_env.emplace(protocol_env_config(env_cfg, protocol, p));
    Environment& env = target_mode ? *target_env : budget_env;

    Observation obs = env.reset(p, set);
    double episode_return = 0.0;
    if (!obs.terminated) {
      int s1 = obs.s1;
      int s2 = obs.s2;
      int a = select_action(q, s1, s2, eps, rng);
      while (true) {
        const Observation next = env.step(a, rng);
        episode_return += next.r;
        ++report.total_steps;
        if (next.terminated) {
          sarsa_update_terminal(q, s1, s2, a, next.r, alpha);
          break;
        }
        const int a_next = select_action(q, next.s1, next.s2, eps, rng);
        sarsa_update(q, s1, s2, a, next.r, next.s1, next.s2, a_next, alpha,
                     agent_cfg.gamma);
        s1 = next.s1;
        s2 = next.s2;
        a = a_next;
      }
    }
    report.episode_returns.push_back(episode_return);
    report.episode_final_y.push_back(env.last_observed());
    report.episode_best_y.push_back(env.best_y());
  }
  return {std::move(q), std::move(report)};
}

EpisodeTrace run_policy_episode(const QuadraticProblem& p, const QTable& q,
                                const ActionSet& set, const EnvConfig& cfg,
                                std::uint64_t seed) {
  Rng rng(seed);
  const PolicyFn policy = [&q, &rng](const Observation& obs) {
    return select_action(q, obs.s1, obs.s2, 0.0, rng);
  };
  return run_episode(p, policy, set, cfg, rng);
}

EnvConfig protocol_env_config(const EnvConfig& base, const RunProtocol& protocol,
                              const QuadraticProblem& p) {
  EnvConfig env = base;
  if (protocol.mode == RunMode::kFixedTarget) {
    env.K = base.K * protocol.eval_cap_factor;
    env.s2_horizon = base.K;  // keep the time feature aligned with training
    env.target = protocol.target_fraction * evaluate(p, p.x1);
  } else {
    env.target.reset();
  }
  return env;
}

namespace {

InstanceOutcome outcome_from_trace(int instance_id, const EpisodeTrace& trace,
                                   RunMode mode) {
  InstanceOutcome out;
  out.instance_id = instance_id;
  out.y1 = trace.rows.front().y;
  out.final_y = trace.rows.back().y;
  out.best_y = trace.best_y;
  out.evals = trace.evals;
  out.censored =
      mode == RunMode::kFixedTarget && trace.reason == TerminationReason::kBudget;
  return out;
}

void check_policy_fingerprint(const QTable& q, const ActionSet& set,
                              const EnvConfig& env_cfg) {
  if (q.fp.m1 != env_cfg.m1 || q.fp.m2 != env_cfg.m2 ||
      q.fp.J != set.size() || q.fp.action_hash != action_set_hash(set))
    throw std::invalid_argument(
        "value table fingerprint does not match the evaluation setup");
}

}  // namespace

std::vector<InstanceOutcome> evaluate_policy(const ProblemSet& test_set,
                                             const QTable& q,
                                             const ActionSet& set,
                                             const EnvConfig& env_cfg,
                                             const RunProtocol& protocol,
                                             std::uint64_t seed) {
  check_policy_fingerprint(q, set, env_cfg);
  std::vector<InstanceOutcome> outcomes;
  outcomes.reserve(test_set.instances.size());
  for (int i = 0; i < test_set.size(); ++i) {
    const QuadraticProblem& p = test_set.instances[static_cast<std::size_t>(i)];
    const EnvConfig env = protocol_env_config(env_cfg, protocol, p);
    const EpisodeTrace trace = run_policy_episode(
        p, q, set, env, derive_seed(seed, static_cast<std::uint64_t>(i)));
    outcomes.push_back(outcome_from_trace(i, trace, protocol.mode));
  }
  return outcomes;
}

std::vector<InstanceOutcome> evaluate_nag(const ProblemSet& test_set,
                                          const NagHyperparams& hp,
                                          const EnvConfig& env_cfg,
                                          const RunProtocol& protocol) {
  std::vector<InstanceOutcome> outcomes;
  outcomes.reserve(test_set.instances.size());
  for (int i = 0; i < test_set.size(); ++i) {
    const QuadraticProblem& p = test_set.instances[static_cast<std::size_t>(i)];
    InstanceOutcome out;
    out.instance_id = i;
    if (protocol.mode == RunMode::kFixedBudget) {
      const NagRunResult run =
          run_nag_fixed(p, hp, env_cfg.K, env_cfg.literal_interim);
      out.y1 = run.ys.front();
      out.final_y = run.final_y;
      out.best_y = run.best_y;
      out.evals = env_cfg.K;
      out.censored = false;
    } else {
      const double y1 = evaluate(p, p.x1);
      const TargetRunResult run = run_nag_to_target(
          p, hp, protocol.target_fraction * y1,
          env_cfg.K * protocol.eval_cap_factor, env_cfg.literal_interim);
      out.y1 = clamp_observed(y1);
      out.final_y = run.final_y;
      out.best_y = run.best_y;
      out.evals = run.evals;
      out.censored = run.censored;
    }
    outcomes.push_back(out);
  }
  return outcomes;
}

double relative_improvement(double y_nag, double y_sus) {
  if (!(y_nag > 0.0))
    throw std::invalid_argument(
        "relative improvement needs a positive baseline objective");
  return (y_nag - y_sus) / y_nag;
}

double runtime_reduction(int k_nag, int k_sus) {
  if (k_nag < 1)
    throw std::invalid_argument("baseline iteration count must be >= 1");
  return static_cast<double>(k_nag - k_sus) / static_cast<double>(k_nag);
}

double quantiles(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of empty list");
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = lo + 1 < values.size() ? lo + 1 : lo;
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

namespace {

EvalAggregates aggregate_metrics(const std::vector<double>& metrics) {
  EvalAggregates agg;
  agg.count = static_cast<int>(metrics.size());
  if (metrics.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    agg.mean = agg.stddev = agg.median = agg.q25 = agg.q75 = nan;
    return agg;
  }
  double sum = 0.0;
  for (double m : metrics) sum += m;
  agg.mean = sum / static_cast<double>(metrics.size());
  double ss = 0.0;
  for (double m : metrics) ss += (m - agg.mean) * (m - agg.mean);
  agg.stddev = metrics.size() > 1
                   ? std::sqrt(ss / static_cast<double>(metrics.size() - 1))
                   : 0.0;
  agg.median = quantiles(metrics, 0.5);
  agg.q25 = quantiles(metrics, 0.25);
  agg.q75 = quantiles(metrics, 0.75);
  return agg;
}

}  // namespace

EvalReport build_eval_report(const std::vector<InstanceOutcome>& nag,
                             const std::vector<InstanceOutcome>& sus,
                             RunMode mode) {
  if (nag.size() != sus.size())
    throw std::invalid_argument("outcome lists differ in length");
  EvalReport report;
  report.mode = mode;
  report.records.reserve(nag.size());
  std::vector<double> metrics;
  metrics.reserve(nag.size());

  for (std::size_t i = 0; i < nag.size(); ++i) {
    if (nag[i].instance_id != sus[i].instance_id)
      throw std::invalid_argument("outcome lists are not paired by instance");
    EvalRecord rec;
    rec.instance_id = nag[i].instance_id;
    rec.y1 = nag[i].y1;
    rec.censored_nag = nag[i].censored;
    rec.censored_sus = sus[i].censored;
    if (mode == RunMode::kFixedBudget) {
      rec.nag = nag[i].final_y;
      rec.sus = sus[i].final_y;
      if (rec.nag > 0.0) {
        rec.metric = relative_improvement(rec.nag, rec.sus);
      } else {
        rec.excluded = true;
        rec.metric = std::numeric_limits<double>::quiet_NaN();
        std::cerr << "warning: instance " << rec.instance_id
                  << " excluded from aggregates (baseline objective "
                  << io::format_double(rec.nag) << " is not positive)\n";
      }
    } else {
      rec.nag = static_cast<double>(nag[i].evals);
      rec.sus = static_cast<double>(sus[i].evals);
      rec.metric = runtime_reduction(nag[i].evals, sus[i].evals);
    }
    if (!rec.excluded) metrics.push_back(rec.metric);
    else ++report.excluded;
    report.records.push_back(rec);
  }

  report.aggregates = aggregate_metrics(metrics);
  return report;
}

void write_eval_csv(const std::string& path, const EvalReport& report) {
  std::ostringstream out;
  const bool target_mode = report.mode == RunMode::kFixedTarget;
  out << "instance_id,y1,y_nag,y_sus,metric";
  if (target_mode) out << ",censored_nag,censored_sus";
  out << '\n';
  for (const EvalRecord& rec : report.records) {
    out << rec.instance_id << ',' << io::format_double(rec.y1) << ','
        << io::format_double(rec.nag) << ',' << io::format_double(rec.sus)
        << ',';
    if (!rec.excluded) out << io::format_double(rec.metric);
    if (target_mode)
      out << ',' << (rec.censored_nag ? 1 : 0) << ','
          << (rec.censored_sus ? 1 : 0);
    out << '\n';
  }
  io::write_text_file(path, out.str());
}

std::vector<EpisodeSweepRow> sweep_training_length(const ExperimentConfig& cfg,
                                                   std::uint64_t master_seed) {
  if (cfg.sweep.episode_grid.empty())
    throw std::invalid_argument("episode grid is empty");

  const ProblemSet train_set =
      sample_problem_set(cfg.d, cfg.kappa, cfg.train_instances,
                         train_problems_seed(master_seed), SetRole::kTraining);
  const ProblemSet test_set =
      sample_problem_set(cfg.d, cfg.kappa, cfg.test_instances,
                         test_problems_seed(master_seed), SetRole::kTest);
  const TunedBaseline tuned =
      tune_baseline(train_set, make_tuner_config(cfg, master_seed));
  const ActionSet set = action_set_for(cfg, tuned.hp);

  RunProtocol protocol;
  protocol.mode = RunMode::kFixedBudget;

  std::vector<std::pair<int, int>> variants = cfg.sweep.state_variants;
  if (variants.empty()) variants.emplace_back(cfg.m1, cfg.m2);

  const std::uint64_t base = derive_seed(master_seed, "sweep-episodes");
  std::vector<EpisodeSweepRow> rows;
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    EnvConfig env = cfg.env_config();
    env.m1 = variants[vi].first;
    env.m2 = variants[vi].second;

    const std::vector<InstanceOutcome> nag_out =
        evaluate_nag(test_set, tuned.hp, env, protocol);

    for (std::size_t gi = 0; gi < cfg.sweep.episode_grid.size(); ++gi) {
      AgentConfig agent = cfg.agent;
      agent.N = cfg.sweep.episode_grid[gi];

      std::vector<double> means;
      means.reserve(static_cast<std::size_t>(cfg.sweep.seeds_per_point));
      for (int si = 0; si < cfg.sweep.seeds_per_point; ++si) {
        const std::uint64_t point_seed = derive_seed(
            derive_seed(derive_seed(base, static_cast<std::uint64_t>(vi)),
                        static_cast<std::uint64_t>(gi)),
            static_cast<std::uint64_t>(si));
        auto [q, train_report] =
            train_agent(train_set, set, env, agent, point_seed);
        const std::vector<InstanceOutcome> sus_out = evaluate_policy(
            test_set, q, set, env, protocol, derive_seed(point_seed, "eval"));
        const EvalReport report =
            build_eval_report(nag_out, sus_out, RunMode::kFixedBudget);
        means.push_back(report.aggregates.mean);
      }

      EpisodeSweepRow row;
      row.episodes = agent.N;
      row.m1 = env.m1;
      row.m2 = env.m2;
      row.seeds = cfg.sweep.seeds_per_point;
      double sum = 0.0;
      for (double m : means) sum += m;
      row.mean_improvement = sum / static_cast<double>(means.size());
      double ss = 0.0;
      for (double m : means)
        ss += (m - row.mean_improvement) * (m - row.mean_improvement);
      row.std_improvement =
          means.size() > 1
              ? std::sqrt(ss / static_cast<double>(means.size() - 1))
              : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_episode_sweep_csv(const std::string& path,
                             const std::vector<EpisodeSweepRow>& rows) {
  std::ostringstream out;
  out << "episodes,m1,m2,mean_improvement,std_improvement,seeds\n";
  for (const EpisodeSweepRow& row : rows)
    out << row.episodes << ',' << row.m1 << ',' << row.m2 << ','
        << io::format_double(row.mean_improvement) << ','
        << io::format_double(row.std_improvement) << ',' << row.seeds << '\n';
  io::write_text_file(path, out.str());
}

std::vector<DimSweepRow> sweep_dimension(const ExperimentConfig& cfg,
                                         std::uint64_t master_seed) {
  if (cfg.sweep.dim_grid.empty())
    throw std::invalid_argument("dimension grid is empty");

  RunProtocol protocol = cfg.protocol;
  protocol.mode = RunMode::kFixedTarget;

  const std::uint64_t base = derive_seed(master_seed, "sweep-dim");
  std::vector<DimSweepRow> rows;
  for (std::size_t di = 0; di < cfg.sweep.dim_grid.size(); ++di) {
    const int d = cfg.sweep.dim_grid[di];
    const std::uint64_t dim_seed =
        derive_seed(base, static_cast<std::uint64_t>(di));

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

    const EnvConfig env = cfg.env_config();
    const std::vector<InstanceOutcome> nag_out =
        evaluate_nag(test_set, tuned.hp, env, protocol);

    DimSweepRow row;
    row.d = d;
    row.seeds = cfg.sweep.seeds_per_point;
    for (const InstanceOutcome& out : nag_out)
      if (out.censored) ++row.censored_nag;

    std::vector<double> pooled;
    pooled.reserve(static_cast<std::size_t>(cfg.sweep.seeds_per_point) *
                   test_set.instances.size());
    for (int si = 0; si < cfg.sweep.seeds_per_point; ++si) {
      const std::uint64_t train_seed = derive_seed(
          derive_seed(dim_seed, "train"), static_cast<std::uint64_t>(si));
      auto [q, train_report] =
          train_agent(train_set, set, env, cfg.agent, train_seed, protocol);
      const std::vector<InstanceOutcome> sus_out = evaluate_policy(
          test_set, q, set, env, protocol, derive_seed(train_seed, "eval"));
      const EvalReport report =
          build_eval_report(nag_out, sus_out, RunMode::kFixedTarget);
      for (const EvalRecord& rec : report.records) {
        pooled.push_back(rec.metric);
        if (rec.censored_sus) ++row.censored_sus;
      }
    }

    row.instances = static_cast<int>(pooled.size());
    row.median_reduction = quantiles(pooled, 0.5);
    row.q25_reduction = quantiles(pooled, 0.25);
    row.q75_reduction = quantiles(pooled, 0.75);
    rows.push_back(row);
  }
  return rows;
}

void write_dim_sweep_csv(const std::string& path,
                         const std::vector<DimSweepRow>& rows) {
  std::ostringstream out;
  out << "d,median_reduction,q25_reduction,q75_reduction,censored_nag,"
         "censored_sus,seeds,instances\n";
  for (const DimSweepRow& row : rows)
    out << row.d << ',' << io::format_double(row.median_reduction) << ','
        << io::format_double(row.q25_reduction) << ','
        << io::format_double(row.q75_reduction) << ',' << row.censored_nag
        << ',' << row.censored_sus << ',' << row.seeds << ',' << row.instances
        << '\n';
  io::write_text_file(path, out.str());
}

}  // namespace sus
