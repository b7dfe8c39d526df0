#include <CLI11.hpp>
#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "sus/cli.hpp"
#include "sus/version.hpp"

namespace {

struct Subcommand {
  sus::cli::CommonArgs args;
  std::function<void()> run;
};

void add_common(CLI::App* cmd, sus::cli::CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config (JSON)")
      ->required();
  cmd->add_option("--seed", args.seed, "master seed (64-bit)")->required();
  cmd->add_option("--output-dir", args.output_dir,
                  "override the config's output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential update selection for budget-limited first-order "
               "optimization"};
  app.set_version_flag("--version", sus::kVersion);
  app.require_subcommand(1);

  std::vector<std::unique_ptr<Subcommand>> subs;
  auto add = [&](const std::string& name, const std::string& desc,
                 auto&& body) -> CLI::App* {
    auto sub = std::make_unique<Subcommand>();
    CLI::App* cmd = app.add_subcommand(name, desc);
    add_common(cmd, sub->args);
    Subcommand* raw = sub.get();
    sub->run = [raw, body]() { body(raw->args); };
    cmd->callback([raw]() { raw->run(); });
    subs.push_back(std::move(sub));
    return cmd;
  };

  add("gen-problems", "generate and persist the problem sets",
      [](const sus::cli::CommonArgs& a) { sus::cli::run_gen_problems(a); });
  add("tune", "hyperoptimize the baseline on the training set",
      [](const sus::cli::CommonArgs& a) { sus::cli::run_tune(a); });
  add("train", "train the update-selection agent",
      [](const sus::cli::CommonArgs& a) { sus::cli::run_train(a); });

  int trace_count = 0;
  CLI::App* eval_cmd = add(
      "eval", "evaluate the trained agent against the baseline",
      [&trace_count](const sus::cli::CommonArgs& a) {
        sus::cli::run_eval(a, trace_count);
      });
  eval_cmd->add_option("--traces", trace_count,
                       "export episode traces for the first N test instances");

  add("sweep-episodes", "fixed-budget sweep over training lengths",
      [](const sus::cli::CommonArgs& a) { sus::cli::run_sweep_episodes(a); });
  add("sweep-dim", "fixed-target sweep over problem dimensions",
      [](const sus::cli::CommonArgs& a) { sus::cli::run_sweep_dim(a); });
  add("export-policy", "extract the greedy policy from a trained table",
      [](const sus::cli::CommonArgs& a) { sus::cli::run_export_policy(a); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
