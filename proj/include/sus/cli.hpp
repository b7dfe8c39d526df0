#ifndef SUS_CLI_HPP
#define SUS_CLI_HPP

#include <cstdint>
#include <string>

namespace sus::cli {

// Shared arguments of every subcommand. The optional output_dir overrides
// the config's, so one config can drive runs into separate directories.
struct CommonArgs {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string output_dir;  // empty: use the config's
};

// Each command loads the config, derives its seeds from args.seed, writes
// its artifacts plus a manifest into the output directory, and throws on any
// error (the binary maps that to a nonzero exit code).
//
// Artifact flow: problem sets are regenerated on demand and validated
// against existing files; tuned parameters and value tables must come from
// a previous `tune` / `train` in the same output directory.
void run_gen_problems(const CommonArgs& args);
void run_tune(const CommonArgs& args);
void run_train(const CommonArgs& args);
void run_eval(const CommonArgs& args, int trace_count = 0);
void run_sweep_episodes(const CommonArgs& args);
void run_sweep_dim(const CommonArgs& args);
void run_export_policy(const CommonArgs& args);

}  // namespace sus::cli

#endif  // SUS_CLI_HPP
