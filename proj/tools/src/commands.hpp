#pragma once

#include <CLI11.hpp>

#include <functional>

namespace qpgc::cli {

struct Invocation {
  int argc = 0;
  char** argv = nullptr;
};

/// Body of a subcommand; returns the process exit code.
using Runner = std::function<int()>;

// Each adds one or more subcommands to `app`. The runner slot is set when
// the subcommand is selected on the command line.
void add_generate_commands(CLI::App& app, const Invocation& inv, Runner& runner);
void add_dist_command(CLI::App& app, const Invocation& inv, Runner& runner);
void add_cluster_command(CLI::App& app, const Invocation& inv, Runner& runner);
void add_eval_command(CLI::App& app, const Invocation& inv, Runner& runner);
void add_bench_command(CLI::App& app, const Invocation& inv, Runner& runner);
void add_oracle_command(CLI::App& app, const Invocation& inv, Runner& runner);

}  // namespace qpgc::cli
