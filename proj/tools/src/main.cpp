#include <iostream>

#include "commands.hpp"
#include "common.hpp"
#include "qpgc/errors.hpp"

int main(int argc, char** argv) {
  using namespace qpgc;
  using namespace qpgc::cli;

  CLI::App app{"qpgc: graph clustering by penalized quadratic semi-assignment"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  const Invocation inv{argc, argv};
  Runner runner;
  add_generate_commands(app, inv, runner);
  add_dist_command(app, inv, runner);
  add_cluster_command(app, inv, runner);
  add_eval_command(app, inv, runner);
  add_bench_command(app, inv, runner);
  add_oracle_command(app, inv, runner);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version arrive here with exit code 0.
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    return runner();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UndefinedDensity& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ContractViolation& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
}
