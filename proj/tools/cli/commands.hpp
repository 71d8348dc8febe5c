#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace hlcu::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kInvariantViolation = 3 };

struct Options {
  std::string command;
  std::string config_path;
  std::uint64_t seed = 1;
  std::uint64_t shots = 20000;
  std::string out_dir = ".";
  int workers = 1;
  bool emit_plot_script = false;
};

// Default value for every key a subcommand accepts.
const std::map<std::string, std::string>& known_keys(const std::string& command);

int run_command(const Options& opt, std::ostream& out);
// Full argument parsing; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hlcu::cli
