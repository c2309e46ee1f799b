#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coxkit/finite_quotient.hpp"

namespace coxkit::cli {

struct Options {
  std::size_t depth = 8;
  std::size_t cap = kDefaultClosureCap;
  bool pretty = false;
};

/// Exit codes: 0 success (a reported violation is a success), 1 domain
/// error, 2 malformed input or unknown command.
struct Result {
  int exit_code = 0;
  std::string output;  ///< canonical JSON, newline terminated
};

const std::vector<std::string>& commands();

/// Runs a subcommand on JSON text. A fixture object (one with a "payload"
/// member) is unwrapped first.
Result run(const std::string& command, const std::string& input, const Options& opts = {});

/// As run(), reading the input from a file ("-" for stdin).
Result run_file(const std::string& command, const std::string& path, const Options& opts = {});

}  // namespace coxkit::cli
