#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "coxkit/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"coxkit: exact computations for Cox rings, affine monoids and finite quotients"};
  coxkit::cli::Options opts;
  std::string command, input;
  app.add_option("command", command, "subcommand")
      ->required()
      ->check(CLI::IsMember(coxkit::cli::commands()));
  app.add_option("input", input, "input JSON file, or - for stdin")->required();
  app.add_option("--depth", opts.depth, "search depth for bounded checks")->capture_default_str();
  app.add_option("--cap", opts.cap, "maximal group order during closure")->capture_default_str();
  app.add_flag("--pretty", opts.pretty, "indent the output");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const coxkit::cli::Result r = coxkit::cli::run_file(command, input, opts);
  std::cout << r.output;
  return r.exit_code;
}
