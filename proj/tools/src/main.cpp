#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "casimir/cli/config.hpp"
#include "casimir/cli/run.hpp"
#include "casimir/error.hpp"

namespace {

using namespace casimir;
using namespace casimir::cli;

constexpr int exit_failed_check = 1;
constexpr int exit_usage = 2;
constexpr int exit_computation = 3;

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::vector<std::string> overrides;
  bool print_config = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::config, "cannot read config file \"" + path + "\"", "--config");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw Error(ErrorKind::config, "cannot write \"" + path + "\"", "--out");
}

int execute(Command command, const Options& opt) {
  if (opt.config.empty() && command != Command::verify) {
    throw Error(ErrorKind::config, "--config is required", "--config");
  }
  std::string text = opt.config.empty() ? std::string("{}") : read_file(opt.config);

  std::vector<std::string> overrides = opt.overrides;
  if (!opt.format.empty()) overrides.push_back("output.format=\"" + opt.format + "\"");
  if (!opt.out.empty()) overrides.push_back("output.path=\"" + opt.out + "\"");
  if (!overrides.empty()) text = apply_overrides(text, overrides);

  const RunConfig cfg = parse_config(command, text);
  if (opt.print_config) {
    std::cout << emit_config(cfg);
    return 0;
  }

  const RunOutput result = run(cfg);
  write_output(cfg.output.path, result.text);
  if (!result.ok) {
    std::cerr << error_record("verification", result.failed, result.failed + " failed") << "\n";
    return exit_failed_check;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir free energies of coupled harmonic oscillators and dipole pairs", "casimir"};
  app.require_subcommand(1);

  Options opt;
  const std::pair<Command, const char*> commands[] = {
      {Command::tm3, "three oscillators coupled through one mediator by coordinate coupling"},
      {Command::te3, "three oscillators coupled through one mediator by momentum coupling"},
      {Command::bath, "two oscillators coupled through a bath of mediators"},
      {Command::dipole, "two oscillating dipoles: free energy against T or r"},
      {Command::verify, "run the built-in checks and print a pass/fail table"},
  };
  for (const auto& [command, help] : commands) {
    auto* sub = app.add_subcommand(std::string(to_string(command)), help);
    sub->add_option("--config", opt.config, "JSON run configuration");
    sub->add_option("--out", opt.out, "output file (default: standard output)");
    sub->add_option("--format", opt.format, "csv or json");
    sub->add_option("--set", opt.overrides, "override a scalar config field, key.path=value")->take_all();
    sub->add_flag("--print-config", opt.print_config, "print the validated config with defaults and exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_record("usage", "argv", e.what()) << "\n";
    return exit_usage;
  }

  Command command = Command::verify;
  for (auto* sub : app.get_subcommands()) command = parse_command(sub->get_name());

  try {
    return execute(command, opt);
  } catch (const Error& e) {
    std::cerr << error_record(e) << "\n";
    return e.kind() == ErrorKind::config ? exit_usage : exit_computation;
  } catch (const std::exception& e) {
    std::cerr << error_record("internal", "", e.what()) << "\n";
    return exit_computation;
  }
}
