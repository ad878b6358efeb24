// ============================================================================
// qcost — entropy-cost experiments from the command line
// ============================================================================
//
//   qcost <experiment> --config <path> [--out <path>] [--svg] [--seed N]
//         [--key value ...]
//
// Any --key value pair overrides the corresponding config-file entry.
// Exit codes: 0 success, 2 configuration error, 3 physically unrealizable
// request, 4 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qcost/config.hpp"
#include "qcost/errors.hpp"
#include "qcost/experiments.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qcost::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Turn leftover CLI tokens into key/value override pairs.  Accepts both
/// `--key value` and `--key=value`.
std::vector<std::pair<std::string, std::string>> parse_overrides(
    const std::vector<std::string>& tokens) {
  std::vector<std::pair<std::string, std::string>> overrides;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& token = tokens[i];
    if (token.rfind("--", 0) != 0 || token.size() <= 2) {
      throw qcost::ConfigError("unexpected argument '" + token + "' (overrides are --key value)");
    }
    std::string key = token.substr(2);
    std::string value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else {
      if (i + 1 >= tokens.size()) {
        throw qcost::ConfigError("override '--" + key + "' is missing a value");
      }
      value = tokens[++i];
    }
    if (key.empty() || value.empty()) {
      throw qcost::ConfigError("malformed override '" + token + "'");
    }
    overrides.emplace_back(std::move(key), std::move(value));
  }
  return overrides;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy cost of control-field protocols"};
  app.allow_extras();

  std::string experiment;
  std::string config_path;
  std::string out_path;
  std::string seed;
  bool svg = false;
  app.add_option("experiment", experiment,
                 "lz-sweep-tau | lz-sweep-bures | penning-sweep-eta | "
                 "penning-sweep-bures | circuit-validate");
  app.add_option("--config", config_path, "config file (key=value lines)");
  app.add_option("--out", out_path, "output CSV path");
  app.add_option("--seed", seed, "RNG seed for stochastic experiments");
  app.add_flag("--svg", svg, "also write an SVG plot next to the CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    const std::string text = config_path.empty() ? std::string{} : read_file(config_path);

    auto overrides = parse_overrides(app.remaining());
    if (!experiment.empty()) overrides.emplace_back("experiment", experiment);
    if (!out_path.empty()) overrides.emplace_back("out", out_path);
    if (!seed.empty()) overrides.emplace_back("seed", seed);
    if (svg) overrides.emplace_back("svg", "true");

    const qcost::cli::RunConfig config = qcost::cli::parse_config(text, overrides);
    const auto written = qcost::cli::run(config);
    for (const auto& path : written) std::cout << "wrote " << path << '\n';
    return 0;
  } catch (const qcost::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const qcost::ConstraintError& e) {
    std::cerr << "constraint violated: " << e.what() << '\n';
    return 3;
  } catch (const qcost::QuadratureError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 4;
  } catch (const qcost::OdeError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 4;
  }
}
