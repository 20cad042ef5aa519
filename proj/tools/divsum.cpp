// Copyright 2026 The divsum Authors.
// SPDX-License-Identifier: Apache-2.0

// divsum: division-polynomial character sums over elliptic curves mod p.
//
//   divsum verify --config exp.ini
//   divsum sum    --config exp.ini --workers 8 --out rows.csv
//   divsum scan   --config exp.ini --format json
//   divsum table  --config exp.ini

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "divsum/error.hpp"
#include "divsum/harness/commands.hpp"
#include "divsum/harness/config.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::string> out;
  std::optional<std::string> format;
  bool overrideRange = false;
  bool injectFault = false;
};

void addCommonFlags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "INI experiment configuration")->check(CLI::ExistingFile);
  cmd->add_option("--seed", flags.seed, "RNG seed (decimal)");
  cmd->add_option("--workers", flags.workers, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", flags.out, "output path (default: standard output)");
  cmd->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--override-range", flags.overrideRange, "allow N > R");
}

divsum::harness::ExperimentConfig resolve(const Flags& flags) {
  auto config = flags.config.empty() ? divsum::harness::ExperimentConfig{} : divsum::harness::loadConfig(flags.config);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.workers) config.workers = *flags.workers;
  if (flags.out) config.output = *flags.out;
  if (flags.format) config.format = *flags.format;
  if (flags.overrideRange) config.overrideRange = true;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Character sums along division-polynomial sequences"};
  app.require_subcommand(1);
  Flags flags;
  auto* verify = app.add_subcommand("verify", "run the exact-identity suites; exit 0 iff all pass");
  auto* sum = app.add_subcommand("sum", "one row per (curve, point, character, twist, N)");
  auto* scan = app.add_subcommand("scan", "bound-ratio tables with hypothesis flags");
  auto* table = app.add_subcommand("table", "per-bound summary of a scan");
  for (auto* cmd : {verify, sum, scan, table}) addCommonFlags(cmd, flags);
  verify->add_flag("--inject-fault", flags.injectFault)->group("");  // hidden: corrupt psi_3

  CLI11_PARSE(app, argc, argv);

  try {
    const auto config = resolve(flags);
    std::ofstream file;
    if (!config.output.empty()) {
      file.open(config.output);
      if (!file) throw divsum::Error(divsum::ErrorCode::ConfigError, "cannot write " + config.output);
    }
    std::ostream& out = config.output.empty() ? std::cout : file;
    using namespace divsum::harness;
    if (*verify) return cmdVerify(config, out, std::cerr, VerifyOptions{flags.injectFault});
    if (*sum) return cmdSum(config, out, std::cerr);
    if (*scan) return cmdScan(config, out, std::cerr);
    return cmdTable(config, out, std::cerr);
  } catch (const divsum::Error& e) {
    std::cerr << "divsum: " << e.what() << "\n";
    return 2;
  }
}
