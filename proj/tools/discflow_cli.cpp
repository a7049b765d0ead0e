#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "discflow/errors.hpp"
#include "discflow/pipeline.hpp"

using namespace discflow;

namespace {

enum Exit { kPass = 0, kUsage = 1, kGate = 2, kSolver = 3, kConfig = 4 };

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Config:
    case ErrorKind::InvalidRegime:
    case ErrorKind::Precondition:
      return kConfig;
    default:
      return kSolver;
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void summarize(const RunReport& r) {
  for (const auto& g : r.gates)
    std::cout << (g.pass ? "PASS " : "FAIL ") << g.name << " measured=" << g.measured << '\n';
  if (r.failure) std::cerr << "error: " << to_string(*r.failure) << ": " << r.failure_message << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discflow: rotating-disc exterior flow construction and verification"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  bool print_defaults = false;
  std::string out_dir;
  std::string gates;
  app.add_flag("--print-defaults", print_defaults, "Print the default configuration and exit");
  app.add_option("--out", out_dir, "Output directory (overrides output.dir)");
  app.add_option("--gates", gates, "Comma-separated list of gates to enable");

  std::string run_path;
  auto* run_cmd = app.add_subcommand("run", "Run the pipeline for one configuration");
  run_cmd->add_option("config", run_path, "Configuration file")->required();

  std::string sweep_path;
  std::string axis = "eps";
  std::vector<double> values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep epsilon or delta");
  sweep_cmd->add_option("config", sweep_path, "Configuration file")->required();
  sweep_cmd->add_option("--axis", axis, "eps, epsilon or delta")->check(CLI::IsMember({"eps", "epsilon", "delta"}));
  sweep_cmd->add_option("--values", values, "Sweep values")->expected(1, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kConfig;
  }

  if (print_defaults) {
    std::cout << to_json_text(config_to_json(RunConfig{}));
    return kPass;
  }
  if (!run_cmd->parsed() && !sweep_cmd->parsed()) {
    std::cerr << app.help();
    return kUsage;
  }

  try {
    RunConfig cfg = load_config(run_cmd->parsed() ? run_path : sweep_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (cfg.out_dir.empty()) cfg.out_dir = "discflow-out";
    if (!gates.empty()) cfg.gates = split_list(gates);

    RunReport r;
    if (sweep_cmd->parsed()) {
      if (values.empty()) values = cfg.sweep_values;
      if (values.empty()) throw Error(ErrorKind::Config, "sweep needs --values or sweep.values in the config");
      r = sweep(cfg, axis, values);
    } else {
      r = run(cfg);
    }
    summarize(r);
    std::cout << "report: " << cfg.out_dir << "/report.json\n";
    if (r.failure) return exit_for(*r.failure);
    return r.passed() ? kPass : kGate;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e.kind());
  }
}
