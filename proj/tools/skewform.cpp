#include <CLI11.hpp>

#include <iostream>

#include "skewform/cli.hpp"
#include "skewform/error.hpp"

int main(int argc, char** argv) {
  using namespace skewform;
  CLI::App app{"Skew-symmetric SBP discretisations: verification and scenario runs"};
  app.require_subcommand(1);
  std::string out_dir;
  app.add_option("--out-dir", out_dir, "Directory for output files")->default_val("");

  VerifyOptions vopt;
  std::vector<std::string> suites;
  std::string suite_flag;
  auto* verify = app.add_subcommand("verify", "Run the identity check suites");
  verify->add_option("suites", suites, "energy, duality, ansatz, alpha, decomposition or all");
  verify->add_option("--suite", suite_flag, "Suite selector (same as the positional form)");
  verify->add_option("--seed", vopt.seed, "Random seed")->default_val(42);
  verify->add_option("--trials", vopt.trials, "Trials per configuration")
      ->default_val(50)
      ->check(CLI::PositiveNumber);
  verify->add_option("--out-dir", out_dir, "Directory for verify_report.csv");

  std::string config;
  auto* run = app.add_subcommand("run", "March a scenario and write the energy time series");
  run->add_option("config,--config", config, "Scenario file");
  run->add_option("--out-dir", out_dir, "Directory for relative output paths");

  AnalyzeRequest areq;
  auto* analyze = app.add_subcommand("analyze-boundary", "Count boundary conditions at a face state");
  analyze->add_option("--config", areq.config_path, "File with [model] and [analysis] sections");
  analyze->add_option("--model", areq.model, "Model kind")->default_val("swe2d");
  analyze->add_option("--state", areq.state, "State values")->delimiter(',');
  analyze->add_option("--perturbation", areq.perturbation, "Perturbation values")->delimiter(',');
  analyze->add_option("--normal", areq.normal, "Outward normal")->delimiter(',');
  analyze->add_option("--position", areq.position, "Face point")->delimiter(',');
  analyze->add_option("--alpha", areq.params.alpha, "SWE splitting parameter alpha");
  analyze->add_option("--beta", areq.params.beta, "SWE splitting parameter beta");
  analyze->add_option("--formulation", areq.formulation,
                      "nonlinear, linearised, rewritten or all");
  analyze->add_option("--out-dir", out_dir, "Directory for boundary_analysis.csv");

  int levels = 3;
  auto* conv = app.add_subcommand("convergence", "Refinement study of a scenario");
  conv->add_option("config,--config", config, "Scenario file");
  conv->add_option("--levels", levels, "Number of grid levels (at least 3)")->default_val(3);
  conv->add_option("--out-dir", out_dir, "Directory for convergence.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }

  const CommandIo io{std::cout, std::cerr, out_dir};
  try {
    if (verify->parsed()) {
      if (!suite_flag.empty()) suites.push_back(suite_flag);
      const int status = cmd_verify(suites, vopt, io);
      if (status == exit_usage) std::cerr << verify->help();
      return status;
    }
    if ((run->parsed() || conv->parsed()) && config.empty()) {
      std::cerr << "a scenario file is required (--config)\n";
      return exit_usage;
    }
    if (run->parsed()) return cmd_run(config, io);
    if (analyze->parsed()) return cmd_analyze_boundary(areq, io);
    if (conv->parsed()) return cmd_convergence(config, levels, io);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_failure;
  }
  return exit_usage;
}
