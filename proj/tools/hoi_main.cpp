// hoi: O-information, its gradients and bootstrap significance from the
// command line. Run `hoi --help` or `hoi <command> --help`.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "hoi/cli.hpp"

namespace {

void add_data_options(CLI::App* cmd, hoi::RunConfig& cfg) {
  static const std::map<std::string, hoi::Backend> backends{{"discrete", hoi::Backend::Discrete},
                                                            {"gaussian_copula", hoi::Backend::GaussianCopula}};
  static const std::map<std::string, hoi::Preprocessing> preprocessing{{"none", hoi::Preprocessing::None},
                                                                       {"log_returns", hoi::Preprocessing::LogReturns}};
  cmd->add_option("-i,--input", cfg.input, "CSV file with a header row")->required()->check(CLI::ExistingFile);
  cmd->add_option("-c,--columns", cfg.columns, "Columns to analyse (default: all)")->delimiter(',');
  cmd->add_option("--preprocess", cfg.preprocessing, "none | log_returns")
      ->transform(CLI::CheckedTransformer(preprocessing, CLI::ignore_case));
  cmd->add_option("-b,--backend", cfg.backend, "discrete | gaussian_copula")
      ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));
  cmd->add_option("--n-boot", cfg.n_boot, "Bootstrap replicates")->capture_default_str();
  cmd->add_option("--alpha", cfg.alpha, "Two-sided level of the percentile interval")->capture_default_str();
  cmd->add_option("--ridge", cfg.ridge, "Diagonal ridge for the Gaussian copula fit (default off)");
}

void add_output_options(CLI::App* cmd, hoi::RunConfig& cfg, bool allow_edges) {
  std::map<std::string, hoi::OutputFormat> formats{{"json", hoi::OutputFormat::Json},
                                                   {"csv", hoi::OutputFormat::Csv}};
  if (allow_edges) formats.emplace("edges", hoi::OutputFormat::Edges);
  cmd->add_option("-o,--output", cfg.output, "Output file (default: stdout)");
  cmd->add_option("-f,--format", cfg.format, allow_edges ? "json | csv | edges" : "json | csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  cmd->add_option("--seed", cfg.seed, "64-bit random seed")->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"O-information and its gradients for multivariate data and spin systems"};
  app.require_subcommand(1);
  hoi::RunConfig cfg;

  auto* oinfo = app.add_subcommand("oinfo", "O-information, TC and DTC of the selected columns");
  add_data_options(oinfo, cfg);
  add_output_options(oinfo, cfg, false);

  auto* gradients = app.add_subcommand("gradients", "Gradients of O-information with bootstrap CIs");
  add_data_options(gradients, cfg);
  add_output_options(gradients, cfg, true);
  gradients->add_option("--order", cfg.order, "Gradient order: 1, 2 or k")->capture_default_str();
  gradients->add_flag("--local", cfg.local, "With --order 2: local O-information instead of the gradient");

  auto* scan = app.add_subcommand("scan", "O-information of all triplets or quadruplets with R/S indices");
  add_data_options(scan, cfg);
  add_output_options(scan, cfg, false);
  scan->add_option("--order", cfg.order, "Multiplet size: 3 or 4")->required();

  auto* ising = app.add_subcommand("ising-sweep", "Exact gradients of an Ising model versus beta");
  add_output_options(ising, cfg, false);
  ising->add_option("--couplings", cfg.couplings, "Square coupling matrix file (default: built-in hexagon)")
      ->check(CLI::ExistingFile);
  ising->add_option("--beta-min", cfg.beta_min)->capture_default_str();
  ising->add_option("--beta-max", cfg.beta_max)->capture_default_str();
  ising->add_option("--beta-points", cfg.beta_points)->capture_default_str();
  ising->add_flag("--pairs", cfg.sweep_pairs, "Add second-order gradients of every pair");
  ising->add_flag("--local", cfg.sweep_local, "Add local O-information of every pair");
  ising->add_flag("--oinfo", cfg.sweep_oinfo, "Add the O-information of the whole system");

  auto* verify = app.add_subcommand("verify", "Run the invariant suite on gates and random systems");
  add_output_options(verify, cfg, false);
  verify->add_option("--random-systems", cfg.random_systems)->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();
  // Sweeps are plot data; they default to CSV.
  if (cfg.command == "ising-sweep" && ising->get_option("--format")->count() == 0) {
    cfg.format = hoi::OutputFormat::Csv;
  }
  return hoi::run(cfg, std::cout, std::cerr);
}
