#include "hoi/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hoi/ising.hpp"
#include "hoi/oinfo.hpp"
#include "hoi/verify.hpp"

namespace hoi {

namespace {

const char* backend_name(Backend b) { return b == Backend::Discrete ? "discrete" : "gaussian_copula"; }

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json:
      return "json";
    case OutputFormat::Csv:
      return "csv";
    case OutputFormat::Edges:
      return "edges";
  }
  return "?";
}

nlohmann::json envelope(const RunConfig& config) {
  return {{"schema_version", kSchemaVersion}, {"command", config.command}, {"config", provenance(config)}};
}

void emit(const RunConfig& config, std::ostream& out, const std::string& payload) {
  if (config.output.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(config.output, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + config.output + "'");
  file << payload;
}

DataMatrix load_input(const RunConfig& config, std::ostream& diag) {
  auto loaded = table_to_data(read_csv_file(config.input), config.columns, config.preprocessing);
  for (const auto& note : loaded.notices) diag << "hoi: note: " << note << '\n';
  return std::move(loaded.data);
}

EstimatorConfig estimator(const RunConfig& config, const DataMatrix& data) {
  EstimatorConfig est;
  est.backend = config.backend;
  est.fit.ridge = config.ridge;
  if (config.backend == Backend::Discrete) est.alphabet_sizes = infer_alphabet_sizes(data);
  return est;
}

BootstrapOptions bootstrap_options(const RunConfig& config) {
  BootstrapOptions options;
  options.n_boot = config.n_boot;
  options.alpha = config.alpha;
  options.seed = config.seed;
  options.threads = config.threads;
  return options;
}

std::string render_reports(const RunConfig& config, const std::vector<GradientReport>& reports) {
  std::ostringstream s;
  if (config.format == OutputFormat::Json) {
    auto doc = envelope(config);
    doc["reports"] = nlohmann::json::array();
    for (const auto& r : reports) doc["reports"].push_back(to_json(r));
    s << doc.dump(2) << '\n';
  } else {
    write_provenance(s, provenance(config));
    if (config.format == OutputFormat::Edges) {
      write_edges_csv(s, reports);
    } else {
      write_reports_csv(s, reports);
    }
  }
  return s.str();
}

std::string cmd_oinfo(const RunConfig& config, std::ostream& diag) {
  const DataMatrix data = load_input(config, diag);
  const auto est = estimator(config, data);
  const SubsetMask system = SubsetMask::all(data.n_vars());
  auto statistic = [&](const DataMatrix& d) {
    const EntropyCache cache(make_source(d, est));
    return std::vector<double>{o_information(cache, system), total_correlation(cache, system),
                               dual_total_correlation(cache, system)};
  };
  auto reports = bootstrap_many(data, statistic, {"oinfo", "tc", "dtc"}, bootstrap_options(config));
  for (auto& r : reports) r.variables = data.names();
  return render_reports(config, reports);
}

std::string cmd_gradients(const RunConfig& config, std::ostream& diag) {
  const DataMatrix data = load_input(config, diag);
  const auto est = estimator(config, data);
  const auto reports = config.local ? local_o_significance(data, est, bootstrap_options(config))
                                    : gradient_significance(data, config.order, est, bootstrap_options(config));
  return render_reports(config, reports);
}

std::string cmd_scan(const RunConfig& config, std::ostream& diag) {
  const DataMatrix data = load_input(config, diag);
  const auto scan = scan_multiplets(data, config.order, estimator(config, data), bootstrap_options(config));
  std::ostringstream s;
  if (config.format == OutputFormat::Json) {
    auto doc = envelope(config);
    doc["scan"] = to_json(scan, data.names());
    s << doc.dump(2) << '\n';
  } else {
    write_provenance(s, provenance(config));
    write_scan_csv(s, scan, data.names());
  }
  return s.str();
}

std::string cmd_ising_sweep(const RunConfig& config) {
  Eigen::MatrixXd couplings = hexagon_couplings();
  if (!config.couplings.empty()) {
    std::ifstream in(config.couplings);
    if (!in) throw std::invalid_argument("cannot open couplings file '" + config.couplings + "'");
    couplings = read_matrix(in);
  }
  // Validates the couplings once, before the sweep.
  const IsingModel probe(couplings, 0.0);
  const int n = probe.n_spins();
  if (n < 3) throw std::invalid_argument("ising-sweep needs at least 3 spins");

  auto quantities = first_order_quantities(n);
  if (config.sweep_pairs) {
    auto pairs = pair_quantities(n, SweepQuantity::Kind::GradientSecond);
    quantities.insert(quantities.end(), pairs.begin(), pairs.end());
  }
  if (config.sweep_local) {
    auto pairs = pair_quantities(n, SweepQuantity::Kind::LocalOInformation);
    quantities.insert(quantities.end(), pairs.begin(), pairs.end());
  }
  if (config.sweep_oinfo) quantities.push_back(SweepQuantity::o_information());

  const auto result = sweep([&](double beta) { return IsingModel(couplings, beta); },
                            linear_grid(config.beta_min, config.beta_max, config.beta_points), quantities,
                            config.threads);
  std::ostringstream s;
  if (config.format == OutputFormat::Json) {
    auto doc = envelope(config);
    doc["sweep"] = to_json(result);
    s << doc.dump(2) << '\n';
  } else {
    write_provenance(s, provenance(config));
    write_sweep_csv(s, result);
  }
  return s.str();
}

std::string cmd_verify(const RunConfig& config, std::ostream& diag, bool& all_passed) {
  VerifyOptions options;
  options.random_systems = config.random_systems;
  options.seed = config.seed;
  const auto checks = run_verification(options);
  all_passed = true;
  auto doc = envelope(config);
  doc["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    all_passed = all_passed && c.passed;
    diag << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
    doc["checks"].push_back(to_json(c));
  }
  doc["passed"] = all_passed;
  if (config.output.empty()) return {};
  std::ostringstream s;
  if (config.format == OutputFormat::Json) {
    s << doc.dump(2) << '\n';
  } else {
    write_provenance(s, provenance(config));
    write_csv_record(s, {"name", "passed", "cases", "worst"});
    for (const auto& c : checks) {
      write_csv_record(s, {c.name, c.passed ? "true" : "false", std::to_string(c.cases), format_double(c.worst)});
    }
  }
  return s.str();
}

}  // namespace

nlohmann::json provenance(const RunConfig& c) {
  nlohmann::json j = {{"command", c.command}, {"format", format_name(c.format)}, {"seed", c.seed}};
  if (c.command == "oinfo" || c.command == "gradients" || c.command == "scan") {
    j["input"] = c.input;
    j["columns"] = c.columns;
    j["preprocessing"] = c.preprocessing == Preprocessing::LogReturns ? "log_returns" : "none";
    j["backend"] = backend_name(c.backend);
    j["ridge"] = c.ridge;
    j["n_boot"] = c.n_boot;
    j["alpha"] = c.alpha;
    if (c.command != "oinfo") j["order"] = c.order;
    if (c.command == "gradients") j["local"] = c.local;
  } else if (c.command == "ising-sweep") {
    j["couplings"] = c.couplings.empty() ? "hexagon" : c.couplings;
    j["beta_min"] = c.beta_min;
    j["beta_max"] = c.beta_max;
    j["beta_points"] = c.beta_points;
    j["pairs"] = c.sweep_pairs;
    j["local"] = c.sweep_local;
    j["oinfo"] = c.sweep_oinfo;
  } else if (c.command == "verify") {
    j["random_systems"] = c.random_systems;
  }
  return j;
}

void validate(const RunConfig& c) {
  const bool data_command = c.command == "oinfo" || c.command == "gradients" || c.command == "scan";
  if (!data_command && c.command != "ising-sweep" && c.command != "verify") {
    throw std::invalid_argument("unknown command '" + c.command + "'");
  }
  if (data_command) {
    if (c.input.empty()) throw std::invalid_argument(c.command + " needs --input");
    if (c.n_boot < 100) throw std::invalid_argument("--n-boot must be >= 100");
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw std::invalid_argument("--alpha must lie in (0, 1)");
    if (c.backend == Backend::Discrete && c.preprocessing == Preprocessing::LogReturns) {
      throw std::invalid_argument("log returns produce real values; the discrete backend needs integer codes");
    }
    if (c.ridge < 0.0) throw std::invalid_argument("--ridge must be >= 0");
  }
  if (c.command == "gradients") {
    if (c.order < 1) throw std::invalid_argument("--order must be >= 1");
    if (c.local && c.order != 2) throw std::invalid_argument("--local applies to --order 2 only");
  }
  if (c.command == "scan" && c.order != 3 && c.order != 4) {
    throw std::invalid_argument("scan --order must be 3 or 4");
  }
  if (c.format == OutputFormat::Edges && !(c.command == "gradients" && c.order == 2)) {
    throw std::invalid_argument("--format edges applies to gradients --order 2 only");
  }
  if (c.command == "ising-sweep") {
    if (c.beta_points < 1) throw std::invalid_argument("--beta-points must be >= 1");
    if (!(c.beta_min >= 0.0) || !(c.beta_max >= c.beta_min)) {
      throw std::invalid_argument("beta range must satisfy 0 <= beta-min <= beta-max");
    }
  }
  if (c.command == "verify" && c.random_systems < 0) {
    throw std::invalid_argument("--random-systems must be >= 0");
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  try {
    validate(config);
    std::string payload;
    bool verified = true;
    if (config.command == "oinfo") {
      payload = cmd_oinfo(config, diag);
    } else if (config.command == "gradients") {
      payload = cmd_gradients(config, diag);
    } else if (config.command == "scan") {
      payload = cmd_scan(config, diag);
    } else if (config.command == "ising-sweep") {
      payload = cmd_ising_sweep(config);
    } else {
      payload = cmd_verify(config, diag, verified);
      if (payload.empty()) return verified ? 0 : 1;
    }
    emit(config, out, payload);
    return verified ? 0 : 1;
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (char& ch : msg) {
      if (ch == '\n') ch = ' ';
    }
    diag << "hoi: error: " << msg << '\n';
    return 2;
  }
}

}  // namespace hoi
