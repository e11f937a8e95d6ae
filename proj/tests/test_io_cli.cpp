#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hoi/cli.hpp"
#include "hoi/io.hpp"

using namespace hoi;

namespace {

const std::string kFixtures = HOI_FIXTURE_DIR;

RunConfig data_config(const std::string& command, const std::string& file) {
  RunConfig c;
  c.command = command;
  c.input = kFixtures + "/" + file;
  c.n_boot = 200;
  c.seed = 17;
  return c;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("CSV quoting round trip") {
  std::ostringstream out;
  write_csv_record(out, {"plain", "with,comma", "say \"hi\"", "two\nlines"});
  CHECK(out.str() == "plain,\"with,comma\",\"say \"\"hi\"\"\",\"two\nlines\"\r\n");
  std::istringstream in("a,b,c,d\r\n" + out.str());
  const auto table = parse_csv(in);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][1] == "with,comma");
  CHECK(table.rows[0][2] == "say \"hi\"");
  CHECK(table.rows[0][3] == "two\nlines");
}

TEST_CASE("CSV reader errors") {
  std::istringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS_AS(parse_csv(ragged), std::invalid_argument);
  std::istringstream open_quote("a,b\n\"1,2\n");
  CHECK_THROWS_AS(parse_csv(open_quote), std::invalid_argument);
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_csv(empty), std::invalid_argument);
  CHECK_THROWS_AS(read_csv_file(kFixtures + "/missing.csv"), std::invalid_argument);
}

TEST_CASE("provenance lines are skipped on read") {
  std::ostringstream out;
  write_provenance(out, {{"seed", 1}});
  write_csv_record(out, {"x", "y"});
  write_csv_record(out, {"1", "2"});
  CHECK(out.str().rfind("# schema_version: 1\r\n# config: {\"seed\":1}\r\n", 0) == 0);
  std::istringstream in(out.str());
  const auto table = parse_csv(in);
  CHECK(table.header == std::vector<std::string>{"x", "y"});
}

TEST_CASE("doubles round trip through text") {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("log returns") {
  const std::vector<double> x{1.0, std::exp(1.0), std::exp(2.0)};
  const auto r = log_returns(x);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-15));
  const auto flat = log_returns(std::vector<double>(5, 3.0));
  CHECK(flat == std::vector<double>(4, 0.0));
  CHECK(log_returns(std::vector<double>(244, 2.0)).size() == 243);
  CHECK_THROWS_WITH_AS(log_returns(std::vector<double>{1.0, 2.0, 0.0}), doctest::Contains("row 2"),
                       std::invalid_argument);
}

TEST_CASE("tables become data matrices") {
  const auto table = read_csv_file(kFixtures + "/prices.csv");
  CHECK(table.header[2] == "PCE, nominal");
  const auto loaded = table_to_data(table, {}, Preprocessing::LogReturns);
  CHECK(loaded.data.n_vars() == 3);
  CHECK(loaded.data.n_obs() == 11);
  CHECK(loaded.notices.size() == 1);
  CHECK(loaded.data.name(1) == "PCE, nominal");
  const double first = std::log(102.6904 / 103.1503);
  CHECK(loaded.data.values()(0, 0) == doctest::Approx(first).epsilon(1e-12));

  const auto picked = table_to_data(table, {"M2SL", "GDP"}, Preprocessing::None);
  CHECK(picked.data.names() == std::vector<std::string>{"M2SL", "GDP"});
  CHECK_THROWS_WITH_AS(table_to_data(table, {"GDPX"}, Preprocessing::None), doctest::Contains("GDPX"),
                       std::invalid_argument);
}

TEST_CASE("coupling matrix files") {
  std::istringstream in("0, 1, 0\n1 0 -1\n0 -1 0\n");
  const auto m = read_matrix(in);
  CHECK(m(1, 2) == -1.0);
  std::istringstream ragged("0 1\n1\n");
  CHECK_THROWS_AS(read_matrix(ragged), std::invalid_argument);
}

TEST_CASE("oinfo command writes JSON with provenance") {
  std::ostringstream out, diag;
  const auto c = data_config("oinfo", "latent_factor.csv");
  REQUIRE(run(c, out, diag) == 0);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["config"]["seed"] == 17);
  CHECK(doc["reports"].size() == 3);
  CHECK(doc["reports"][0]["label"] == "oinfo");
  CHECK(doc["reports"][0]["estimate"].get<double>() > 0.3);
  CHECK(diag.str().find("date") != std::string::npos);
}

TEST_CASE("gradients output is byte-identical across runs and thread counts") {
  auto c = data_config("gradients", "latent_factor.csv");
  c.format = OutputFormat::Csv;
  std::ostringstream a, b, diag;
  REQUIRE(run(c, a, diag) == 0);
  c.threads = 1;
  REQUIRE(run(c, b, diag) == 0);
  CHECK(a.str() == b.str());
  const auto lines = lines_of(a.str());
  REQUIRE(lines.size() == 2 + 1 + 5);
  CHECK(lines[2].rfind("label,variables,estimate", 0) == 0);
  CHECK(lines[3].rfind("grad1[f1],f1,", 0) == 0);
}

TEST_CASE("pairwise gradients as an edge list") {
  auto c = data_config("gradients", "latent_factor.csv");
  c.order = 2;
  c.format = OutputFormat::Edges;
  std::ostringstream out, diag;
  REQUIRE(run(c, out, diag) == 0);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 2 + 1 + 10);
  CHECK(lines[2] == "node_i,node_j,value,significant\r");
  CHECK(lines[3].rfind("f1,f2,", 0) == 0);
}

TEST_CASE("scan command") {
  auto c = data_config("scan", "latent_factor.csv");
  c.order = 3;
  std::ostringstream out, diag;
  REQUIRE(run(c, out, diag) == 0);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["scan"]["n_multiplets"] == 10);
  CHECK(doc["scan"]["pairs"].size() == 10);
}

TEST_CASE("default Ising sweep") {
  RunConfig c;
  c.command = "ising-sweep";
  c.format = OutputFormat::Csv;
  std::ostringstream out, diag;
  REQUIRE(run(c, out, diag) == 0);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 2 + 1 + 64);
  CHECK(lines[2] == "beta,grad1_0,grad1_1,grad1_2,grad1_3,grad1_4,grad1_5,grad1_6\r");
  CHECK(lines[3].rfind("0,", 0) == 0);
  CHECK(lines.back().rfind("2,", 0) == 0);
}

TEST_CASE("Ising sweep from a coupling file") {
  const auto path = std::filesystem::temp_directory_path() / "hoi_test_couplings.txt";
  {
    std::ofstream f(path);
    f << "0 1 1\n1 0 1\n1 1 0\n";
  }
  RunConfig c;
  c.command = "ising-sweep";
  c.couplings = path.string();
  c.beta_points = 5;
  c.sweep_oinfo = true;
  std::ostringstream out, diag;
  REQUIRE(run(c, out, diag) == 0);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["sweep"]["betas"].size() == 5);
  CHECK(doc["sweep"]["curves"].size() == 4);
  std::filesystem::remove(path);
}

TEST_CASE("verify command") {
  RunConfig c;
  c.command = "verify";
  c.random_systems = 50;
  std::ostringstream out, diag;
  CHECK(run(c, out, diag) == 0);
  CHECK(diag.str().find("FAIL") == std::string::npos);
  CHECK(diag.str().find("PASS") != std::string::npos);
}

TEST_CASE("errors become one diagnostic line and exit code 2") {
  auto expect_error = [](const RunConfig& c, const std::string& fragment) {
    std::ostringstream out, diag;
    CHECK(run(c, out, diag) == 2);
    CHECK(out.str().empty());
    // Loader notes may precede the error; the error itself is the last line.
    const auto lines = lines_of(diag.str());
    REQUIRE_FALSE(lines.empty());
    CHECK(lines.back().rfind("hoi: error: ", 0) == 0);
    CHECK(lines.back().find(fragment) != std::string::npos);
    CHECK(std::ranges::count_if(lines, [](const std::string& l) { return l.rfind("hoi: error: ", 0) == 0; }) == 1);
  };
  auto bad_boot = data_config("oinfo", "latent_factor.csv");
  bad_boot.n_boot = 10;
  expect_error(bad_boot, "--n-boot");

  auto discrete_returns = data_config("oinfo", "prices.csv");
  discrete_returns.backend = Backend::Discrete;
  discrete_returns.preprocessing = Preprocessing::LogReturns;
  expect_error(discrete_returns, "discrete");

  auto edges = data_config("gradients", "latent_factor.csv");
  edges.format = OutputFormat::Edges;
  expect_error(edges, "edges");

  auto missing = data_config("oinfo", "nope.csv");
  expect_error(missing, "nope.csv");

  auto unknown = data_config("gradients", "latent_factor.csv");
  unknown.columns = {"f1", "f9", "f2"};
  expect_error(unknown, "f9");

  auto order = data_config("gradients", "latent_factor.csv");
  order.order = 3;
  expect_error(order, "order 3");

  auto local = data_config("gradients", "latent_factor.csv");
  local.local = true;
  expect_error(local, "--local");

  auto scan = data_config("scan", "latent_factor.csv");
  scan.order = 5;
  expect_error(scan, "scan --order");
}
