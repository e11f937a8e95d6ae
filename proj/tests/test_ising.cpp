#include <doctest.h>

#include <cmath>

#include "hoi/entropy_source.hpp"
#include "hoi/ising.hpp"
#include "hoi/oinfo.hpp"
#include "oracle.hpp"

using namespace hoi;

namespace {

Eigen::MatrixXd chain(int n, double j) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) c(k, k + 1) = c(k + 1, k) = j;
  return c;
}

}  // namespace

TEST_CASE("hexagon couplings") {
  const auto j = hexagon_couplings();
  CHECK(j.rows() == 7);
  CHECK(j.isApprox(j.transpose()));
  for (int k = 1; k <= 6; ++k) {
    CHECK(j(k, 1 + k % 6) == 1.0);
    CHECK(std::abs(j(0, k)) == 1.0);
  }
  CHECK(j.row(0).sum() == 0.0);
}

TEST_CASE("energy counts each pair once") {
  const IsingModel m(chain(2, 1.5), 1.0);
  // States 0 (-1,-1) and 3 (+1,+1) are aligned.
  CHECK(m.energy(0) == -1.5);
  CHECK(m.energy(1) == 1.5);
  CHECK(m.energy(3) == -1.5);
}

TEST_CASE("open-chain partition function") {
  for (double beta : {0.0, 0.3, 1.1}) {
    for (int n : {2, 3, 5}) {
      const IsingModel m(chain(n, 0.7), beta);
      const double z = 2.0 * std::pow(2.0 * std::cosh(0.7 * beta), n - 1);
      CHECK(partition_function(m) == doctest::Approx(z).epsilon(1e-13));
      CHECK(log_partition_function(m) == doctest::Approx(std::log(z)).epsilon(1e-13));
    }
  }
}

TEST_CASE("log partition function stays finite at low temperature") {
  const IsingModel m(hexagon_couplings(), 500.0);
  CHECK(std::isfinite(log_partition_function(m)));
  const auto d = boltzmann_distribution(m);
  double total = 0.0;
  for (double p : d.probs()) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Boltzmann weights match direct evaluation") {
  const double beta = 0.8;
  const auto j = hexagon_couplings();
  const auto d = boltzmann_distribution(IsingModel(j, beta));
  std::vector<double> w(128);
  double z = 0.0;
  for (std::size_t s = 0; s < 128; ++s) {
    double e = 0.0;
    for (int a = 0; a < 7; ++a) {
      for (int b = a + 1; b < 7; ++b) {
        const int sa = (s >> (6 - a)) & 1U ? 1 : -1;
        const int sb = (s >> (6 - b)) & 1U ? 1 : -1;
        e -= j(a, b) * sa * sb;
      }
    }
    w[s] = std::exp(-beta * e);
    z += w[s];
  }
  for (std::size_t s = 0; s < 128; ++s) CHECK(d.mass(s) == doctest::Approx(w[s] / z).epsilon(1e-12));
}

TEST_CASE("hexagon reference values at beta = 0.5") {
  const auto cache = make_cache(boltzmann_distribution(hexagon_model(0.5)));
  const auto all = SubsetMask::all(7);
  CHECK(gradient_first(cache, all, 0) == doctest::Approx(-0.1396397842477448).epsilon(1e-10));
  CHECK(gradient_first(cache, all, 1) == doctest::Approx(0.017803669200144867).epsilon(1e-10));
  CHECK(o_information(cache, all) == doctest::Approx(0.007380381408726322).epsilon(1e-10));
  const auto gamma = SubsetMask::single(0).with(1).with(2);
  CHECK(gradient_k(cache, all, gamma) == doctest::Approx(-0.038942838743999175).epsilon(1e-10));
}

TEST_CASE("sweep layout and determinism") {
  auto quantities = first_order_quantities(7);
  const auto pairs = pair_quantities(7, SweepQuantity::Kind::GradientSecond);
  quantities.insert(quantities.end(), pairs.begin(), pairs.end());
  quantities.push_back(SweepQuantity::o_information());
  const auto grid = linear_grid(0.0, 2.0, 9);
  const auto serial = sweep(hexagon_model, grid, quantities, 1);
  const auto threaded = sweep(hexagon_model, grid, quantities, 4);
  CHECK(serial.labels.size() == 7 + 21 + 1);
  CHECK(serial.labels.front() == "grad1_0");
  CHECK(serial.labels[7] == "grad2_0_1");
  CHECK(serial.labels.back() == "oinfo");
  CHECK(serial.curves == threaded.curves);
  CHECK(serial.curve("grad1_0")[0] == doctest::Approx(0.0));
  CHECK_THROWS_AS(serial.curve("nope"), std::out_of_range);
  CHECK(default_beta_grid().size() == 64);
  CHECK(default_beta_grid().back() == 2.0);
}

TEST_CASE("model validation") {
  Eigen::MatrixXd bad = chain(3, 1.0);
  bad(0, 1) = 2.0;
  CHECK_THROWS_AS(IsingModel(bad, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(IsingModel(chain(3, 1.0), -0.1), std::invalid_argument);
  Eigen::MatrixXd diag = chain(3, 1.0);
  diag(1, 1) = 1.0;
  CHECK_THROWS_AS(IsingModel(diag, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(boltzmann_distribution(IsingModel(chain(25, 1.0), 1.0)), std::invalid_argument);
}
