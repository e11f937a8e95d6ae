#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "hoi/entropy_source.hpp"
#include "hoi/oinfo.hpp"
#include "hoi/parallel.hpp"
#include "hoi/verify.hpp"
#include "oracle.hpp"

using namespace hoi;

namespace {

constexpr double kTol = 1e-9;

std::vector<int> random_sizes(std::mt19937_64& rng, int n) {
  std::vector<int> sizes;
  for (int v = 0; v < n; ++v) sizes.push_back(2 + static_cast<int>(rng() % 2));
  return sizes;
}

}  // namespace

TEST_CASE("gate values") {
  const auto copy = make_cache(make_copy_gate(3));
  const auto x = make_cache(make_xor_gate(3));
  const auto all = SubsetMask::all(3);
  CHECK(total_correlation(copy, all) == doctest::Approx(2.0));
  CHECK(dual_total_correlation(copy, all) == doctest::Approx(1.0));
  CHECK(o_information(copy, all) == doctest::Approx(1.0));
  CHECK(total_correlation(x, all) == doctest::Approx(1.0));
  CHECK(dual_total_correlation(x, all) == doctest::Approx(2.0));
  CHECK(o_information(x, all) == doctest::Approx(-1.0));
  for (int n = 3; n <= 8; ++n) {
    const auto c = make_cache(make_copy_gate(n));
    const auto g = make_cache(make_xor_gate(n));
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(gradient_first(c, SubsetMask::all(n), i) - 1.0) < 1e-12);
      CHECK(std::abs(gradient_first(g, SubsetMask::all(n), i) - (2.0 - n)) < 1e-12);
    }
  }
}

TEST_CASE("independent variables carry no information") {
  const DiscreteJointDistribution u({2, 3, 2}, std::vector<double>(12, 1.0 / 12));
  const auto cache = make_cache(u);
  const auto all = SubsetMask::all(3);
  CHECK(std::abs(total_correlation(cache, all)) < 1e-12);
  CHECK(std::abs(dual_total_correlation(cache, all)) < 1e-12);
  CHECK(std::abs(o_information(cache, all)) < 1e-12);
}

TEST_CASE("O-information matches the oracle on random tables") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 4;
    const auto d = random_distribution(random_sizes(rng, n), rng, trial % 3 == 0 ? 0.3 : 0.0);
    const auto cache = make_cache(d);
    const auto all = SubsetMask::all(n);
    const auto vars = oracle::range(n);
    CHECK(std::abs(o_information(cache, all) - oracle::omega(d, vars)) < kTol);
    for (int i = 0; i < n; ++i) {
      const double diff = n > 3 ? oracle::omega(d, vars) - oracle::omega(d, oracle::minus(vars, {i}))
                                : oracle::omega(d, vars);
      // At n = 3 the reduced system is a pair, whose O-information is zero.
      CHECK(std::abs(gradient_first(cache, all, i) - diff) < kTol);
      CHECK(std::abs(gradient_first(cache, all, i) -
                     (gradient_tc(cache, all, i) - gradient_dtc(cache, all, i))) < kTol);
    }
  }
}

TEST_CASE("second-order gradient and local O-information against the oracle") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 4;
    const auto d = random_distribution(random_sizes(rng, n), rng);
    const auto cache = make_cache(d);
    const auto all = SubsetMask::all(n);
    const auto vars = oracle::range(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        CHECK(gradient_second(cache, all, i, j) == gradient_second(cache, all, j, i));
        CHECK(local_o_information(cache, all, i, j) == local_o_information(cache, all, j, i));
        const double local = oracle::interaction_information(d, i, j, oracle::minus(vars, {i, j}));
        CHECK(std::abs(local_o_information(cache, all, i, j) - local) < kTol);
        if (n >= 4) {
          CHECK(std::abs(gradient_second(cache, all, i, j) - oracle::gradient_recursive(d, vars, {i, j})) < kTol);
        } else if (n == 3) {
          CHECK(std::abs(gradient_second(cache, all, i, j) - local) < kTol);
        }
      }
    }
  }
}

TEST_CASE("gradient_k equals the recursive definition") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + trial % 3;
    const auto d = random_distribution(random_sizes(rng, n), rng);
    const auto cache = make_cache(d);
    const auto all = SubsetMask::all(n);
    const auto vars = oracle::range(n);
    for (int k = 0; k <= n - 3; ++k) {
      for (auto gamma : combinations(n, k)) {
        CHECK(std::abs(gradient_k(cache, all, gamma) - oracle::gradient_recursive(d, vars, gamma.members())) < kTol);
      }
    }
  }
}

TEST_CASE("pair across independent blocks has zero second-order gradient") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_distribution({2, 3, 2}, rng);
    const auto b = random_distribution({3, 2}, rng);
    const auto cache = make_cache(product(a, b));
    const auto all = SubsetMask::all(5);
    for (int i = 0; i < 3; ++i) {
      for (int j = 3; j < 5; ++j) CHECK(std::abs(gradient_second(cache, all, i, j)) < kTol);
    }
  }
}

TEST_CASE("precondition errors") {
  const auto cache = make_cache(make_copy_gate(4));
  const auto all = SubsetMask::all(4);
  CHECK_THROWS_AS(o_information(cache, SubsetMask::single(0).with(1)), std::invalid_argument);
  CHECK_THROWS_AS(total_correlation(cache, SubsetMask::single(0)), std::invalid_argument);
  CHECK_THROWS_AS(gradient_first(cache, all.without(2), 2), std::invalid_argument);
  CHECK_THROWS_AS(gradient_first(cache, SubsetMask::all(5), 0), std::invalid_argument);
  CHECK_THROWS_AS(gradient_second(cache, all, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(local_o_information(cache, all, 0, 7), std::invalid_argument);
  CHECK_THROWS_AS(gradient_k(cache, all, SubsetMask::single(0).with(1)), std::invalid_argument);
  CHECK_THROWS_AS(gradient_k(cache, all.without(3), SubsetMask::single(3)), std::invalid_argument);
}

TEST_CASE("cache hits are bit-identical and thread-safe") {
  std::mt19937_64 rng(505);
  const auto d = random_distribution({2, 3, 2, 3, 2}, rng);
  const auto cold_cache = make_cache(d);
  std::vector<double> cold;
  for (int i = 0; i < 5; ++i) cold.push_back(gradient_first(cold_cache, SubsetMask::all(5), i));
  const auto size = cold_cache.size();
  for (int i = 0; i < 5; ++i) CHECK(gradient_first(cold_cache, SubsetMask::all(5), i) == cold[i]);
  CHECK(cold_cache.size() == size);

  const auto shared = make_cache(d);
  std::vector<double> parallel(5 * 64);
  parallel_for(parallel.size(), [&](std::size_t k) {
    parallel[k] = gradient_first(shared, SubsetMask::all(5), static_cast<int>(k % 5));
  }, 8);
  for (std::size_t k = 0; k < parallel.size(); ++k) CHECK(parallel[k] == cold[k % 5]);
  CHECK(shared.entropy(SubsetMask{}) == 0.0);
}

TEST_CASE("Gaussian O-information matches the closed form") {
  Eigen::MatrixXd c(3, 3);
  c << 1, 0.6, 0.3, 0.6, 1, 0.2, 0.3, 0.2, 1;
  const auto cache = make_cache(GaussianModel(c));
  const auto vars = oracle::range(3);
  CHECK(std::abs(o_information(cache, SubsetMask::all(3)) - oracle::gaussian_omega(c, vars)) < 1e-10);
}
