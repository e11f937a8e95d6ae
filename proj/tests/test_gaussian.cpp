#include <doctest.h>

#include <cmath>
#include <random>

#include "hoi/entropy_source.hpp"
#include "hoi/gaussian.hpp"
#include "hoi/oinfo.hpp"
#include "oracle.hpp"

using namespace hoi;

TEST_CASE("unit normal entropy") {
  CHECK(unit_normal_entropy_bits() == doctest::Approx(2.047095585180641).epsilon(1e-14));
  const GaussianModel m(Eigen::MatrixXd::Identity(3, 3));
  CHECK(entropy_gaussian(m, SubsetMask::all(3)) == doctest::Approx(3 * 2.047095585180641).epsilon(1e-14));
}

TEST_CASE("bivariate mutual information") {
  Eigen::MatrixXd c(2, 2);
  c << 1, 0.5, 0.5, 1;
  const auto cache = make_cache(GaussianModel(c));
  const double mi = mutual_information(cache, SubsetMask::single(0), SubsetMask::single(1));
  CHECK(mi == doctest::Approx(-0.5 * std::log2(0.75)).epsilon(1e-13));
  CHECK(mi == doctest::Approx(0.2075187496394219).epsilon(1e-13));
}

TEST_CASE("subset entropies match an LU determinant") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd a(5, 8);
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index k = 0; k < a.cols(); ++k) a(r, k) = normal(rng);
    Eigen::MatrixXd cov = a * a.transpose() / 8.0;
    const Eigen::VectorXd d = cov.diagonal().cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd corr = d.asDiagonal() * cov * d.asDiagonal();
    corr.diagonal().setOnes();
    const GaussianModel model(corr);
    SubsetMask::all(5).for_each_subset([&](SubsetMask s) {
      if (s.empty()) return;
      CHECK(entropy_gaussian(model, s) ==
            doctest::Approx(oracle::gaussian_entropy(corr, s.members())).epsilon(1e-10));
    });
  }
}

TEST_CASE("model validation") {
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.2, 0.3, 1;
  CHECK_THROWS_AS(GaussianModel{asym}, std::invalid_argument);
  Eigen::MatrixXd diag(2, 2);
  diag << 2, 0, 0, 1;
  CHECK_THROWS_AS(GaussianModel{diag}, std::invalid_argument);
  Eigen::MatrixXd singular(2, 2);
  singular << 1, 1, 1, 1;
  CHECK_THROWS_AS(GaussianModel{singular}, std::invalid_argument);
}

TEST_CASE("copula ranks") {
  Eigen::MatrixXd v(4, 1);
  v << 10, 30, 20, 40;
  const auto z = copula_transform(DataMatrix(v)).values();
  // Ranks 1, 3, 2, 4 over N + 1 = 5.
  CHECK(z(0, 0) == doctest::Approx(-0.8416212335729143).epsilon(1e-12));
  CHECK(z(2, 0) == doctest::Approx(-0.2533471031357997).epsilon(1e-12));
  CHECK(z(1, 0) == doctest::Approx(0.2533471031357997).epsilon(1e-12));

  Eigen::MatrixXd three(3, 1);
  three << 5, 7, 9;
  CHECK(copula_transform(DataMatrix(three)).values()(2, 0) == doctest::Approx(0.6744897501960817).epsilon(1e-13));
}

TEST_CASE("tied values share their average rank") {
  Eigen::MatrixXd v(5, 1);
  v << 1, 2, 2, 3, 4;
  const auto z = copula_transform(DataMatrix(v)).values();
  CHECK(z(1, 0) == z(2, 0));
  // Average rank 2.5 over N + 1 = 6.
  CHECK(z(1, 0) == doctest::Approx(-0.2104283942479247).epsilon(1e-12));
}

TEST_CASE("constant column is rejected by name") {
  Eigen::MatrixXd v(5, 2);
  v << 1, 3, 2, 3, 3, 3, 4, 3, 5, 3;
  const DataMatrix data(v, {"a", "flat"});
  CHECK_THROWS_WITH_AS(copula_transform(data), doctest::Contains("flat"), std::invalid_argument);
}

TEST_CASE("copula output is invariant under monotone transforms") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd v(50, 3);
  for (Eigen::Index r = 0; r < v.rows(); ++r)
    for (Eigen::Index c = 0; c < v.cols(); ++c) v(r, c) = normal(rng);
  Eigen::MatrixXd w = v;
  w.col(0) = v.col(0).array().exp();
  w.col(1) = v.col(1).array().cube() * 3.0 + 1.0;
  w.col(2) = -1.0 / (1.0 + v.col(2).array().exp());
  const auto a = copula_transform(DataMatrix(v)).values();
  const auto b = copula_transform(DataMatrix(w)).values();
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("duplicated column is a singular fit") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd v(40, 3);
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    v(r, 0) = normal(rng);
    v(r, 1) = normal(rng);
    v(r, 2) = v(r, 0);
  }
  const DataMatrix data(v);
  CHECK_THROWS_AS(fit(copula_transform(data)), std::runtime_error);
  FitOptions ridge;
  ridge.ridge = 1e-3;
  const auto m = fit(copula_transform(data), ridge);
  CHECK(m.corr()(0, 2) == doctest::Approx(1.0 / 1.001).epsilon(1e-12));
  CHECK(m.corr()(2, 2) == 1.0);
}

TEST_CASE("fitted correlation recovers the generating value") {
  Eigen::MatrixXd c(2, 2);
  c << 1, 0.5, 0.5, 1;
  std::mt19937_64 rng(2024);
  const DataMatrix data(oracle::sample_gaussian(c, 10000, rng));
  const auto m = fit(copula_transform(data));
  CHECK(std::abs(m.corr()(0, 1) - 0.5) < 0.03);
}
