#include "hoi/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/erf.hpp>

namespace hoi {

namespace {

double normal_quantile(double p) {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

// 1-based ranks, ties averaged.
std::vector<double> average_ranks(const Eigen::VectorXd& column) {
  const auto n = static_cast<std::size_t>(column.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return column[a] < column[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && column[order[j + 1]] == column[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

GaussianModel::GaussianModel(Eigen::MatrixXd corr) : corr_(std::move(corr)) {
  if (corr_.rows() == 0 || corr_.rows() != corr_.cols()) {
    throw std::invalid_argument("GaussianModel: correlation matrix must be square and non-empty");
  }
  if (corr_.rows() > SubsetMask::kMaxVars) {
    throw std::invalid_argument("GaussianModel: at most 64 variables supported");
  }
  for (Eigen::Index i = 0; i < corr_.rows(); ++i) {
    if (std::abs(corr_(i, i) - 1.0) > 1e-12) {
      throw std::invalid_argument("GaussianModel: diagonal entry " + std::to_string(i) + " is not 1");
    }
    for (Eigen::Index j = 0; j < i; ++j) {
      if (!(std::abs(corr_(i, j) - corr_(j, i)) <= 1e-12)) {
        throw std::invalid_argument("GaussianModel: correlation matrix is not symmetric");
      }
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(corr_);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("GaussianModel: correlation matrix is not positive definite");
  }
}

DataMatrix copula_transform(const DataMatrix& data) {
  const auto& x = data.values();
  Eigen::MatrixXd out(x.rows(), x.cols());
  const double denom = static_cast<double>(data.n_obs()) + 1.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const Eigen::VectorXd column = x.col(j);
    if (column.minCoeff() == column.maxCoeff()) {
      throw std::invalid_argument("copula_transform: column '" + data.name(static_cast<int>(j)) +
                                  "' is constant");
    }
    const auto ranks = average_ranks(column);
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      out(r, j) = normal_quantile(ranks[static_cast<std::size_t>(r)] / denom);
    }
  }
  return DataMatrix(std::move(out), data.names());
}

GaussianModel fit(const DataMatrix& data, const FitOptions& options) {
  const auto& x = data.values();
  const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  Eigen::MatrixXd cov = centered.transpose() * centered;
  const Eigen::VectorXd sd = cov.diagonal().cwiseSqrt();
  for (Eigen::Index j = 0; j < sd.size(); ++j) {
    if (!(sd[j] > 0.0)) {
      throw std::runtime_error("fit: column '" + data.name(static_cast<int>(j)) + "' has zero variance");
    }
  }
  Eigen::MatrixXd corr = sd.cwiseInverse().asDiagonal() * cov * sd.cwiseInverse().asDiagonal();
  corr = 0.5 * (corr + corr.transpose());
  corr.diagonal().setOnes();
  if (options.ridge > 0.0) {
    corr.diagonal().array() += options.ridge;
    corr /= 1.0 + options.ridge;
    corr.diagonal().setOnes();
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > options.max_condition) {
    throw std::runtime_error("fit: correlation matrix is singular or ill-conditioned (eigenvalues " +
                             std::to_string(lo) + " .. " + std::to_string(hi) + ")");
  }
  return GaussianModel(std::move(corr));
}

double unit_normal_entropy_bits() {
  return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e);
}

double entropy_gaussian(const GaussianModel& model, SubsetMask subset) {
  if (subset.empty()) throw std::invalid_argument("entropy_gaussian: empty subset");
  if (!subset.valid_for(model.n_vars())) {
    throw std::invalid_argument("entropy_gaussian: subset " + subset.to_string() + " out of range");
  }
  const auto idx = subset.members();
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) sub(a, b) = model.corr()(idx[a], idx[b]);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sub);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("entropy_gaussian: submatrix " + subset.to_string() + " is not positive definite");
  }
  double log_det = 0.0;
  for (Eigen::Index a = 0; a < k; ++a) {
    const double d = llt.matrixLLT()(a, a);
    if (!(d > 0.0)) {
      throw std::runtime_error("entropy_gaussian: non-positive determinant for " + subset.to_string());
    }
    log_det += 2.0 * std::log(d);
  }
  return static_cast<double>(k) * unit_normal_entropy_bits() + 0.5 * log_det / std::numbers::ln2;
}

}  // namespace hoi
