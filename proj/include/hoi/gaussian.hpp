#pragma once

#include <Eigen/Core>

#include "hoi/data_matrix.hpp"
#include "hoi/subset_mask.hpp"

namespace hoi {

/// Correlation matrix of Gaussian-copula normal scores. Immutable; the
/// constructor checks symmetry and unit diagonal (1e-12) and positive
/// definiteness.
class GaussianModel {
 public:
  explicit GaussianModel(Eigen::MatrixXd corr);

  const Eigen::MatrixXd& corr() const { return corr_; }
  int n_vars() const { return static_cast<int>(corr_.rows()); }

 private:
  Eigen::MatrixXd corr_;
};

struct FitOptions {
  /// Condition-number ceiling above which the correlation matrix is
  /// rejected as singular.
  double max_condition = 1e12;
  /// When > 0, the fitted matrix is replaced by (C + ridge*I) / (1 + ridge).
  double ridge = 0.0;
};

/// Replaces every column by Phi^-1(r / (N + 1)), r the within-column rank
/// (ties get their average rank). Throws std::invalid_argument naming the
/// first column with fewer than two distinct values.
DataMatrix copula_transform(const DataMatrix& data);

/// Sample correlation matrix of the columns. Throws std::runtime_error when
/// the matrix is singular or its condition number exceeds
/// options.max_condition.
GaussianModel fit(const DataMatrix& data, const FitOptions& options = {});

/// Differential entropy in bits of the Gaussian marginal on subset:
/// 1/2 log2((2 pi e)^k det(corr[subset])).
double entropy_gaussian(const GaussianModel& model, SubsetMask subset);

/// 1/2 log2(2 pi e), the entropy of a unit-variance normal in bits.
double unit_normal_entropy_bits();

}  // namespace hoi
