#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace hoi {

/// Observations × variables table of reals with column names. Construction
/// rejects missing (non-finite) entries and tables too short to estimate a
/// correlation matrix (n_obs < n_vars + 2).
class DataMatrix {
 public:
  DataMatrix() = default;
  explicit DataMatrix(Eigen::MatrixXd values, std::vector<std::string> names = {});

  const Eigen::MatrixXd& values() const { return values_; }
  int n_obs() const { return static_cast<int>(values_.rows()); }
  int n_vars() const { return static_cast<int>(values_.cols()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int var) const { return names_.at(var); }

  /// New matrix holding the given rows (repeats allowed), same names.
  DataMatrix select_rows(const std::vector<int>& rows) const;
  /// New matrix holding the given columns in the given order.
  DataMatrix select_columns(const std::vector<int>& cols) const;

 private:
  Eigen::MatrixXd values_;
  std::vector<std::string> names_;
};

}  // namespace hoi
