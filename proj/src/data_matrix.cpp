#include "hoi/data_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace hoi {

DataMatrix::DataMatrix(Eigen::MatrixXd values, std::vector<std::string> names)
    : values_(std::move(values)), names_(std::move(names)) {
  if (names_.empty()) {
    for (int j = 0; j < n_vars(); ++j) names_.push_back("x" + std::to_string(j));
  }
  if (static_cast<int>(names_.size()) != n_vars()) {
    throw std::invalid_argument("DataMatrix: " + std::to_string(names_.size()) +
                                " names for " + std::to_string(n_vars()) + " columns");
  }
  if (n_obs() < n_vars() + 2) {
    throw std::invalid_argument("DataMatrix: need at least n_vars + 2 = " +
                                std::to_string(n_vars() + 2) + " observations, got " +
                                std::to_string(n_obs()));
  }
  for (int j = 0; j < n_vars(); ++j) {
    for (int r = 0; r < n_obs(); ++r) {
      if (!std::isfinite(values_(r, j))) {
        throw std::invalid_argument("DataMatrix: missing or non-finite value in column '" +
                                    names_[j] + "' at row " + std::to_string(r));
      }
    }
  }
}

DataMatrix DataMatrix::select_rows(const std::vector<int>& rows) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), values_.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = values_.row(rows[r]);
  return DataMatrix(std::move(out), names_);
}

DataMatrix DataMatrix::select_columns(const std::vector<int>& cols) const {
  Eigen::MatrixXd out(values_.rows(), static_cast<Eigen::Index>(cols.size()));
  std::vector<std::string> names;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    out.col(static_cast<Eigen::Index>(c)) = values_.col(cols[c]);
    names.push_back(names_.at(cols[c]));
  }
  return DataMatrix(std::move(out), std::move(names));
}

}  // namespace hoi
