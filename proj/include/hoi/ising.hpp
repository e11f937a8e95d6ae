#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hoi/distribution.hpp"

namespace hoi {

/// Pairwise spin system with energy H(s) = -sum_{i<j} J_ij s_i s_j, s = ±1.
/// Each unordered pair contributes once with its full coupling.
class IsingModel {
 public:
  /// Couplings must be square, symmetric (1e-12) with zero diagonal; beta >= 0.
  IsingModel(Eigen::MatrixXd couplings, double beta);

  int n_spins() const { return static_cast<int>(couplings_.rows()); }
  const Eigen::MatrixXd& couplings() const { return couplings_; }
  double beta() const { return beta_; }

  /// Energy of a configuration given as mixed-radix state index (digit 0 is
  /// spin -1, digit 1 is spin +1, spin 0 most significant).
  double energy(std::size_t state) const;

 private:
  Eigen::MatrixXd couplings_;
  double beta_;
};

/// Seven-spin hexagon: spin 0 at the center, spins 1..6 around the ring.
/// Ring edges are ferromagnetic (+1); spokes alternate +1, -1 around the
/// ring, so every center-ring-ring triangle is frustrated while the ring
/// alone is not.
Eigen::MatrixXd hexagon_couplings();
IsingModel hexagon_model(double beta);

/// Exact Boltzmann distribution exp(-beta H) / Z over all 2^n configurations,
/// normalized in log space. Throws std::invalid_argument above 24 spins.
DiscreteJointDistribution boltzmann_distribution(const IsingModel& model);

/// Z by direct summation of exp(-beta H(s)).
double partition_function(const IsingModel& model);
/// log Z via log-sum-exp; finite for any beta.
double log_partition_function(const IsingModel& model);

/// Quantity tracked by a temperature sweep, evaluated on the full system.
struct SweepQuantity {
  enum class Kind { GradientFirst, GradientSecond, LocalOInformation, OInformation };
  Kind kind;
  int i = -1;
  int j = -1;

  static SweepQuantity gradient_first(int i) { return {Kind::GradientFirst, i, -1}; }
  static SweepQuantity gradient_second(int i, int j) { return {Kind::GradientSecond, i, j}; }
  static SweepQuantity local_o_information(int i, int j) { return {Kind::LocalOInformation, i, j}; }
  static SweepQuantity o_information() { return {Kind::OInformation, -1, -1}; }

  /// Column label: grad1_<i>, grad2_<i>_<j>, local_<i>_<j> or oinfo.
  std::string label() const;
};

struct SweepResult {
  std::vector<double> betas;
  std::vector<std::string> labels;
  /// curves[q][b] is quantity q at betas[b], in bits.
  std::vector<std::vector<double>> curves;

  const std::vector<double>& curve(const std::string& label) const;
};

/// `points` values evenly spaced on [lo, hi], endpoints included.
std::vector<double> linear_grid(double lo, double hi, int points);
/// 64 points on [0, 2].
std::vector<double> default_beta_grid();

/// Exact evaluation of each quantity at each beta. Grid points run
/// concurrently, each with its own entropy cache; results are ordered by
/// grid index and identical for any thread count.
SweepResult sweep(const std::function<IsingModel(double)>& model_factory, const std::vector<double>& betas,
                  const std::vector<SweepQuantity>& quantities, unsigned threads = 0);

/// grad1 for every spin, or `kind` for every unordered pair i < j.
std::vector<SweepQuantity> first_order_quantities(int n_spins);
std::vector<SweepQuantity> pair_quantities(int n_spins, SweepQuantity::Kind kind);

}  // namespace hoi
