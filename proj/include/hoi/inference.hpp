#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hoi/data_matrix.hpp"
#include "hoi/entropy_source.hpp"
#include "hoi/gaussian.hpp"

namespace hoi {

enum class Backend { Discrete, GaussianCopula };

/// How a data matrix becomes an entropy source.
struct EstimatorConfig {
  Backend backend = Backend::GaussianCopula;
  /// Discrete backend only. Empty means "infer from the data"; bootstrap
  /// drivers pin it to the full-sample alphabet so replicates share it.
  std::vector<int> alphabet_sizes;
  FitOptions fit;
};

/// Plug-in distribution (discrete) or copula-transformed correlation model
/// (Gaussian copula) of the data.
std::shared_ptr<const EntropySource> make_source(const DataMatrix& data, const EstimatorConfig& config);

struct BootstrapOptions {
  int n_boot = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

/// Point estimate with a percentile bootstrap confidence interval.
/// significant is true exactly when 0 lies outside [ci_low, ci_high].
struct GradientReport {
  std::string label;
  /// Names of the variables the quantity refers to, if any.
  std::vector<std::string> variables;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool significant = false;
  int n_boot = 0;
  std::uint64_t seed = 0;
};

using ScalarStatistic = std::function<double(const DataMatrix&)>;
using VectorStatistic = std::function<std::vector<double>(const DataMatrix&)>;

/// Raw bootstrap output: replicates[q][b] is statistic q on replicate b.
struct BootstrapSamples {
  std::vector<double> estimates;
  std::vector<std::vector<double>> replicates;
};

/// Resamples rows i.i.d. with replacement, n_obs rows per replicate, and
/// evaluates the statistic on each. Replicate b draws from a generator
/// seeded by (seed, b, attempt), so results do not depend on thread count.
/// A replicate on which the statistic throws is redrawn; more than
/// 10 * n_boot draws in total is an error.
BootstrapSamples bootstrap_samples(const DataMatrix& data, const VectorStatistic& statistic,
                                   const BootstrapOptions& options);

/// Percentile interval at (alpha/2, 1 - alpha/2) with linear interpolation
/// between order statistics.
std::pair<double, double> percentile_interval(std::vector<double> values, double alpha);

GradientReport bootstrap(const DataMatrix& data, const ScalarStatistic& statistic, int n_boot, double alpha,
                         std::uint64_t seed);

std::vector<GradientReport> bootstrap_many(const DataMatrix& data, const VectorStatistic& statistic,
                                           const std::vector<std::string>& labels,
                                           const BootstrapOptions& options);

/// Significance of every gradient of the given order on the full system:
/// order 1 per variable, order 2 per unordered pair, order k >= 3 per
/// k-subset. Labels look like grad1[GDP] or grad2[GDP,GPDI].
std::vector<GradientReport> gradient_significance(const DataMatrix& data, int order,
                                                  const EstimatorConfig& config,
                                                  const BootstrapOptions& options);

/// Local O-information of every unordered pair, labelled local[a,b].
std::vector<GradientReport> local_o_significance(const DataMatrix& data, const EstimatorConfig& config,
                                                 const BootstrapOptions& options);

struct PairIndex {
  int i = 0;
  int j = 0;
  double redundancy = 0.0;
  double synergy = 0.0;
};

/// O-information of every multiplet of one size, with redundancy (R) and
/// synergy (S) indices: R sums Omega over significant multiplets with a
/// positive estimate containing the variable (or pair), S over significant
/// ones with a negative estimate.
struct MultipletScan {
  int order = 0;
  std::vector<SubsetMask> multiplets;
  std::vector<GradientReport> reports;
  std::vector<double> redundancy;
  std::vector<double> synergy;
  std::vector<PairIndex> pairs;
};

MultipletScan scan_multiplets(const DataMatrix& data, int order, const EstimatorConfig& config,
                              const BootstrapOptions& options);

}  // namespace hoi
