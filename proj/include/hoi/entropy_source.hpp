#pragma once

#include <memory>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "hoi/distribution.hpp"
#include "hoi/gaussian.hpp"
#include "hoi/subset_mask.hpp"

namespace hoi {

/// Anything that can report the joint entropy (in bits) of a subset of its
/// variables. Implementations must be deterministic and safe to call from
/// several threads at once.
class EntropySource {
 public:
  virtual ~EntropySource() = default;

  virtual double subset_entropy(SubsetMask subset) const = 0;
  virtual int n_vars() const = 0;
  /// log2 of the largest alphabet; empty for continuous sources.
  virtual std::optional<double> max_alphabet_log2() const = 0;
};

class DiscreteEntropySource final : public EntropySource {
 public:
  explicit DiscreteEntropySource(DiscreteJointDistribution dist) : dist_(std::move(dist)) {}

  double subset_entropy(SubsetMask subset) const override { return entropy(dist_, subset); }
  int n_vars() const override { return dist_.n_vars(); }
  std::optional<double> max_alphabet_log2() const override { return dist_.max_alphabet_log2(); }

  const DiscreteJointDistribution& distribution() const { return dist_; }

 private:
  DiscreteJointDistribution dist_;
};

class GaussianEntropySource final : public EntropySource {
 public:
  explicit GaussianEntropySource(GaussianModel model) : model_(std::move(model)) {}

  double subset_entropy(SubsetMask subset) const override { return entropy_gaussian(model_, subset); }
  int n_vars() const override { return model_.n_vars(); }
  std::optional<double> max_alphabet_log2() const override { return std::nullopt; }

  const GaussianModel& model() const { return model_; }

 private:
  GaussianModel model_;
};

/// Memoizes subset entropies of one immutable source. The empty set has
/// entropy 0 and never reaches the source.
///
/// Lookups are thread-safe. Two threads missing on the same subset may both
/// compute it; since the source is deterministic they store the same value.
class EntropyCache {
 public:
  explicit EntropyCache(std::shared_ptr<const EntropySource> source);

  double entropy(SubsetMask subset) const;

  const EntropySource& source() const { return *source_; }
  int n_vars() const { return source_->n_vars(); }
  std::optional<double> max_alphabet_log2() const { return source_->max_alphabet_log2(); }

  std::size_t size() const;
  void clear();

 private:
  std::shared_ptr<const EntropySource> source_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<SubsetMask, double> memo_;
};

EntropyCache make_cache(DiscreteJointDistribution dist);
EntropyCache make_cache(GaussianModel model);

}  // namespace hoi
