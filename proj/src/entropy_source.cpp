#include "hoi/entropy_source.hpp"

#include <mutex>
#include <stdexcept>

namespace hoi {

EntropyCache::EntropyCache(std::shared_ptr<const EntropySource> source) : source_(std::move(source)) {
  if (!source_) throw std::invalid_argument("EntropyCache: null source");
}

double EntropyCache::entropy(SubsetMask subset) const {
  if (subset.empty()) return 0.0;
  if (!subset.valid_for(source_->n_vars())) {
    throw std::invalid_argument("subset " + subset.to_string() + " references variables beyond " +
                                std::to_string(source_->n_vars()));
  }
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(subset); it != memo_.end()) return it->second;
  }
  const double h = source_->subset_entropy(subset);
  std::unique_lock lock(mutex_);
  return memo_.emplace(subset, h).first->second;
}

std::size_t EntropyCache::size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

void EntropyCache::clear() {
  std::unique_lock lock(mutex_);
  memo_.clear();
}

EntropyCache make_cache(DiscreteJointDistribution dist) {
  return EntropyCache(std::make_shared<DiscreteEntropySource>(std::move(dist)));
}

EntropyCache make_cache(GaussianModel model) {
  return EntropyCache(std::make_shared<GaussianEntropySource>(std::move(model)));
}

}  // namespace hoi
