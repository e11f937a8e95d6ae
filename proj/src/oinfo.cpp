#include "hoi/oinfo.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace hoi {

namespace {

void require_system(const EntropyCache& cache, SubsetMask system, int min_size, const char* op) {
  if (!system.valid_for(cache.n_vars())) {
    throw std::invalid_argument(std::string(op) + ": system " + system.to_string() +
                                " references variables beyond " + std::to_string(cache.n_vars()));
  }
  if (system.size() < min_size) {
    throw std::invalid_argument(std::string(op) + ": needs at least " + std::to_string(min_size) +
                                " variables, system " + system.to_string() + " has " +
                                std::to_string(system.size()));
  }
}

void require_member(SubsetMask system, int i, const char* op) {
  if (!system.contains(i)) {
    throw std::invalid_argument(std::string(op) + ": variable " + std::to_string(i) +
                                " is not in system " + system.to_string());
  }
}

void require_pair(SubsetMask system, int i, int j, const char* op) {
  if (i == j) {
    throw std::invalid_argument(std::string(op) + ": pair indices must differ (got " +
                                std::to_string(i) + " twice)");
  }
  require_member(system, i, op);
  require_member(system, j, op);
}

}  // namespace

double mutual_information(const EntropyCache& cache, SubsetMask a, SubsetMask b) {
  return cache.entropy(a) + cache.entropy(b) - cache.entropy(a | b);
}

double conditional_mutual_information(const EntropyCache& cache, SubsetMask a, SubsetMask b,
                                      SubsetMask c) {
  return cache.entropy(a | c) + cache.entropy(b | c) - cache.entropy(a | b | c) - cache.entropy(c);
}

double total_correlation(const EntropyCache& cache, SubsetMask system) {
  require_system(cache, system, 2, "total_correlation");
  double marginals = 0.0;
  for (int i : system.members()) marginals += cache.entropy(SubsetMask::single(i));
  return marginals - cache.entropy(system);
}

double dual_total_correlation(const EntropyCache& cache, SubsetMask system) {
  require_system(cache, system, 2, "dual_total_correlation");
  const double joint = cache.entropy(system);
  double residuals = 0.0;
  for (int i : system.members()) residuals += joint - cache.entropy(system.without(i));
  return joint - residuals;
}

double o_information(const EntropyCache& cache, SubsetMask system) {
  require_system(cache, system, 3, "o_information");
  const int n = system.size();
  double sum = 0.0;
  for (int i : system.members()) {
    sum += cache.entropy(SubsetMask::single(i)) - cache.entropy(system.without(i));
  }
  return static_cast<double>(n - 2) * cache.entropy(system) + sum;
}

double gradient_first(const EntropyCache& cache, SubsetMask system, int i) {
  require_system(cache, system, 3, "gradient_first");
  require_member(system, i, "gradient_first");
  const int n = system.size();
  const SubsetMask xi = SubsetMask::single(i);
  const SubsetMask rest = system.without(i);
  double others = 0.0;
  for (int k : rest.members()) {
    others += mutual_information(cache, xi, rest.without(k));
  }
  return static_cast<double>(2 - n) * mutual_information(cache, xi, rest) + others;
}

double gradient_second(const EntropyCache& cache, SubsetMask system, int i, int j) {
  require_system(cache, system, 3, "gradient_second");
  require_pair(system, i, j, "gradient_second");
  if (j < i) std::swap(i, j);
  switch (system.size()) {
    case 3:
      return local_o_information(cache, system, i, j);
    case 4:
      return gradient_first(cache, system, i) - gradient_first(cache, system.without(j), i);
    default: {
      const double outer = o_information(cache, system) + o_information(cache, system.without(i).without(j));
      const double inner = o_information(cache, system.without(i)) + o_information(cache, system.without(j));
      return outer - inner;
    }
  }
}

double gradient_k(const EntropyCache& cache, SubsetMask system, SubsetMask gamma) {
  require_system(cache, system, 3, "gradient_k");
  if (!gamma.is_subset_of(system)) {
    throw std::invalid_argument("gradient_k: gamma " + gamma.to_string() + " is not a subset of system " +
                                system.to_string());
  }
  if (system.size() - gamma.size() < 3) {
    throw std::invalid_argument("gradient_k: |system| - |gamma| = " +
                                std::to_string(system.size() - gamma.size()) + " for gamma of size " +
                                std::to_string(gamma.size()) + "; every reduced system needs >= 3 variables");
  }
  double sum = 0.0;
  gamma.for_each_subset([&](SubsetMask alpha) {
    const double omega = o_information(cache, system - alpha);
    sum += (alpha.size() % 2 == 0) ? omega : -omega;
  });
  return sum;
}

double local_o_information(const EntropyCache& cache, SubsetMask system, int i, int j) {
  require_system(cache, system, 3, "local_o_information");
  require_pair(system, i, j, "local_o_information");
  if (j < i) std::swap(i, j);
  const SubsetMask xi = SubsetMask::single(i);
  const SubsetMask xj = SubsetMask::single(j);
  const SubsetMask rest = system.without(i).without(j);
  return mutual_information(cache, xi, xj) - conditional_mutual_information(cache, xi, xj, rest);
}

double gradient_tc(const EntropyCache& cache, SubsetMask system, int i) {
  require_system(cache, system, 3, "gradient_tc");
  require_member(system, i, "gradient_tc");
  return mutual_information(cache, SubsetMask::single(i), system.without(i));
}

double gradient_dtc(const EntropyCache& cache, SubsetMask system, int i) {
  require_system(cache, system, 3, "gradient_dtc");
  require_member(system, i, "gradient_dtc");
  const SubsetMask rest = system.without(i);
  const double h_all = cache.entropy(system);
  const double h_rest = cache.entropy(rest);
  double sum = 0.0;
  for (int k : rest.members()) {
    sum += h_rest - cache.entropy(rest.without(k)) - h_all + cache.entropy(system.without(k));
  }
  return sum;
}

}  // namespace hoi
