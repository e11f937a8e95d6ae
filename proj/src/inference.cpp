#include "hoi/inference.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hoi/distribution.hpp"
#include "hoi/oinfo.hpp"
#include "hoi/parallel.hpp"

namespace hoi {

namespace {

void check_options(const BootstrapOptions& options) {
  if (options.n_boot < 100) {
    throw std::invalid_argument("bootstrap: n_boot must be >= 100, got " + std::to_string(options.n_boot));
  }
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    throw std::invalid_argument("bootstrap: alpha must lie in (0, 1)");
  }
}

std::mt19937_64 replicate_engine(std::uint64_t seed, std::size_t replicate, std::size_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replicate), static_cast<std::uint32_t>(replicate >> 32),
                    static_cast<std::uint32_t>(attempt)};
  return std::mt19937_64(seq);
}

EstimatorConfig pinned(const DataMatrix& data, EstimatorConfig config) {
  if (config.backend == Backend::Discrete && config.alphabet_sizes.empty()) {
    config.alphabet_sizes = infer_alphabet_sizes(data);
  }
  return config;
}

std::vector<std::string> names_of(const DataMatrix& data, SubsetMask vars) {
  std::vector<std::string> out;
  for (int v : vars.members()) out.push_back(data.name(v));
  return out;
}

std::string join_names(const DataMatrix& data, SubsetMask vars) {
  std::string out;
  for (int v : vars.members()) {
    if (!out.empty()) out += ",";
    out += data.name(v);
  }
  return out;
}

std::vector<GradientReport> summarize(const BootstrapSamples& samples, const std::vector<std::string>& labels,
                                      const BootstrapOptions& options) {
  std::vector<GradientReport> out;
  out.reserve(labels.size());
  for (std::size_t q = 0; q < labels.size(); ++q) {
    GradientReport r;
    r.label = labels[q];
    r.estimate = samples.estimates[q];
    std::tie(r.ci_low, r.ci_high) = percentile_interval(samples.replicates[q], options.alpha);
    r.significant = r.ci_low > 0.0 || r.ci_high < 0.0;
    r.n_boot = options.n_boot;
    r.seed = options.seed;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::shared_ptr<const EntropySource> make_source(const DataMatrix& data, const EstimatorConfig& config) {
  switch (config.backend) {
    case Backend::Discrete: {
      auto sizes = config.alphabet_sizes.empty() ? infer_alphabet_sizes(data) : config.alphabet_sizes;
      return std::make_shared<DiscreteEntropySource>(empirical_distribution(data, std::move(sizes)));
    }
    case Backend::GaussianCopula:
      return std::make_shared<GaussianEntropySource>(fit(copula_transform(data), config.fit));
  }
  throw std::invalid_argument("make_source: unknown backend");
}

std::pair<double, double> percentile_interval(std::vector<double> values, double alpha) {
  if (values.empty()) throw std::invalid_argument("percentile_interval: no values");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  return {quantile(alpha / 2.0), quantile(1.0 - alpha / 2.0)};
}

BootstrapSamples bootstrap_samples(const DataMatrix& data, const VectorStatistic& statistic,
                                   const BootstrapOptions& options) {
  check_options(options);
  BootstrapSamples out;
  out.estimates = statistic(data);
  const std::size_t n_stats = out.estimates.size();
  const auto n_boot = static_cast<std::size_t>(options.n_boot);
  const std::size_t max_draws = 10 * n_boot;
  const int n_obs = data.n_obs();

  std::vector<std::vector<double>> by_replicate(n_boot);
  std::atomic<std::size_t> failures{0};

  parallel_for(
      n_boot,
      [&](std::size_t b) {
        std::uniform_int_distribution<int> pick(0, n_obs - 1);
        std::vector<int> rows(static_cast<std::size_t>(n_obs));
        for (std::size_t attempt = 0;; ++attempt) {
          if (n_boot + failures.load() > max_draws) {
            throw std::runtime_error("bootstrap: statistic failed on too many replicates (cap " +
                                     std::to_string(max_draws) + " draws)");
          }
          auto engine = replicate_engine(options.seed, b, attempt);
          for (int& r : rows) r = pick(engine);
          std::vector<double> values;
          try {
            values = statistic(data.select_rows(rows));
          } catch (const std::exception&) {
            ++failures;
            continue;
          }
          if (values.size() != n_stats) throw std::logic_error("bootstrap: statistic changed its arity");
          by_replicate[b] = std::move(values);
          return;
        }
      },
      options.threads);

  out.replicates.assign(n_stats, std::vector<double>(n_boot));
  for (std::size_t b = 0; b < n_boot; ++b) {
    for (std::size_t q = 0; q < n_stats; ++q) out.replicates[q][b] = by_replicate[b][q];
  }
  return out;
}

GradientReport bootstrap(const DataMatrix& data, const ScalarStatistic& statistic, int n_boot, double alpha,
                         std::uint64_t seed) {
  BootstrapOptions options;
  options.n_boot = n_boot;
  options.alpha = alpha;
  options.seed = seed;
  auto reports = bootstrap_many(
      data, [&](const DataMatrix& d) { return std::vector<double>{statistic(d)}; }, {"statistic"}, options);
  return reports.front();
}

std::vector<GradientReport> bootstrap_many(const DataMatrix& data, const VectorStatistic& statistic,
                                           const std::vector<std::string>& labels,
                                           const BootstrapOptions& options) {
  const auto samples = bootstrap_samples(data, statistic, options);
  if (samples.estimates.size() != labels.size()) {
    throw std::invalid_argument("bootstrap_many: " + std::to_string(labels.size()) + " labels for " +
                                std::to_string(samples.estimates.size()) + " statistics");
  }
  return summarize(samples, labels, options);
}

std::vector<GradientReport> gradient_significance(const DataMatrix& data, int order,
                                                  const EstimatorConfig& config,
                                                  const BootstrapOptions& options) {
  const int n = data.n_vars();
  const bool defined = order >= 1 && n >= 3 && (order <= 2 || n - order >= 3);
  if (!defined) {
    throw std::invalid_argument("gradient_significance: order " + std::to_string(order) + " is not defined for " +
                                std::to_string(n) + " variables");
  }
  const auto cfg = pinned(data, config);
  const auto gammas = combinations(n, order);
  const SubsetMask system = SubsetMask::all(n);

  std::vector<std::string> labels;
  for (auto g : gammas) labels.push_back("grad" + std::to_string(order) + "[" + join_names(data, g) + "]");

  auto statistic = [&](const DataMatrix& d) {
    const EntropyCache cache(make_source(d, cfg));
    std::vector<double> out;
    out.reserve(gammas.size());
    for (auto g : gammas) {
      const auto m = g.members();
      if (order == 1) {
        out.push_back(gradient_first(cache, system, m[0]));
      } else if (order == 2) {
        out.push_back(gradient_second(cache, system, m[0], m[1]));
      } else {
        out.push_back(gradient_k(cache, system, g));
      }
    }
    return out;
  };
  auto reports = bootstrap_many(data, statistic, labels, options);
  for (std::size_t k = 0; k < gammas.size(); ++k) reports[k].variables = names_of(data, gammas[k]);
  return reports;
}

std::vector<GradientReport> local_o_significance(const DataMatrix& data, const EstimatorConfig& config,
                                                 const BootstrapOptions& options) {
  const int n = data.n_vars();
  if (n < 3) throw std::invalid_argument("local_o_significance: needs at least 3 variables");
  const auto cfg = pinned(data, config);
  const auto pairs = combinations(n, 2);
  const SubsetMask system = SubsetMask::all(n);

  std::vector<std::string> labels;
  for (auto p : pairs) labels.push_back("local[" + join_names(data, p) + "]");

  auto statistic = [&](const DataMatrix& d) {
    const EntropyCache cache(make_source(d, cfg));
    std::vector<double> out;
    out.reserve(pairs.size());
    for (auto p : pairs) {
      const auto m = p.members();
      out.push_back(local_o_information(cache, system, m[0], m[1]));
    }
    return out;
  };
  auto reports = bootstrap_many(data, statistic, labels, options);
  for (std::size_t k = 0; k < pairs.size(); ++k) reports[k].variables = names_of(data, pairs[k]);
  return reports;
}

MultipletScan scan_multiplets(const DataMatrix& data, int order, const EstimatorConfig& config,
                              const BootstrapOptions& options) {
  if (order != 3 && order != 4) {
    throw std::invalid_argument("scan_multiplets: order must be 3 or 4, got " + std::to_string(order));
  }
  const int n = data.n_vars();
  if (n < order) {
    throw std::invalid_argument("scan_multiplets: " + std::to_string(n) + " variables cannot form multiplets of " +
                                std::to_string(order));
  }
  const auto cfg = pinned(data, config);

  MultipletScan scan;
  scan.order = order;
  scan.multiplets = combinations(n, order);

  std::vector<std::string> labels;
  for (auto m : scan.multiplets) labels.push_back("oinfo[" + join_names(data, m) + "]");

  auto statistic = [&](const DataMatrix& d) {
    const EntropyCache cache(make_source(d, cfg));
    std::vector<double> out;
    out.reserve(scan.multiplets.size());
    for (auto m : scan.multiplets) out.push_back(o_information(cache, m));
    return out;
  };
  scan.reports = bootstrap_many(data, statistic, labels, options);
  for (std::size_t k = 0; k < scan.multiplets.size(); ++k) {
    scan.reports[k].variables = names_of(data, scan.multiplets[k]);
  }

  scan.redundancy.assign(n, 0.0);
  scan.synergy.assign(n, 0.0);
  for (auto p : combinations(n, 2)) {
    const auto m = p.members();
    scan.pairs.push_back({m[0], m[1], 0.0, 0.0});
  }
  auto pair_slot = [n](int i, int j) {
    // Position of (i, j), i < j, in lexicographic pair order.
    return static_cast<std::size_t>(i * n - i * (i + 1) / 2 + (j - i - 1));
  };

  for (std::size_t k = 0; k < scan.multiplets.size(); ++k) {
    const auto& r = scan.reports[k];
    if (!r.significant || r.estimate == 0.0) continue;
    const bool redundant = r.estimate > 0.0;
    const auto members = scan.multiplets[k].members();
    for (int v : members) (redundant ? scan.redundancy : scan.synergy)[v] += r.estimate;
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        auto& pair = scan.pairs[pair_slot(members[a], members[b])];
        (redundant ? pair.redundancy : pair.synergy) += r.estimate;
      }
    }
  }
  return scan;
}

}  // namespace hoi
