#include "hoi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "hoi/entropy_source.hpp"
#include "hoi/ising.hpp"
#include "hoi/oinfo.hpp"

namespace hoi {

namespace {

constexpr double kTol = 1e-9;

class Checks {
 public:
  /// Records one case; violation <= tolerance passes.
  void record(const std::string& name, double violation, double tolerance = kTol) {
    auto& c = get(name);
    ++c.cases;
    if (std::isnan(violation)) violation = INFINITY;
    c.worst = std::max(c.worst, violation);
    if (violation > tolerance) c.passed = false;
  }
  void record_bool(const std::string& name, bool ok) { record(name, ok ? 0.0 : 1.0, 0.0); }

  std::vector<CheckResult> results() const {
    std::vector<CheckResult> out;
    for (const auto& name : order_) {
      CheckResult r = checks_.at(name);
      std::ostringstream detail;
      detail.precision(3);
      detail << r.cases << " cases, worst violation " << r.worst;
      r.detail = detail.str();
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  CheckResult& get(const std::string& name) {
    auto it = checks_.find(name);
    if (it == checks_.end()) {
      order_.push_back(name);
      CheckResult fresh;
      fresh.name = name;
      fresh.passed = true;
      it = checks_.emplace(name, std::move(fresh)).first;
    }
    return it->second;
  }

  std::map<std::string, CheckResult> checks_;
  std::vector<std::string> order_;
};

// Recursive definition: grad_gamma(S) = grad_{gamma-m}(S) - grad_{gamma-m}(S - m).
double gradient_recursive(const EntropyCache& cache, SubsetMask system, SubsetMask gamma) {
  if (gamma.empty()) return o_information(cache, system);
  const int m = gamma.members().back();
  const SubsetMask rest = gamma.without(m);
  return gradient_recursive(cache, system, rest) - gradient_recursive(cache, system.without(m), rest);
}

void check_random_system(Checks& checks, const DiscreteJointDistribution& dist) {
  const EntropyCache cache = make_cache(dist);
  const int n = dist.n_vars();
  const SubsetMask system = SubsetMask::all(n);
  const double log_x = dist.max_alphabet_log2();

  const double tc = total_correlation(cache, system);
  const double dtc = dual_total_correlation(cache, system);
  const double omega = o_information(cache, system);
  checks.record("tc_nonnegative", -tc);
  checks.record("dtc_nonnegative", -dtc);
  checks.record("omega_equals_tc_minus_dtc", std::abs(omega - (tc - dtc)));

  for (int i = 0; i < n; ++i) {
    const double g = gradient_first(cache, system, i);
    checks.record("gradient_first_bounds", std::max(g - log_x, -(n - 2) * log_x - g));
    const double gtc = gradient_tc(cache, system, i);
    const double gdtc = gradient_dtc(cache, system, i);
    checks.record("gradient_tc_dtc_nonnegative", std::max(-gtc, -gdtc));
    checks.record("gradient_first_equals_tc_minus_dtc", std::abs(g - (gtc - gdtc)));
    if (n >= 4) {
      const double diff = o_information(cache, system) - o_information(cache, system.without(i));
      checks.record("gradient_first_equals_omega_difference", std::abs(g - diff));
    }
    for (int j = i + 1; j < n; ++j) {
      const double a = gradient_second(cache, system, i, j);
      const double b = gradient_second(cache, system, j, i);
      checks.record_bool("gradient_second_symmetric", a == b);
      if (n == 3) {
        checks.record("n3_local_equals_gradient_second", std::abs(a - local_o_information(cache, system, i, j)));
      }
    }
  }

  for (int k = 0; k <= 3 && n - k >= 3; ++k) {
    for (auto gamma : combinations(n, k)) {
      checks.record("chain_rule_inclusion_exclusion",
                    std::abs(gradient_k(cache, system, gamma) - gradient_recursive(cache, system, gamma)));
    }
  }

  // Cold and warm caches must agree bit for bit.
  const EntropyCache cold = make_cache(dist);
  checks.record_bool("cache_cold_equals_warm", o_information(cold, system) == omega &&
                                                   o_information(cold, system) == o_information(cache, system));
}

}  // namespace

DiscreteJointDistribution random_distribution(const std::vector<int>& alphabet_sizes, std::mt19937_64& engine,
                                              double zero_fraction) {
  std::vector<double> probs(DiscreteJointDistribution::table_size(alphabet_sizes));
  std::exponential_distribution<double> weight(1.0);
  std::bernoulli_distribution zero(zero_fraction);
  for (double& p : probs) {
    p = weight(engine);
    if (zero_fraction > 0.0 && zero(engine)) p = 0.0;
  }
  double total = 0.0;
  for (double p : probs) total += p;
  if (total == 0.0) {
    probs.front() = 1.0;
    total = 1.0;
  }
  for (double& p : probs) p /= total;
  return DiscreteJointDistribution(alphabet_sizes, std::move(probs));
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  Checks checks;

  for (int n = 3; n <= 8; ++n) {
    const EntropyCache copy = make_cache(make_copy_gate(n));
    const EntropyCache xr = make_cache(make_xor_gate(n));
    const SubsetMask system = SubsetMask::all(n);
    for (int i = 0; i < n; ++i) {
      checks.record("copy_gate_attains_upper_bound", std::abs(gradient_first(copy, system, i) - 1.0), 1e-12);
      checks.record("xor_gate_attains_lower_bound", std::abs(gradient_first(xr, system, i) - (2.0 - n)), 1e-12);
    }
  }

  std::mt19937_64 engine(options.seed);
  std::uniform_int_distribution<int> pick_n(3, 6);
  std::uniform_int_distribution<int> pick_alphabet(2, 3);
  for (int s = 0; s < options.random_systems; ++s) {
    const int n = pick_n(engine);
    std::vector<int> sizes(n);
    for (int& a : sizes) a = pick_alphabet(engine);
    check_random_system(checks, random_distribution(sizes, engine, s % 4 == 0 ? 0.3 : 0.0));
  }

  // Two independent blocks: second-order gradients across them vanish.
  for (int s = 0; s < std::max(1, options.random_systems / 10); ++s) {
    const int na = 2 + s % 2;
    const int nb = 3;
    const auto joint = product(random_distribution(std::vector<int>(na, 2), engine),
                               random_distribution(std::vector<int>(nb, 2), engine));
    const EntropyCache cache = make_cache(joint);
    const SubsetMask system = SubsetMask::all(na + nb);
    for (int i = 0; i < na; ++i) {
      for (int j = na; j < na + nb; ++j) {
        checks.record("independent_blocks_second_gradient_vanishes", std::abs(gradient_second(cache, system, i, j)));
      }
    }
  }

  {
    const EntropyCache cache = make_cache(boltzmann_distribution(hexagon_model(0.0)));
    const SubsetMask system = SubsetMask::all(7);
    checks.record("ising_infinite_temperature_zero", std::abs(o_information(cache, system)));
    for (int i = 0; i < 7; ++i) {
      checks.record("ising_infinite_temperature_zero", std::abs(gradient_first(cache, system, i)));
      for (int j = i + 1; j < 7; ++j) {
        checks.record("ising_infinite_temperature_zero", std::abs(gradient_second(cache, system, i, j)));
        checks.record("ising_infinite_temperature_zero", std::abs(local_o_information(cache, system, i, j)));
      }
    }
  }

  return checks.results();
}

}  // namespace hoi
