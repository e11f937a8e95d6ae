#include "hoi/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hoi {

namespace {

constexpr const char* kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

}  // namespace

std::size_t DiscreteJointDistribution::table_size(std::span<const int> alphabet_sizes,
                                                  std::size_t max_states) {
  if (alphabet_sizes.empty()) {
    throw std::invalid_argument("distribution needs at least one variable");
  }
  if (alphabet_sizes.size() > static_cast<std::size_t>(SubsetMask::kMaxVars)) {
    throw std::invalid_argument("distribution supports at most 64 variables");
  }
  std::size_t total = 1;
  for (int a : alphabet_sizes) {
    if (a < 1) throw std::invalid_argument("alphabet sizes must be >= 1");
    if (total > max_states / static_cast<std::size_t>(a)) {
      throw std::invalid_argument("probability table exceeds the cap of " +
                                  std::to_string(max_states) + " states");
    }
    total *= static_cast<std::size_t>(a);
  }
  return total;
}

DiscreteJointDistribution::DiscreteJointDistribution(std::vector<int> alphabet_sizes,
                                                     std::vector<double> probs,
                                                     std::size_t max_states)
    : alphabet_sizes_(std::move(alphabet_sizes)), probs_(std::move(probs)) {
  const std::size_t expected = table_size(alphabet_sizes_, max_states);
  if (probs_.size() != expected) {
    throw std::invalid_argument("probability table has " + std::to_string(probs_.size()) +
                                " entries, alphabet requires " + std::to_string(expected));
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("probability masses must be finite and non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probability masses sum to " << total << ", not 1";
    throw std::invalid_argument(msg.str());
  }
}

double DiscreteJointDistribution::max_alphabet_log2() const {
  return std::log2(static_cast<double>(*std::max_element(alphabet_sizes_.begin(), alphabet_sizes_.end())));
}

std::size_t DiscreteJointDistribution::encode(std::span<const int> digits) const {
  if (digits.size() != alphabet_sizes_.size()) {
    throw std::invalid_argument("state has wrong number of digits");
  }
  std::size_t state = 0;
  for (std::size_t v = 0; v < digits.size(); ++v) {
    if (digits[v] < 0 || digits[v] >= alphabet_sizes_[v]) {
      throw std::out_of_range("digit out of range for variable " + std::to_string(v));
    }
    state = state * static_cast<std::size_t>(alphabet_sizes_[v]) + static_cast<std::size_t>(digits[v]);
  }
  return state;
}

std::vector<int> DiscreteJointDistribution::decode(std::size_t state) const {
  if (state >= probs_.size()) throw std::out_of_range("state index out of range");
  std::vector<int> digits(alphabet_sizes_.size());
  for (std::size_t v = digits.size(); v-- > 0;) {
    const auto a = static_cast<std::size_t>(alphabet_sizes_[v]);
    digits[v] = static_cast<int>(state % a);
    state /= a;
  }
  return digits;
}

DiscreteJointDistribution marginalize(const DiscreteJointDistribution& dist, SubsetMask keep) {
  if (keep.empty()) {
    throw std::invalid_argument("marginalize: empty variable set is a degenerate marginal");
  }
  const int n = dist.n_vars();
  if (!keep.valid_for(n)) {
    throw std::invalid_argument("marginalize: mask " + keep.to_string() + " references variables beyond " +
                                std::to_string(n));
  }
  if (keep == SubsetMask::all(n)) return dist;

  const auto& sizes = dist.alphabet_sizes();
  std::vector<int> out_sizes;
  for (int v : keep.members()) out_sizes.push_back(sizes[v]);

  // Output stride per input variable (0 for summed-out variables).
  std::vector<std::size_t> out_stride(n, 0);
  std::size_t stride = 1;
  for (int v = n - 1; v >= 0; --v) {
    if (keep.contains(v)) {
      out_stride[v] = stride;
      stride *= static_cast<std::size_t>(sizes[v]);
    }
  }
  std::vector<double> out(stride, 0.0);

  // Odometer over the full table, last variable fastest.
  std::vector<int> digits(n, 0);
  std::size_t out_index = 0;
  const auto probs = dist.probs();
  for (std::size_t s = 0; s < probs.size(); ++s) {
    out[out_index] += probs[s];
    for (int v = n - 1; v >= 0; --v) {
      if (++digits[v] < sizes[v]) {
        out_index += out_stride[v];
        break;
      }
      digits[v] = 0;
      out_index -= out_stride[v] * static_cast<std::size_t>(sizes[v] - 1);
    }
  }
  return DiscreteJointDistribution(std::move(out_sizes), std::move(out));
}

double entropy_bits(std::span<const double> masses) {
  double h = 0.0;
  for (double p : masses) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double entropy(const DiscreteJointDistribution& dist, SubsetMask subset) {
  if (subset == SubsetMask::all(dist.n_vars())) return entropy_bits(dist.probs());
  return entropy_bits(marginalize(dist, subset).probs());
}

DiscreteJointDistribution make_copy_gate(int n) {
  if (n < 3) {
    throw std::invalid_argument("make_copy_gate: need n >= 3, got " + std::to_string(n));
  }
  std::vector<int> sizes(n, 2);
  std::vector<double> probs(DiscreteJointDistribution::table_size(sizes), 0.0);
  probs.front() = 0.5;
  probs.back() = 0.5;
  return DiscreteJointDistribution(std::move(sizes), std::move(probs));
}

DiscreteJointDistribution make_xor_gate(int n) {
  if (n < 3) {
    throw std::invalid_argument("make_xor_gate: need n >= 3, got " + std::to_string(n));
  }
  std::vector<int> sizes(n, 2);
  std::vector<double> probs(DiscreteJointDistribution::table_size(sizes), 0.0);
  const double mass = std::ldexp(1.0, -(n - 1));
  for (std::size_t s = 0; s < probs.size(); ++s) {
    if (std::popcount(s) % 2 == 0) probs[s] = mass;
  }
  return DiscreteJointDistribution(std::move(sizes), std::move(probs));
}

DiscreteJointDistribution product(const DiscreteJointDistribution& a, const DiscreteJointDistribution& b) {
  std::vector<int> sizes = a.alphabet_sizes();
  sizes.insert(sizes.end(), b.alphabet_sizes().begin(), b.alphabet_sizes().end());
  std::vector<double> probs;
  probs.reserve(DiscreteJointDistribution::table_size(sizes));
  for (double pa : a.probs()) {
    for (double pb : b.probs()) probs.push_back(pa * pb);
  }
  return DiscreteJointDistribution(std::move(sizes), std::move(probs));
}

std::vector<int> infer_alphabet_sizes(const DataMatrix& data) {
  std::vector<int> sizes(data.n_vars(), 1);
  const auto& x = data.values();
  for (int j = 0; j < data.n_vars(); ++j) {
    for (int r = 0; r < data.n_obs(); ++r) {
      const double v = x(r, j);
      if (v < 0 || v != std::floor(v) || v > std::numeric_limits<int>::max() - 1) {
        throw std::invalid_argument("column '" + data.name(j) + "' is not integer-coded (row " +
                                    std::to_string(r) + ")");
      }
      sizes[j] = std::max(sizes[j], static_cast<int>(v) + 1);
    }
  }
  return sizes;
}

DiscreteJointDistribution empirical_distribution(const DataMatrix& data,
                                                 std::vector<int> alphabet_sizes) {
  if (static_cast<int>(alphabet_sizes.size()) != data.n_vars()) {
    throw std::invalid_argument("empirical_distribution: alphabet/column count mismatch");
  }
  std::vector<double> counts(DiscreteJointDistribution::table_size(alphabet_sizes), 0.0);
  const auto& x = data.values();
  for (int r = 0; r < data.n_obs(); ++r) {
    std::size_t state = 0;
    for (int j = 0; j < data.n_vars(); ++j) {
      const double v = x(r, j);
      if (v < 0 || v >= alphabet_sizes[j] || v != std::floor(v)) {
        throw std::invalid_argument("column '" + data.name(j) + "' value out of alphabet at row " +
                                    std::to_string(r));
      }
      state = state * static_cast<std::size_t>(alphabet_sizes[j]) + static_cast<std::size_t>(v);
    }
    counts[state] += 1.0;
  }
  const double n = static_cast<double>(data.n_obs());
  for (double& c : counts) c /= n;
  return DiscreteJointDistribution(std::move(alphabet_sizes), std::move(counts));
}

void dump_table(const DiscreteJointDistribution& dist, std::ostream& out) {
  const auto& sizes = dist.alphabet_sizes();
  if (*std::max_element(sizes.begin(), sizes.end()) > 36) {
    throw std::invalid_argument("dump_table: alphabets larger than 36 have no single-digit encoding");
  }
  out << "# alphabet_sizes";
  for (int a : sizes) out << ' ' << a;
  out << '\n';
  char buf[32];
  for (std::size_t s = 0; s < dist.num_states(); ++s) {
    const double p = dist.mass(s);
    if (p == 0.0) continue;
    for (int d : dist.decode(s)) out << kDigits[d];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    out << ' ' << buf << '\n';
  }
}

DiscreteJointDistribution load_table(std::istream& in) {
  std::string line;
  std::vector<int> sizes;
  std::map<std::size_t, double> masses;
  std::size_t total = 0;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (line[0] == '#') {
      std::string tag, key;
      fields >> tag >> key;
      if (key == "alphabet_sizes") {
        int a;
        while (fields >> a) sizes.push_back(a);
        total = DiscreteJointDistribution::table_size(sizes);
      }
      continue;
    }
    if (sizes.empty()) {
      throw std::invalid_argument("load_table: missing '# alphabet_sizes' header before line " +
                                  std::to_string(line_no));
    }
    std::string state;
    double p;
    if (!(fields >> state >> p) || state.size() != sizes.size()) {
      throw std::invalid_argument("load_table: malformed line " + std::to_string(line_no));
    }
    std::size_t index = 0;
    for (std::size_t v = 0; v < sizes.size(); ++v) {
      const int d = digit_value(state[v]);
      if (d < 0 || d >= sizes[v]) {
        throw std::invalid_argument("load_table: bad digit on line " + std::to_string(line_no));
      }
      index = index * static_cast<std::size_t>(sizes[v]) + static_cast<std::size_t>(d);
    }
    if (!masses.emplace(index, p).second) {
      throw std::invalid_argument("load_table: duplicate state on line " + std::to_string(line_no));
    }
  }
  if (sizes.empty()) throw std::invalid_argument("load_table: missing '# alphabet_sizes' header");
  std::vector<double> probs(total, 0.0);
  for (auto [index, p] : masses) probs[index] = p;
  return DiscreteJointDistribution(std::move(sizes), std::move(probs));
}

}  // namespace hoi
