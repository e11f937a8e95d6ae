#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hoi/data_matrix.hpp"
#include "hoi/subset_mask.hpp"

namespace hoi {

/// Exact joint probability mass function over a finite product alphabet.
///
/// States are encoded mixed-radix, row-major, with variable 0 as the most
/// significant digit: for alphabet sizes (a0, a1, a2) the state (d0, d1, d2)
/// lives at index d0*a1*a2 + d1*a2 + d2. Values are immutable after
/// construction.
class DiscreteJointDistribution {
 public:
  static constexpr std::size_t kDefaultMaxStates = std::size_t{1} << 24;
  static constexpr double kNormTolerance = 1e-12;

  /// Throws std::invalid_argument if a mass is negative or non-finite, if
  /// the masses do not sum to 1 within kNormTolerance, if the table length
  /// does not match the alphabet, or if the table exceeds max_states.
  DiscreteJointDistribution(std::vector<int> alphabet_sizes, std::vector<double> probs,
                            std::size_t max_states = kDefaultMaxStates);

  int n_vars() const { return static_cast<int>(alphabet_sizes_.size()); }
  const std::vector<int>& alphabet_sizes() const { return alphabet_sizes_; }
  std::span<const double> probs() const { return probs_; }
  std::size_t num_states() const { return probs_.size(); }
  double mass(std::size_t state) const { return probs_.at(state); }

  /// log2 of the largest alphabet cardinality.
  double max_alphabet_log2() const;

  std::size_t encode(std::span<const int> digits) const;
  std::vector<int> decode(std::size_t state) const;

  /// Number of states of a table with these alphabet sizes; throws if it
  /// would exceed max_states.
  static std::size_t table_size(std::span<const int> alphabet_sizes,
                                std::size_t max_states = kDefaultMaxStates);

 private:
  std::vector<int> alphabet_sizes_;
  std::vector<double> probs_;
};

/// Marginal over the variables in keep, in increasing index order.
/// Throws std::invalid_argument on an empty or out-of-range mask.
DiscreteJointDistribution marginalize(const DiscreteJointDistribution& dist, SubsetMask keep);

/// Plug-in Shannon entropy in bits of the marginal on subset (0 log 0 = 0).
double entropy(const DiscreteJointDistribution& dist, SubsetMask subset);

/// -sum p log2 p over a mass vector.
double entropy_bits(std::span<const double> masses);

/// X1 ~ Bernoulli(1/2), X1 = X2 = ... = Xn.
DiscreteJointDistribution make_copy_gate(int n);

/// X1..X(n-1) i.i.d. fair bits, Xn their parity.
DiscreteJointDistribution make_xor_gate(int n);

/// Joint distribution of two independent blocks: variables of a come first.
DiscreteJointDistribution product(const DiscreteJointDistribution& a, const DiscreteJointDistribution& b);

/// Alphabet sizes (max + 1 per column) of an integer-coded data matrix.
/// Throws if a value is negative or not an integer.
std::vector<int> infer_alphabet_sizes(const DataMatrix& data);

/// Maximum-likelihood (plug-in) distribution of the rows of an integer-coded
/// data matrix. No bias correction is applied.
DiscreteJointDistribution empirical_distribution(const DataMatrix& data,
                                                 std::vector<int> alphabet_sizes);

/// Two-column text table:
///
///     # alphabet_sizes 2 2 2
///     000 0.5
///     111 0.5
///
/// One digit per variable (0-9 then a-z, so alphabets up to 36); masses
/// printed with 17 significant digits so a dump/load round-trip is exact.
/// Zero-mass states are omitted on dump and default to 0 on load.
void dump_table(const DiscreteJointDistribution& dist, std::ostream& out);
DiscreteJointDistribution load_table(std::istream& in);

}  // namespace hoi
