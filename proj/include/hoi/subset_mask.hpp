#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace hoi {

/// Set of variable indices packed into a 64-bit word. Bit k set means
/// variable k belongs to the subset.
class SubsetMask {
 public:
  static constexpr int kMaxVars = 64;

  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint64_t bits) : bits_(bits) {}
  SubsetMask(std::initializer_list<int> indices) {
    for (int i : indices) *this = with(i);
  }

  /// {0, 1, ..., n-1}
  static SubsetMask all(int n) {
    check_index_range(n, kMaxVars + 1);
    return SubsetMask(n == kMaxVars ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << n) - 1);
  }
  static SubsetMask single(int i) { return SubsetMask{}.with(i); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }

  bool contains(int i) const {
    return i >= 0 && i < kMaxVars && ((bits_ >> i) & 1U) != 0;
  }
  constexpr bool is_subset_of(SubsetMask other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  /// True when every member is < n_vars.
  bool valid_for(int n_vars) const {
    return n_vars >= kMaxVars || (bits_ >> n_vars) == 0;
  }

  SubsetMask with(int i) const {
    check_index_range(i, kMaxVars);
    return SubsetMask(bits_ | (std::uint64_t{1} << i));
  }
  SubsetMask without(int i) const {
    check_index_range(i, kMaxVars);
    return SubsetMask(bits_ & ~(std::uint64_t{1} << i));
  }

  constexpr SubsetMask operator|(SubsetMask o) const { return SubsetMask(bits_ | o.bits_); }
  constexpr SubsetMask operator&(SubsetMask o) const { return SubsetMask(bits_ & o.bits_); }
  /// Set difference.
  constexpr SubsetMask operator-(SubsetMask o) const { return SubsetMask(bits_ & ~o.bits_); }
  constexpr bool operator==(const SubsetMask&) const = default;

  /// Members in increasing order.
  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  /// Calls fn(alpha) for every alpha ⊆ *this, including the empty set and
  /// *this itself. Enumeration order is decreasing in the bit pattern.
  template <typename Fn>
  void for_each_subset(Fn&& fn) const {
    std::uint64_t s = bits_;
    while (true) {
      fn(SubsetMask(s));
      if (s == 0) break;
      s = (s - 1) & bits_;
    }
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int m : members()) {
      if (!first) out += ",";
      out += std::to_string(m);
      first = false;
    }
    return out + "}";
  }

 private:
  static void check_index_range(int i, int limit) {
    if (i < 0 || i >= limit) {
      throw std::out_of_range("variable index " + std::to_string(i) +
                              " outside supported range [0, " +
                              std::to_string(limit) + ")");
    }
  }

  std::uint64_t bits_ = 0;
};

/// All k-element subsets of {0..n-1}, in lexicographic order of members.
std::vector<SubsetMask> combinations(int n, int k);

}  // namespace hoi

template <>
struct std::hash<hoi::SubsetMask> {
  std::size_t operator()(hoi::SubsetMask m) const noexcept {
    return std::hash<std::uint64_t>{}(m.bits());
  }
};
