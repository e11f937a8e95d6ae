#include "hoi/subset_mask.hpp"

namespace hoi {

std::vector<SubsetMask> combinations(int n, int k) {
  if (n < 0 || n > SubsetMask::kMaxVars || k < 0 || k > n) {
    throw std::invalid_argument("combinations: need 0 <= k <= n <= 64, got n=" +
                                std::to_string(n) + " k=" + std::to_string(k));
  }
  std::vector<SubsetMask> out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    SubsetMask m;
    for (int i : idx) m = m.with(i);
    out.push_back(m);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

}  // namespace hoi
