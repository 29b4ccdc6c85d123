#pragma once

#include <vector>

namespace oda::detail {

// Calls f(idx) for every k-subset of {0..n-1} in lexicographic order; stops early if f returns false.
template <class F>
bool for_each_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return true;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!f(static_cast<const std::vector<int>&>(idx))) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace oda::detail
