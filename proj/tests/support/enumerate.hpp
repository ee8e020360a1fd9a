#pragma once

#include <cstdint>
#include <vector>

namespace enumerate {

// Calls f(values) for every point of the cartesian product, last position
// fastest. Stops early when f returns false.
template <class F>
void product(const std::vector<std::vector<int64_t>>& domains, F&& f) {
  size_t n = domains.size();
  for (const auto& d : domains)
    if (d.empty()) return;
  std::vector<size_t> idx(n, 0);
  std::vector<int64_t> vals(n);
  for (size_t i = 0; i < n; ++i) vals[i] = domains[i][0];
  while (true) {
    if (!f(vals)) return;
    size_t i = n;
    while (i > 0) {
      --i;
      if (++idx[i] < domains[i].size()) {
        vals[i] = domains[i][idx[i]];
        break;
      }
      idx[i] = 0;
      vals[i] = domains[i][0];
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace enumerate
