#include "iglp/multiindex.hpp"

#include <numeric>

namespace iglp {

int degree(const MultiIndex& k) {
  return std::accumulate(k.begin(), k.end(), 0);
}

bool multiindex_leq(const MultiIndex& s, const MultiIndex& r) {
  if (s.size() != r.size()) return false;
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i] > r[i]) return false;
  return true;
}

std::vector<MultiIndex> multiindex_range(const MultiIndex& bound) {
  std::vector<MultiIndex> out;
  size_t n = bound.size();
  size_t count = 1;
  for (int b : bound) count *= static_cast<size_t>(b) + 1;
  out.reserve(count);
  if (n == 0) return {MultiIndex{}};
  MultiIndex cur(n, 0);
  while (true) {
    out.push_back(cur);
    // odometer increment, rightmost fastest
    int i = static_cast<int>(n) - 1;
    for (; i >= 0; --i) {
      if (cur[i] < bound[i]) {
        ++cur[i];
        for (size_t j = i + 1; j < n; ++j) cur[j] = 0;
        break;
      }
    }
    if (i < 0) break;
  }
  return out;
}

static void collect_degree(int n, int pos, int remaining, MultiIndex& cur,
                           std::vector<MultiIndex>& out) {
  if (pos == n - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[pos] = v;
    collect_degree(n, pos + 1, remaining - v, cur, out);
  }
}

std::vector<MultiIndex> multiindices_of_degree(int n, int total) {
  std::vector<MultiIndex> out;
  if (n <= 0) return out;
  MultiIndex cur(n, 0);
  collect_degree(n, 0, total, cur, out);
  return out;
}

std::vector<MultiIndex> multiindices_up_to_degree(int n, int max_degree) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= max_degree; ++d) {
    auto layer = multiindices_of_degree(n, d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace iglp
