#pragma once

#include <vector>

namespace iglp {

// Multi-index k in N^n. Entries are non-negative; degree is k_1 + ... + k_n.
using MultiIndex = std::vector<int>;

int degree(const MultiIndex& k);

// Component-wise partial order s <= r.
bool multiindex_leq(const MultiIndex& s, const MultiIndex& r);

// All s with 0 <= s_i <= bound_i, lexicographic (leftmost entry most
// significant). prod(bound_i + 1) elements.
std::vector<MultiIndex> multiindex_range(const MultiIndex& bound);

// All r in N^n with |r| = total, lexicographic.
std::vector<MultiIndex> multiindices_of_degree(int n, int total);

// All k in N^n with |k| <= max_degree, lexicographic.
std::vector<MultiIndex> multiindices_up_to_degree(int n, int max_degree);

}  // namespace iglp
