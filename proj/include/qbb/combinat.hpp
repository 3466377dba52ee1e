#pragma once

#include <algorithm>
#include <vector>

namespace qbb {

using Parts = std::vector<int>;

inline int size_of(const Parts& c) {
  int s = 0;
  for (int x : c) s += x;
  return s;
}

inline int multiplicity(const Parts& c, int l) {
  return static_cast<int>(std::count(c.begin(), c.end(), l));
}

// All compositions of n in lexicographic order: (1,1), (2) for n = 2.
inline std::vector<Parts> compositions(int n) {
  std::vector<Parts> out;
  if (n == 0) return {Parts{}};
  for (int first = 1; first <= n; ++first)
    for (auto& rest : compositions(n - first)) {
      Parts c{first};
      c.insert(c.end(), rest.begin(), rest.end());
      out.push_back(std::move(c));
    }
  return out;
}

namespace detail {
inline void partitions_rec(int n, int max_part, Parts& cur, std::vector<Parts>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = 1; p <= std::min(n, max_part); ++p) {
    cur.push_back(p);
    partitions_rec(n - p, p, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

// Partitions of n with parts in non-increasing order, listed lexicographically.
inline std::vector<Parts> partitions(int n) {
  std::vector<Parts> out;
  Parts cur;
  detail::partitions_rec(n, n, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline long factorial(int n) {
  long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace qbb
