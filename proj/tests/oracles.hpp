#pragma once

// Brute-force reference computations used only by the tests. Nothing here
// calls into the library: vectors are plain digit arrays, subspaces are the
// explicit sets of their members, and all fields are prime (mod p).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

using Digits = std::vector<unsigned>;

inline Digits digits_of(std::uint64_t index, unsigned q, unsigned n) {
  Digits d(n);
  for (unsigned i = n; i-- > 0;) {
    d[i] = static_cast<unsigned>(index % q);
    index /= q;
  }
  return d;
}

inline std::uint64_t index_of(const Digits& d, unsigned q) {
  std::uint64_t v = 0;
  for (unsigned x : d) v = v * q + x;
  return v;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline unsigned hamming(const Digits& a, const Digits& b) {
  unsigned c = 0;
  for (size_t i = 0; i < a.size(); ++i) c += a[i] != b[i] ? 1 : 0;
  return c;
}

/// Pascal-triangle binomial in 64 bits.
inline std::uint64_t binom64(unsigned m, int l) {
  if (l < 0 || static_cast<unsigned>(l) > m) return 0;
  std::vector<std::uint64_t> row(m + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= m; ++i)
    for (unsigned j = i; j > 0; --j) row[j] += row[j - 1];
  return row[static_cast<unsigned>(l)];
}

/// Calls visit(subset) for every S-subset of {0..m-1}, lexicographically.
inline void for_each_subset(unsigned m, unsigned S, const std::function<void(const std::vector<unsigned>&)>& visit) {
  std::vector<unsigned> c(S);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned start) {
    if (pos == S) {
      visit(c);
      return;
    }
    for (unsigned v = start; v + (S - pos) <= m; ++v) {
      c[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 0);
}

/// Subspace of F_p^n as the sorted indices of all of its vectors.
using PointSet = std::vector<std::uint64_t>;

/// Span of the given rows over the prime field F_p.
inline PointSet span(const std::vector<Digits>& rows, unsigned p, unsigned n) {
  std::set<std::uint64_t> pts;
  const unsigned k = static_cast<unsigned>(rows.size());
  for (std::uint64_t coeffs = 0; coeffs < ipow(p, k); ++coeffs) {
    Digits c = digits_of(coeffs, p, k);
    Digits v(n, 0);
    for (unsigned r = 0; r < k; ++r)
      for (unsigned i = 0; i < n; ++i) v[i] = (v[i] + c[r] * rows[r][i]) % p;
    pts.insert(index_of(v, p));
  }
  return PointSet(pts.begin(), pts.end());
}

/// All k-dimensional subspaces of F_p^n, each found as the span of some k-tuple of vectors.
inline std::vector<PointSet> grassmannian(unsigned p, unsigned k, unsigned n) {
  std::set<PointSet> found;
  const std::uint64_t total = ipow(p, n);
  const std::uint64_t target = ipow(p, k);
  std::vector<std::uint64_t> pick(k, 0);
  std::function<void(unsigned)> rec = [&](unsigned pos) {
    if (pos == k) {
      std::vector<Digits> rows;
      for (auto idx : pick) rows.push_back(digits_of(idx, p, n));
      PointSet s = span(rows, p, n);
      if (s.size() == target) found.insert(std::move(s));
      return;
    }
    for (std::uint64_t v = 1; v < total; ++v) {
      pick[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  return std::vector<PointSet>(found.begin(), found.end());
}

/// dim(X cap Y) from the size of the intersection of the point sets.
inline unsigned intersection_dimension(const PointSet& x, const PointSet& y, unsigned p) {
  std::vector<std::uint64_t> common;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
  unsigned dim = 0;
  std::uint64_t size = 1;
  while (size < common.size()) {
    size *= p;
    ++dim;
  }
  return dim;
}

/// Number of size-S collections of pairwise trivially-intersecting subspaces (backtracking).
inline std::uint64_t count_partial_spreads(const std::vector<PointSet>& subspaces, unsigned S) {
  std::uint64_t count = 0;
  std::vector<size_t> chosen;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (chosen.size() == S) {
      ++count;
      return;
    }
    for (size_t i = start; i < subspaces.size(); ++i) {
      bool ok = true;
      for (size_t c : chosen) {
        std::vector<std::uint64_t> common;
        std::set_intersection(subspaces[c].begin(), subspaces[c].end(), subspaces[i].begin(), subspaces[i].end(),
                              std::back_inserter(common));
        if (common.size() > 1) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return count;
}

/// Exact Hamming density numerator: S-subsets of F_q^n with all pairwise distances >= d.
inline std::uint64_t count_good_codes(unsigned q, unsigned n, unsigned d, unsigned S) {
  const auto m = static_cast<unsigned>(ipow(q, n));
  std::vector<Digits> vs;
  for (unsigned i = 0; i < m; ++i) vs.push_back(digits_of(i, q, n));
  std::uint64_t good = 0;
  for_each_subset(m, S, [&](const std::vector<unsigned>& c) {
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = i + 1; j < c.size(); ++j)
        if (hamming(vs[c[i]], vs[c[j]]) < d) return;
    ++good;
  });
  return good;
}

/// Chi-square statistic of observed counts against a uniform expectation.
inline double chi_square_uniform(const std::vector<std::uint64_t>& observed) {
  double total = 0;
  for (auto o : observed) total += static_cast<double>(o);
  const double expected = total / static_cast<double>(observed.size());
  double chi = 0;
  for (auto o : observed) chi += (static_cast<double>(o) - expected) * (static_cast<double>(o) - expected) / expected;
  return chi;
}

}  // namespace oracle
