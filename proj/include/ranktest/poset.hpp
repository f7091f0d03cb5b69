#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ranktest/errors.hpp"
#include "ranktest/numbers.hpp"
#include "ranktest/permutation.hpp"
#include "ranktest/subset.hpp"

namespace ranktest {

inline constexpr int kBruteForceBound = 8;
inline constexpr int kExtensionScanBound = 9;
inline constexpr std::size_t kLatticeCap = 10'000'000;

// A partial order on {0,...,n-1}, stored transitively closed as masks:
// above(a) = {b : a < b}. Irreflexivity and antisymmetry are enforced at
// construction.
class Poset {
 public:
  explicit Poset(int n) : n_(n), above_(n, 0) {
    if (n < 1 || n > kMaxGroundSet)
      throw InvalidSpec("ground set size out of range: " + std::to_string(n));
  }

  // pairs (a,b) mean a < b; the relation is closed transitively.
  static Poset from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    Poset p(n);
    for (auto [a, b] : pairs) {
      if (a < 0 || a >= n || b < 0 || b >= n)
        throw InvalidSpec("relation element out of range");
      if (a == b) throw InvalidSpec("relation is not irreflexive");
      p.above_[a] = with_element(p.above_[a], b);
    }
    p.close_transitively();
    for (int i = 0; i < n; ++i)
      if (set_contains(p.above_[i], i))
        throw InvalidSpec("relation has a cycle through element " +
                          std::to_string(i + 1));
    return p;
  }

  int size() const { return n_; }
  bool less(int a, int b) const { return set_contains(above_[a], b); }
  Subset above(int a) const { return above_[a]; }

  Subset below(int b) const {
    Subset s = 0;
    for (int a = 0; a < n_; ++a)
      if (less(a, b)) s = with_element(s, a);
    return s;
  }

  std::vector<std::pair<int, int>> relation_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n_; ++a)
      for (int b : set_elements(above_[a])) out.emplace_back(a, b);
    return out;
  }

  int relation_size() const {
    int c = 0;
    for (int a = 0; a < n_; ++a) c += set_size(above_[a]);
    return c;
  }

  bool is_antichain() const { return relation_size() == 0; }

  bool operator==(const Poset&) const = default;

 private:
  void close_transitively() {
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i)
        if (set_contains(above_[i], k)) above_[i] |= above_[k];
  }

  friend Poset intersect_permutations(const std::vector<Permutation>& ps);

  int n_;
  std::vector<Subset> above_;
};

inline Poset chain_poset(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return Poset::from_pairs(n, pairs);
}

// Intersection of the pair sets; every input is a linear extension of the
// result.
inline Poset intersect_permutations(const std::vector<Permutation>& ps) {
  if (ps.empty()) throw EmptyInput("no permutations to intersect");
  int n = ps.front().size();
  Poset out(n);
  out.above_ = ps.front().above_masks();
  for (std::size_t t = 1; t < ps.size(); ++t) {
    if (ps[t].size() != n)
      throw InvalidSpec("permutations have mismatched ground sets");
    std::vector<Subset> above = ps[t].above_masks();
    for (int i = 0; i < n; ++i) out.above_[i] &= above[i];
  }
  return out;  // intersection of total orders is already closed
}

inline bool is_linear_extension(const Permutation& p, const Poset& P) {
  if (p.size() != P.size())
    throw InvalidSpec("permutation and poset have mismatched ground sets");
  std::vector<Subset> above = p.above_masks();
  for (int a = 0; a < P.size(); ++a)
    if (P.above(a) & ~above[a]) return false;
  return true;
}

// Oracle for every counting path; scans all n! permutations.
inline std::vector<Permutation> linear_extensions_bruteforce(
    const Poset& P, int bound = kExtensionScanBound) {
  if (P.size() > bound)
    throw GroundSetTooLarge("brute-force extension scan limited to n <= " +
                            std::to_string(bound));
  std::vector<Permutation> out;
  for_each_permutation(P.size(), [&](const Permutation& p) {
    if (is_linear_extension(p, P)) out.push_back(p);
  });
  return out;
}

// All order ideals of a poset, with cover edges adding one element each.
// Ideals are listed breadth-first by cardinality, ascending by mask within a
// level; covers are sorted by (lower, upper).
struct DistributiveLattice {
  int n = 0;
  std::vector<Subset> ideals;
  std::vector<std::pair<int, int>> covers;

  int bottom() const { return 0; }
  int top() const { return static_cast<int>(ideals.size()) - 1; }
};

inline DistributiveLattice ideal_lattice(const Poset& P,
                                         std::size_t cap = kLatticeCap) {
  int n = P.size();
  std::vector<Subset> below(n);
  for (int b = 0; b < n; ++b) below[b] = P.below(b);

  DistributiveLattice L;
  L.n = n;
  std::map<Subset, int> index;
  std::vector<Subset> level{0};
  L.ideals.push_back(0);
  index[0] = 0;

  while (!level.empty()) {
    std::vector<Subset> next;
    for (Subset O : level) {
      for (int x = 0; x < n; ++x) {
        if (set_contains(O, x)) continue;
        if (below[x] & ~O) continue;  // some predecessor missing
        Subset child = with_element(O, x);
        if (!index.count(child)) {
          index[child] = -1;  // placeholder until the level is sorted
          next.push_back(child);
        }
      }
    }
    std::sort(next.begin(), next.end());
    for (Subset c : next) {
      index[c] = static_cast<int>(L.ideals.size());
      L.ideals.push_back(c);
      if (L.ideals.size() > cap)
        throw LatticeTooLarge("ideal lattice exceeds cap of " +
                                  std::to_string(cap) + " ideals",
                              L.ideals.size());
    }
    for (Subset O : level) {
      int from = index[O];
      for (int x = 0; x < n; ++x) {
        if (set_contains(O, x)) continue;
        if (below[x] & ~O) continue;
        L.covers.emplace_back(from, index[with_element(O, x)]);
      }
    }
    level = std::move(next);
  }
  return L;
}

// Number of maximal chains bottom -> top, by dynamic programming over the
// cover relation; equals the number of linear extensions.
inline BigInt count_maximal_chains(const DistributiveLattice& L) {
  std::vector<BigInt> paths(L.ideals.size());
  paths[0] = 1;
  for (auto [a, b] : L.covers) paths[b] += paths[a];
  return paths[L.top()];
}

inline BigInt count_linear_extensions(const Poset& P,
                                      std::size_t cap = kLatticeCap) {
  return count_maximal_chains(ideal_lattice(P, cap));
}

// Number of permutations of [n] whose up-down pattern is exactly `signs`
// (n-1 entries, +1 for an ascent). Inclusion-exclusion over descent subsets:
// beta(S) = sum_{T subset S} (-1)^{|S\T|} * n!/prod(composition parts)!.
inline BigInt descent_class_size(const std::vector<int>& signs) {
  int n = static_cast<int>(signs.size()) + 1;
  std::vector<int> descents;  // 1-based positions with a '-'
  for (int t = 0; t < n - 1; ++t)
    if (signs[t] < 0) descents.push_back(t + 1);
  int m = static_cast<int>(descents.size());
  BigInt total = 0;
  for (Subset sub = 0; sub < (Subset{1} << m); ++sub) {
    std::vector<long> parts;
    int prev = 0;
    for (int t = 0; t < m; ++t)
      if (set_contains(sub, t)) {
        parts.push_back(descents[t] - prev);
        prev = descents[t];
      }
    parts.push_back(n - prev);
    BigInt alpha = multinomial(parts);
    if ((m - set_size(sub)) % 2 == 0)
      total += alpha;
    else
      total -= alpha;
  }
  return total;
}

// Text export: `lattice <k> nodes`, one `node <id> = {..}` line per ideal,
// one `cover <a> <b>` line per cover edge. Ids follow lattice order.
inline std::string export_lattice_text(const DistributiveLattice& L) {
  std::string out = "lattice " + std::to_string(L.ideals.size()) + " nodes\n";
  for (std::size_t i = 0; i < L.ideals.size(); ++i)
    out += "node " + std::to_string(i) + " = " + set_to_string(L.ideals[i]) + "\n";
  for (auto [a, b] : L.covers)
    out += "cover " + std::to_string(a) + " " + std::to_string(b) + "\n";
  return out;
}

}  // namespace ranktest
