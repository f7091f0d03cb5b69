#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ranktest/ci.hpp"
#include "ranktest/errors.hpp"
#include "ranktest/permutation.hpp"
#include "ranktest/poset.hpp"

namespace ranktest {

// Wall between the cones of delta and delta with positions k,k+1 swapped
// (k is 1-based, 1..n-1): statement delta_k _|_ delta_{k+1} | prefix.
inline CIStatement wall_label(const std::vector<int>& delta, int k) {
  int n = static_cast<int>(delta.size());
  if (k < 1 || k >= n) throw InvalidSpec("wall position out of range");
  Subset K = 0;
  for (int t = 0; t < k - 1; ++t) K = with_element(K, delta[t]);
  return CIStatement(delta[k - 1], delta[k], K);
}

inline CIStatement wall_label(const Permutation& p, int k) {
  return wall_label(p.descent_vector(), k);
}

// All walls carrying a given label, each unordered wall once (the smaller of
// i,j first in the descent vector). There are |K|! (n-|K|-2)! of them.
inline std::vector<std::pair<Permutation, int>> walls_with_label(
    const CIStatement& s, int n) {
  if (s.j >= n || (s.cond & ~full_set(n)))
    throw InvalidSpec("statement out of range for ground set");
  std::vector<int> prefix = set_elements(s.cond);
  Subset rest_mask = full_set(n) & ~s.cond;
  rest_mask = without_element(without_element(rest_mask, s.i), s.j);
  std::vector<int> suffix = set_elements(rest_mask);
  int k = static_cast<int>(prefix.size()) + 1;

  std::vector<std::pair<Permutation, int>> out;
  std::sort(prefix.begin(), prefix.end());
  do {
    std::vector<int> suf = suffix;
    do {
      std::vector<int> delta = prefix;
      delta.push_back(s.i);
      delta.push_back(s.j);
      delta.insert(delta.end(), suf.begin(), suf.end());
      out.emplace_back(Permutation::from_descent(delta), k);
    } while (std::next_permutation(suf.begin(), suf.end()));
  } while (std::next_permutation(prefix.begin(), prefix.end()));
  return out;
}

namespace detail {

struct UnionFind {
  explicit UnionFind(long n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0L);
  }
  long find(long x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(long a, long b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<long> parent;
};

// Visits each unordered wall once as (delta, k, id, id'), where the ids are
// Lehmer indices of the two endpoint permutations.
template <class F>
void for_each_wall(int n, F&& visit) {
  std::vector<int> delta(n);
  std::iota(delta.begin(), delta.end(), 0);
  do {
    std::vector<int> rank(n);
    for (int t = 0; t < n; ++t) rank[delta[t]] = n - 1 - t;
    long id = Permutation(rank).lehmer_index();
    for (int k = 1; k < n; ++k) {
      if (delta[k - 1] > delta[k]) continue;  // count each wall once
      std::swap(rank[delta[k - 1]], rank[delta[k]]);
      long other = Permutation(rank).lehmer_index();
      std::swap(rank[delta[k - 1]], rank[delta[k]]);
      visit(delta, k, id, other);
    }
  } while (std::next_permutation(delta.begin(), delta.end()));
}

}  // namespace detail

// A partition of S_n into nonempty classes. Classes hold members ascending by
// Lehmer index and are ordered by their first member, so equal partitions
// compare equal member-wise.
struct RankTestPartition {
  int n = 0;
  std::vector<std::vector<Permutation>> classes;
  std::vector<int> class_of;  // Lehmer index -> class id

  static RankTestPartition from_classes(int n,
                                        std::vector<std::vector<Permutation>> cs) {
    if (n > 10)
      throw GroundSetTooLarge("explicit partitions of S_n limited to n <= 10");
    RankTestPartition t;
    t.n = n;
    long nf = factorial_long(n);
    t.class_of.assign(nf, -1);
    for (auto& c : cs) {
      if (c.empty()) throw InvalidSpec("empty class in partition");
      std::sort(c.begin(), c.end(), [](const Permutation& a, const Permutation& b) {
        return a.lehmer_index() < b.lehmer_index();
      });
    }
    std::sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) {
      return a.front().lehmer_index() < b.front().lehmer_index();
    });
    t.classes = std::move(cs);
    for (std::size_t c = 0; c < t.classes.size(); ++c)
      for (const Permutation& p : t.classes[c]) {
        if (p.size() != n) throw InvalidSpec("mixed ground sets in partition");
        long id = p.lehmer_index();
        if (t.class_of[id] != -1)
          throw CoverageFailure("permutation " + p.rank_string() +
                                " appears in two classes");
        t.class_of[id] = static_cast<int>(c);
      }
    for (long id = 0; id < nf; ++id)
      if (t.class_of[id] == -1)
        throw CoverageFailure(
            "partition misses permutation " +
            Permutation::from_lehmer_index(n, id).rank_string());
    return t;
  }

  int class_index(const Permutation& p) const {
    return class_of[p.lehmer_index()];
  }

  std::size_t class_count() const { return classes.size(); }

  bool operator==(const RankTestPartition& o) const {
    return n == o.n && class_of == o.class_of;
  }
};

// Components of the permutohedron edge graph after keeping exactly the edges
// whose wall label lies in M.
inline RankTestPartition partition_from_model(const CIModel& M,
                                              int bound = kBruteForceBound) {
  if (!is_semigraphoid(M))
    throw NotASemigraphoid("model fails the exchange axiom; close it first");
  int n = M.n;
  if (n > bound)
    throw GroundSetTooLarge("permutohedron walk limited to n <= " +
                            std::to_string(bound));
  long nf = factorial_long(n);
  detail::UnionFind uf(nf);
  detail::for_each_wall(n, [&](const std::vector<int>& delta, int k, long a, long b) {
    CIStatement s = wall_label(delta, k);
    if (M.statements.count(s)) uf.unite(a, b);
  });
  std::map<long, std::vector<Permutation>> groups;
  for (long id = 0; id < nf; ++id)
    groups[uf.find(id)].push_back(Permutation::from_lehmer_index(n, id));
  std::vector<std::vector<Permutation>> classes;
  classes.reserve(groups.size());
  for (auto& [root, members] : groups) classes.push_back(std::move(members));
  return RankTestPartition::from_classes(n, std::move(classes));
}

// Labels of all walls joining same-class endpoints.
inline CIModel model_from_partition(const RankTestPartition& t) {
  CIModel M(t.n);
  detail::for_each_wall(t.n, [&](const std::vector<int>& delta, int k, long a, long b) {
    if (t.class_of[a] == t.class_of[b]) M.insert(wall_label(delta, k));
  });
  return M;
}

// Axiom (PC): each class equals the set of linear extensions of the
// intersection of its members. The inclusion C subset L(P) always holds, so
// it suffices to compare cardinalities.
inline bool is_preconvex(const RankTestPartition& t,
                         int bound = kBruteForceBound) {
  if (t.n > bound)
    throw GroundSetTooLarge("pre-convexity check limited to n <= " +
                            std::to_string(bound));
  for (const auto& c : t.classes) {
    Poset P = intersect_permutations(c);
    if (count_linear_extensions(P) != static_cast<long>(c.size())) return false;
  }
  return true;
}

// A partition is convex iff its missing-wall model is a semigraphoid, the
// model's labels are consistent across walls, and walking the model
// reproduces the partition.
inline bool is_convex(const RankTestPartition& t, int bound = kBruteForceBound) {
  if (t.n > bound)
    throw GroundSetTooLarge("convexity check limited to n <= " +
                            std::to_string(bound));
  CIModel M = model_from_partition(t);
  if (!is_semigraphoid(M)) return false;
  bool consistent = true;
  detail::for_each_wall(t.n, [&](const std::vector<int>& delta, int k, long a, long b) {
    if (!consistent) return;
    if (M.statements.count(wall_label(delta, k)) &&
        t.class_of[a] != t.class_of[b])
      consistent = false;
  });
  if (!consistent) return false;
  return partition_from_model(M, bound) == t;
}

}  // namespace ranktest
