#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ranktest/errors.hpp"
#include "ranktest/graph.hpp"
#include "ranktest/numbers.hpp"
#include "ranktest/permutation.hpp"
#include "ranktest/poset.hpp"

namespace ranktest {

// Rooted forest on {0,...,n-1}; the signature of a graphical test. Each
// node's descendant set (node included) induces a connected subgraph of the
// underlying graph.
struct GTree {
  int n = 0;
  std::vector<int> parent;  // -1 for roots

  static GTree from_parents(int n, std::vector<int> par) {
    GTree t;
    t.n = n;
    t.parent = std::move(par);
    if (static_cast<int>(t.parent.size()) != n)
      throw InvalidSpec("parent vector size mismatch");
    for (int v = 0; v < n; ++v) {
      int steps = 0, u = v;
      while (u != -1) {
        u = t.parent[u];
        if (++steps > n) throw InvalidSpec("parent vector has a cycle");
      }
    }
    return t;
  }

  std::vector<int> roots() const {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
      if (parent[v] == -1) out.push_back(v);
    return out;
  }

  std::vector<std::vector<int>> children() const {
    std::vector<std::vector<int>> ch(n);
    for (int v = 0; v < n; ++v)
      if (parent[v] != -1) ch[parent[v]].push_back(v);
    return ch;
  }

  // Descendant sets, node included.
  std::vector<Subset> subtrees() const {
    std::vector<Subset> sub(n, 0);
    std::vector<std::vector<int>> ch = children();
    auto fill = [&](auto&& self, int v) -> Subset {
      Subset s = with_element(0, v);
      for (int c : ch[v]) s |= self(self, c);
      return sub[v] = s;
    };
    for (int r : roots()) fill(fill, r);
    return sub;
  }

  // Canonical serialization: children (and roots) ordered by least
  // descendant, labels 1-based, e.g. "3(1(2),4)" or "1;2;3" for a forest.
  std::string token() const {
    std::vector<Subset> sub = subtrees();
    std::vector<std::vector<int>> ch = children();
    auto order = [&](std::vector<int>& nodes) {
      std::sort(nodes.begin(), nodes.end(), [&](int a, int b) {
        return lowest_element(sub[a]) < lowest_element(sub[b]);
      });
    };
    auto emit = [&](auto&& self, int v) -> std::string {
      std::string out = std::to_string(v + 1);
      std::vector<int> kids = ch[v];
      if (!kids.empty()) {
        order(kids);
        out += '(';
        for (std::size_t t = 0; t < kids.size(); ++t) {
          if (t) out += ',';
          out += self(self, kids[t]);
        }
        out += ')';
      }
      return out;
    };
    std::vector<int> rs = roots();
    order(rs);
    std::string out;
    for (std::size_t t = 0; t < rs.size(); ++t) {
      if (t) out += ';';
      out += emit(emit, rs[t]);
    }
    return out;
  }

  bool operator==(const GTree&) const = default;
  bool operator<(const GTree& o) const { return parent < o.parent; }
};

// Recursive signature: the root of a vertex set is its maximum-rank element,
// children recurse on the connected components left after removing it. A
// disconnected graph yields a forest with one root per component.
inline GTree g_tree(const Graph& g, const Permutation& p) {
  if (g.n != p.size())
    throw InvalidSpec("graph and permutation sizes differ");
  std::vector<int> parent(g.n, -1);
  auto build = [&](auto&& self, Subset S, int above) -> void {
    int root = -1;
    for (int e : set_elements(S))
      if (root == -1 || p.rank(e) > p.rank(root)) root = e;
    parent[root] = above;
    for (Subset comp : g.components(without_element(S, root)))
      self(self, comp, root);
  };
  for (Subset comp : g.components(full_set(g.n))) build(build, comp, -1);
  return GTree::from_parents(g.n, std::move(parent));
}

// The tubing test is the reverse-rank conjugate of the graphical test.
inline GTree tubing_signature(const Graph& g, const Permutation& p) {
  return g_tree(g, p.reversed());
}

// Number of permutations with this signature. At each node the children's
// subtrees interleave freely: multinomial over their sizes, times the
// children's own counts; roots of a forest interleave the same way.
inline BigInt gtree_class_size(const GTree& t) {
  std::vector<Subset> sub = t.subtrees();
  std::vector<std::vector<int>> ch = t.children();
  auto count = [&](auto&& self, int v) -> BigInt {
    BigInt prod = 1;
    std::vector<long> sizes;
    for (int c : ch[v]) {
      sizes.push_back(set_size(sub[c]));
      prod *= self(self, c);
    }
    return multinomial(sizes) * prod;
  };
  BigInt prod = 1;
  std::vector<long> sizes;
  for (int r : t.roots()) {
    sizes.push_back(set_size(sub[r]));
    prod *= count(count, r);
  }
  return multinomial(sizes) * prod;
}

// Descendants sit below their ancestors; the class of a signature is exactly
// the linear extensions of this forest order.
inline Poset gtree_poset(const GTree& t) {
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < t.n; ++v)
    if (t.parent[v] != -1) pairs.emplace_back(v, t.parent[v]);
  return Poset::from_pairs(t.n, pairs);
}

// Checks the descendant-connectivity invariant against a graph.
inline bool gtree_valid_for(const GTree& t, const Graph& g) {
  if (t.n != g.n) return false;
  for (Subset s : t.subtrees())
    if (!g.connected_in(s)) return false;
  return true;
}

// The tubes of the maximal tubing matching a signature: every subtree short
// of the whole ground set.
inline std::vector<Subset> gtree_tubing(const GTree& t) {
  std::vector<Subset> out;
  for (Subset s : t.subtrees())
    if (s != full_set(t.n)) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

// Number of classes of the tubing test; closed forms for recognized shapes,
// signature enumeration otherwise.
inline BigInt class_count(const Graph& g, int bound = kBruteForceBound) {
  if (is_path_graph(g)) return catalan(g.n);
  if (is_cycle_graph(g)) return binomial(2 * g.n - 2, g.n - 1);
  if (is_complete_graph(g)) return factorial(g.n);
  if (g.n > bound)
    throw GroundSetTooLarge("class count for general graphs limited to n <= " +
                            std::to_string(bound));
  std::map<std::vector<int>, long> seen;
  for_each_permutation(g.n, [&](const Permutation& p) {
    ++seen[tubing_signature(g, p).parent];
  });
  return BigInt(static_cast<long>(seen.size()));
}

}  // namespace ranktest
