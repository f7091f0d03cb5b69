#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ranktest/ci.hpp"
#include "ranktest/errors.hpp"
#include "ranktest/numbers.hpp"
#include "ranktest/submodular.hpp"
#include "ranktest/subset.hpp"

namespace ranktest {

// A simple graph on {0,...,n-1}, adjacency as masks.
struct Graph {
  int n = 0;
  std::vector<Subset> adj;

  explicit Graph(int n_) : n(n_), adj(n_, 0) {
    if (n < 1 || n > kMaxGroundSet)
      throw InvalidSpec("ground set size out of range");
  }

  void add_edge(int a, int b) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw InvalidSpec("edge endpoint out of range");
    if (a == b) throw InvalidSpec("loops are not allowed");
    adj[a] = with_element(adj[a], b);
    adj[b] = with_element(adj[b], a);
  }

  bool has_edge(int a, int b) const { return set_contains(adj[a], b); }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n; ++a)
      for (int b : set_elements(adj[a]))
        if (a < b) out.emplace_back(a, b);
    return out;
  }

  static Graph path(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
  }

  static Graph cycle(int n) {
    if (n < 3) throw InvalidSpec("cycle needs at least 3 vertices");
    Graph g = path(n);
    g.add_edge(n - 1, 0);
    return g;
  }

  static Graph complete(int n) {
    Graph g(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
  }

  static Graph edgeless(int n) { return Graph(n); }

  // "path4", "cycle5", "complete3".
  static std::optional<Graph> from_name(const std::string& name) {
    for (const char* kind : {"path", "cycle", "complete"}) {
      std::string prefix = kind;
      if (name.size() > prefix.size() && name.compare(0, prefix.size(), prefix) == 0) {
        int n;
        try {
          n = std::stoi(name.substr(prefix.size()));
        } catch (...) {
          return std::nullopt;
        }
        if (prefix == "path") return path(n);
        if (prefix == "cycle") return cycle(n);
        return complete(n);
      }
    }
    return std::nullopt;
  }

  // Component of v inside the induced subgraph on S.
  Subset component_of(int v, Subset S) const {
    Subset comp = with_element(0, v), fringe = comp;
    while (fringe) {
      int u = lowest_element(fringe);
      fringe = without_element(fringe, u);
      Subset next = adj[u] & S & ~comp;
      comp |= next;
      fringe |= next;
    }
    return comp;
  }

  bool connected_in(Subset S) const {
    if (S == 0) return false;
    return component_of(lowest_element(S), S) == S;
  }

  bool is_connected() const { return connected_in(full_set(n)); }

  // Components of the induced subgraph on S, ascending by least element.
  std::vector<Subset> components(Subset S) const {
    std::vector<Subset> out;
    while (S) {
      Subset c = component_of(lowest_element(S), S);
      out.push_back(c);
      S &= ~c;
    }
    return out;
  }
};

// All nonempty vertex sets inducing connected subgraphs (singletons included).
inline SetFamily connected_family(const Graph& g) {
  std::vector<Subset> members;
  for (Subset S = 1; S < (Subset{1} << g.n); ++S)
    if (g.connected_in(S)) members.push_back(S);
  return SetFamily(g.n, std::move(members));
}

// Separation statements: i _|_ j | C whenever removing C disconnects i from j.
inline CIModel graphical_model(const Graph& g) {
  CIModel M(g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) {
      Subset rest = full_set(g.n) & ~with_element(with_element(0, i), j);
      for_each_submask(rest, [&](Subset C) {
        Subset live = full_set(g.n) & ~C;
        if (!set_contains(g.component_of(i, live), j))
          M.insert(CIStatement(i, j, C));
      });
    }
  return M;
}

// Missing-wall model of the Minkowski sum over the family: i _|_ j | K holds
// iff no member contains {i,j} while avoiding K.
inline CIModel family_model(const SetFamily& F) {
  CIModel M(F.n);
  for (int i = 0; i < F.n; ++i)
    for (int j = i + 1; j < F.n; ++j) {
      Subset rest = full_set(F.n) & ~with_element(with_element(0, i), j);
      Subset pair = with_element(with_element(0, i), j);
      for_each_submask(rest, [&](Subset K) {
        for (Subset S : F.members)
          if ((S & pair) == pair && (S & K) == 0) return;
        M.insert(CIStatement(i, j, K));
      });
    }
  return M;
}

// A tube is a nonempty proper connected vertex set; two tubes are compatible
// when nested, or disjoint with no edge between them.
inline bool tubes_compatible(const Graph& g, Subset A, Subset B) {
  if ((A & B) == A || (A & B) == B) return true;  // nested
  if (A & B) return false;
  for (int a : set_elements(A))
    if (g.adj[a] & B) return false;
  return true;
}

inline bool is_tube(const Graph& g, Subset A) {
  return A != 0 && A != full_set(g.n) && g.connected_in(A);
}

inline bool is_tubing(const Graph& g, const std::vector<Subset>& tubes) {
  for (std::size_t a = 0; a < tubes.size(); ++a) {
    if (!is_tube(g, tubes[a])) return false;
    for (std::size_t b = a + 1; b < tubes.size(); ++b) {
      if (tubes[a] == tubes[b]) return false;
      if (!tubes_compatible(g, tubes[a], tubes[b])) return false;
    }
  }
  return true;
}

// Inclusion-maximal tubings by backtracking over the tube list.
inline std::vector<std::vector<Subset>> maximal_tubings(const Graph& g) {
  std::vector<Subset> tubes;
  for (Subset S = 1; S < (Subset{1} << g.n); ++S)
    if (is_tube(g, S)) tubes.push_back(S);

  std::vector<std::vector<Subset>> out;
  std::vector<Subset> chosen;
  auto extendable = [&](std::size_t from) {
    for (std::size_t t = from; t < tubes.size(); ++t) {
      bool ok = true;
      for (Subset c : chosen)
        if (c == tubes[t] || !tubes_compatible(g, c, tubes[t])) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  };
  auto recurse = [&](auto&& self, std::size_t from) -> void {
    bool extended = false;
    for (std::size_t t = from; t < tubes.size(); ++t) {
      bool ok = true;
      for (Subset c : chosen)
        if (!tubes_compatible(g, c, tubes[t])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      extended = true;
      chosen.push_back(tubes[t]);
      self(self, t + 1);
      chosen.pop_back();
    }
    if (!extended && !extendable(0)) out.push_back(chosen);
  };
  recurse(recurse, 0);
  return out;
}

inline BigInt catalan(int n) {
  return binomial(2 * n, n) / (n + 1);
}

inline bool is_path_graph(const Graph& g) {
  if (!g.is_connected()) return false;
  if (g.n == 1) return g.adj[0] == 0;
  int deg1 = 0;
  for (int v = 0; v < g.n; ++v) {
    int d = set_size(g.adj[v]);
    if (d == 1)
      ++deg1;
    else if (d != 2)
      return false;
  }
  return deg1 == 2;
}

inline bool is_cycle_graph(const Graph& g) {
  if (g.n < 3 || !g.is_connected()) return false;
  for (int v = 0; v < g.n; ++v)
    if (set_size(g.adj[v]) != 2) return false;
  return true;
}

inline bool is_complete_graph(const Graph& g) {
  for (int v = 0; v < g.n; ++v)
    if (g.adj[v] != without_element(full_set(g.n), v)) return false;
  return true;
}

}  // namespace ranktest
