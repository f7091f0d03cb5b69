#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ranktest/ci.hpp"
#include "ranktest/errors.hpp"
#include "ranktest/graph.hpp"
#include "ranktest/gtree.hpp"
#include "ranktest/numbers.hpp"
#include "ranktest/permutation.hpp"
#include "ranktest/permutohedron.hpp"
#include "ranktest/poset.hpp"
#include "ranktest/submodular.hpp"

namespace ranktest {

struct EngineOptions {
  int bruteforce_bound = kBruteForceBound;
  std::size_t lattice_cap = kLatticeCap;
};

enum class TailRule { Strict, WithTies };

struct ClassSummary {
  std::string token;
  BigInt size;
  Permutation representative;
  std::optional<Poset> poset;
};

// Up-down pattern of the rank vector: +1 for an ascent at each of the n-1
// adjacent positions.
inline std::vector<int> updown_pattern(const Permutation& p) {
  std::vector<int> signs(p.size() - 1);
  for (int t = 0; t + 1 < p.size(); ++t)
    signs[t] = p.rank(t + 1) > p.rank(t) ? 1 : -1;
  return signs;
}

inline std::string pattern_token(const std::vector<int>& signs) {
  std::string out = "(";
  for (std::size_t t = 0; t < signs.size(); ++t) {
    if (t) out += ',';
    out += signs[t] > 0 ? '+' : '-';
  }
  return out + ")";
}

// Fence order of a pattern: ascents point up, descents down.
inline Poset pattern_poset(const std::vector<int>& signs) {
  int n = static_cast<int>(signs.size()) + 1;
  std::vector<std::pair<int, int>> pairs;
  for (int t = 0; t < n - 1; ++t)
    pairs.emplace_back(signs[t] > 0 ? std::make_pair(t, t + 1)
                                    : std::make_pair(t + 1, t));
  return Poset::from_pairs(n, pairs);
}

// Some permutation with the given pattern: start from the identity and
// reverse each maximal descent block.
inline Permutation pattern_representative(const std::vector<int>& signs) {
  int n = static_cast<int>(signs.size()) + 1;
  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i) rank[i] = i;
  int t = 0;
  while (t < n - 1) {
    if (signs[t] > 0) {
      ++t;
      continue;
    }
    int end = t;
    while (end < n - 1 && signs[end] < 0) ++end;
    std::reverse(rank.begin() + t, rank.begin() + end + 1);
    t = end;
  }
  return Permutation(std::move(rank));
}

// Maximal monotone runs: 1 + number of sign changes in the pattern.
inline int runs_statistic(const Permutation& p) {
  std::vector<int> signs = updown_pattern(p);
  int changes = 0;
  for (std::size_t t = 0; t + 1 < signs.size(); ++t)
    if (signs[t] != signs[t + 1]) ++changes;
  return 1 + changes;
}

// A compiled rank test: signature map plus a class-size strategy. Instances
// are immutable and safe to share across threads.
class CompiledTest {
 public:
  virtual ~CompiledTest() = default;

  int ground_set_size() const { return n_; }
  const std::string& strategy() const { return strategy_; }

  virtual std::string signature(const Permutation& p) const = 0;
  virtual BigInt class_size(const Permutation& p) const = 0;
  virtual std::optional<Poset> class_poset(const Permutation& p) const = 0;
  virtual std::vector<ClassSummary> enumerate_classes() const = 0;

  virtual std::vector<BigInt> class_size_multiset() const {
    std::vector<BigInt> out;
    for (const ClassSummary& c : enumerate_classes()) out.push_back(c.size);
    return out;
  }

  // Null probability mass of all classes strictly smaller than p's (the
  // WithTies variant also counts equal-sized classes, p's own included).
  Rational p_value(const Permutation& p, TailRule tail = TailRule::Strict) const {
    BigInt own = class_size(p);
    std::vector<BigInt> sizes;
    try {
      sizes = class_size_multiset();
    } catch (const GroundSetTooLarge& e) {
      throw ClassEnumerationUnavailable(e.what());
    }
    BigInt num = 0;
    for (const BigInt& s : sizes)
      if (s < own || (tail == TailRule::WithTies && s == own)) num += s;
    Rational r(num, factorial(n_));
    r.canonicalize();
    return r;
  }

 protected:
  CompiledTest(int n, std::string strategy)
      : n_(n), strategy_(std::move(strategy)) {
    if (n < 1 || n > kMaxGroundSet)
      throw InvalidSpec("ground set size out of range");
  }

  void check_n(const Permutation& p) const {
    if (p.size() != n_)
      throw InvalidSpec("permutation size does not match the test");
  }

  int n_;
  std::string strategy_;
};

namespace detail {

// Shared implementation for tests materialized by a full scan of S_n.
class EnumeratedTest : public CompiledTest {
 public:
  std::string signature(const Permutation& p) const override {
    return classes_[index_of(p)].token;
  }
  BigInt class_size(const Permutation& p) const override {
    return classes_[index_of(p)].size;
  }
  std::optional<Poset> class_poset(const Permutation& p) const override {
    return classes_[index_of(p)].poset;
  }
  std::vector<ClassSummary> enumerate_classes() const override {
    return classes_;
  }

 protected:
  using CompiledTest::CompiledTest;

  template <class TokenFn>
  void build_by_scan(TokenFn&& token_of, int bound) {
    if (n_ > bound)
      throw GroundSetTooLarge("class enumeration limited to n <= " +
                              std::to_string(bound));
    std::map<std::string, std::vector<Permutation>> groups;
    for_each_permutation(n_, [&](const Permutation& p) {
      groups[token_of(p)].push_back(p);
    });
    class_of_.assign(factorial_long(n_), -1);
    for (auto& [token, members] : groups) {
      int id = static_cast<int>(classes_.size());
      for (const Permutation& p : members) class_of_[p.lehmer_index()] = id;
      classes_.push_back(ClassSummary{token,
                                      BigInt(static_cast<long>(members.size())),
                                      members.front(),
                                      intersect_permutations(members)});
    }
  }

  int index_of(const Permutation& p) const {
    check_n(p);
    return class_of_[p.lehmer_index()];
  }

  std::vector<ClassSummary> classes_;
  std::vector<int> class_of_;
};

class FamilyTest : public EnumeratedTest {
 public:
  FamilyTest(SetFamily family, const EngineOptions& opt)
      : EnumeratedTest(family.n, "enumeration"), family_(std::move(family)) {
    build_by_scan(
        [&](const Permutation& p) { return mss_token(mss_signature(family_, p)); },
        opt.bruteforce_bound);
  }

  static std::string mss_token(const std::vector<long>& sig) {
    std::string out = "mss:(";
    for (std::size_t t = 0; t < sig.size(); ++t) {
      if (t) out += ',';
      out += std::to_string(sig[t]);
    }
    return out + ")";
  }

 private:
  SetFamily family_;
};

class FunctionTest : public EnumeratedTest {
 public:
  FunctionTest(SetFunction w, const EngineOptions& opt)
      : EnumeratedTest(w.size(), "enumeration"), w_(std::move(w)) {
    if (!is_submodular(w_))
      throw NotSubmodular("rank test needs a submodular function");
    build_by_scan(
        [&](const Permutation& p) {
          std::string out = "greedy:(";
          std::vector<Rational> x = greedy_vertex(w_, p);
          for (std::size_t t = 0; t < x.size(); ++t) {
            if (t) out += ',';
            out += rational_to_string(x[t]);
          }
          return out + ")";
        },
        opt.bruteforce_bound);
  }

 private:
  SetFunction w_;
};

class ModelTest : public EnumeratedTest {
 public:
  ModelTest(const CIModel& M, const EngineOptions& opt)
      : EnumeratedTest(M.n, "enumeration") {
    RankTestPartition t = partition_from_model(M, opt.bruteforce_bound);
    build_by_scan(
        [&](const Permutation& p) {
          return "class:" + std::to_string(t.class_index(p) + 1);
        },
        opt.bruteforce_bound);
  }
};

class PosetListTest : public CompiledTest {
 public:
  PosetListTest(std::vector<Poset> posets, const EngineOptions& opt)
      : CompiledTest(posets.empty() ? 0 : posets.front().size(), "lattice"),
        posets_(std::move(posets)) {
    if (posets_.empty()) throw EmptyInput("empty poset list");
    for (const Poset& P : posets_)
      if (P.size() != n_) throw InvalidSpec("posets have mismatched ground sets");
    if (n_ <= opt.bruteforce_bound) {
      for_each_permutation(n_, [&](const Permutation& p) {
        int hits = 0;
        for (const Poset& P : posets_)
          if (is_linear_extension(p, P)) ++hits;
        if (hits == 0)
          throw CoverageFailure("no poset covers permutation " + p.rank_string());
        if (hits > 1)
          throw CoverageFailure("extension sets overlap at permutation " +
                                p.rank_string());
      });
    }
    sizes_.reserve(posets_.size());
    for (const Poset& P : posets_)
      sizes_.push_back(count_linear_extensions(P, opt.lattice_cap));
  }

  std::string signature(const Permutation& p) const override {
    return "poset:" + std::to_string(find(p) + 1);
  }
  BigInt class_size(const Permutation& p) const override {
    return sizes_[find(p)];
  }
  std::optional<Poset> class_poset(const Permutation& p) const override {
    return posets_[find(p)];
  }
  std::vector<BigInt> class_size_multiset() const override { return sizes_; }

  std::vector<ClassSummary> enumerate_classes() const override {
    std::vector<ClassSummary> out;
    for (std::size_t i = 0; i < posets_.size(); ++i)
      out.push_back(ClassSummary{"poset:" + std::to_string(i + 1), sizes_[i],
                                 minimal_extension(posets_[i]), posets_[i]});
    std::sort(out.begin(), out.end(),
              [](const ClassSummary& a, const ClassSummary& b) {
                return a.token < b.token;
              });
    return out;
  }

  // Greedy linear extension: always take the least available minimal element.
  static Permutation minimal_extension(const Poset& P) {
    int n = P.size();
    std::vector<int> rank(n, -1);
    Subset placed = 0;
    for (int t = 0; t < n; ++t)
      for (int e = 0; e < n; ++e) {
        if (set_contains(placed, e)) continue;
        if (P.below(e) & ~placed) continue;
        rank[e] = t;
        placed = with_element(placed, e);
        break;
      }
    return Permutation(std::move(rank));
  }

 private:
  int find(const Permutation& p) const {
    check_n(p);
    for (std::size_t i = 0; i < posets_.size(); ++i)
      if (is_linear_extension(p, posets_[i])) return static_cast<int>(i);
    throw CoverageFailure("no poset covers permutation " + p.rank_string());
  }

  std::vector<Poset> posets_;
  std::vector<BigInt> sizes_;
};

class GraphTest : public CompiledTest {
 public:
  GraphTest(Graph g, bool tubing, const EngineOptions& opt)
      : CompiledTest(g.n, "gtree"),
        g_(std::move(g)),
        tubing_(tubing),
        bound_(opt.bruteforce_bound) {}

  GTree tree_of(const Permutation& p) const {
    check_n(p);
    return tubing_ ? tubing_signature(g_, p) : g_tree(g_, p);
  }

  std::string signature(const Permutation& p) const override {
    return token_of(tree_of(p));
  }
  BigInt class_size(const Permutation& p) const override {
    return gtree_class_size(tree_of(p));
  }
  std::optional<Poset> class_poset(const Permutation& p) const override {
    return poset_of(tree_of(p));
  }
  std::vector<ClassSummary> enumerate_classes() const override {
    std::call_once(once_, [&] {
      if (n_ > bound_)
        throw GroundSetTooLarge("class enumeration limited to n <= " +
                                std::to_string(bound_));
      std::map<std::string, std::pair<GTree, Permutation>> found;
      for_each_permutation(n_, [&](const Permutation& p) {
        GTree t = tree_of(p);
        found.try_emplace(token_of(t), t, p);
      });
      for (auto& [token, entry] : found)
        cache_.push_back(ClassSummary{token, gtree_class_size(entry.first),
                                      entry.second, poset_of(entry.first)});
    });
    return cache_;
  }

 private:
  std::string token_of(const GTree& t) const {
    return (tubing_ ? "tubing:" : "gtree:") + t.token();
  }

  // The graphical class is the down-set order of the tree; the tubing class
  // is its reverse.
  Poset poset_of(const GTree& t) const {
    std::vector<std::pair<int, int>> pairs;
    for (int v = 0; v < t.n; ++v)
      if (t.parent[v] != -1) {
        if (tubing_)
          pairs.emplace_back(t.parent[v], v);
        else
          pairs.emplace_back(v, t.parent[v]);
      }
    return Poset::from_pairs(t.n, pairs);
  }

  Graph g_;
  bool tubing_;
  int bound_;
  mutable std::once_flag once_;
  mutable std::vector<ClassSummary> cache_;
};

class UpdownTest : public CompiledTest {
 public:
  explicit UpdownTest(int n) : CompiledTest(n, "descent") {}

  std::string signature(const Permutation& p) const override {
    check_n(p);
    return pattern_token(updown_pattern(p));
  }
  BigInt class_size(const Permutation& p) const override {
    check_n(p);
    return descent_class_size(updown_pattern(p));
  }
  std::optional<Poset> class_poset(const Permutation& p) const override {
    check_n(p);
    return pattern_poset(updown_pattern(p));
  }
  std::vector<ClassSummary> enumerate_classes() const override {
    std::map<std::string, std::vector<int>> patterns;
    for_each_pattern([&](const std::vector<int>& signs) {
      patterns[pattern_token(signs)] = signs;
    });
    std::vector<ClassSummary> out;
    for (auto& [token, signs] : patterns)
      out.push_back(ClassSummary{token, descent_class_size(signs),
                                 pattern_representative(signs),
                                 pattern_poset(signs)});
    return out;
  }

 protected:
  template <class F>
  void for_each_pattern(F&& visit) const {
    int bits = n_ - 1;
    for (Subset m = 0; m < (Subset{1} << bits); ++m) {
      std::vector<int> signs(bits);
      for (int t = 0; t < bits; ++t) signs[t] = set_contains(m, t) ? 1 : -1;
      visit(signs);
    }
  }
};

class RunsTest : public UpdownTest {
 public:
  explicit RunsTest(int n) : UpdownTest(n) {
    sizes_by_runs_.assign(n + 1, BigInt(0));
    for_each_pattern([&](const std::vector<int>& signs) {
      int changes = 0;
      for (std::size_t t = 0; t + 1 < signs.size(); ++t)
        if (signs[t] != signs[t + 1]) ++changes;
      sizes_by_runs_[1 + changes] += descent_class_size(signs);
    });
  }

  std::string signature(const Permutation& p) const override {
    check_n(p);
    return "runs:" + std::to_string(runs_statistic(p));
  }
  BigInt class_size(const Permutation& p) const override {
    check_n(p);
    return sizes_by_runs_[runs_statistic(p)];
  }
  std::optional<Poset> class_poset(const Permutation&) const override {
    return std::nullopt;  // run classes merge several fences
  }
  std::vector<ClassSummary> enumerate_classes() const override {
    std::vector<ClassSummary> out;
    for (int r = 1; r <= n_; ++r) {
      if (sizes_by_runs_[r] == 0) continue;
      // alternate through the first r signs, then stay constant: r-1 changes
      std::vector<int> signs(n_ - 1);
      for (int t = 0; t < n_ - 1; ++t)
        signs[t] = std::min(t, r - 1) % 2 == 0 ? -1 : 1;
      out.push_back(ClassSummary{"runs:" + std::to_string(r), sizes_by_runs_[r],
                                 pattern_representative(signs), std::nullopt});
    }
    return out;
  }

 private:
  std::vector<BigInt> sizes_by_runs_;
};

}  // namespace detail

// One of the five specification forms, or a named builtin.
struct RankTestSpec {
  enum class Kind { PosetList, Model, Function, Family, Graph, Updown, Sign, Runs };

  Kind kind = Kind::Updown;
  int n = 0;
  std::vector<Poset> posets;
  std::optional<CIModel> model;
  std::optional<SetFunction> function;
  std::optional<SetFamily> family;
  std::optional<Graph> graph;
  bool tubing_variant = false;
  int sign_pairs = 0;

  static RankTestSpec make(Kind kind, int n) {
    RankTestSpec s;
    s.kind = kind;
    s.n = n;
    return s;
  }
  static RankTestSpec updown(int n) { return make(Kind::Updown, n); }
  static RankTestSpec runs(int n) { return make(Kind::Runs, n); }
  static RankTestSpec sign(int pairs) {
    RankTestSpec s = make(Kind::Sign, 2 * pairs);
    s.sign_pairs = pairs;
    return s;
  }
  static RankTestSpec from_posets(std::vector<Poset> ps) {
    RankTestSpec s = make(Kind::PosetList, ps.empty() ? 0 : ps.front().size());
    s.posets = std::move(ps);
    return s;
  }
  static RankTestSpec from_model(CIModel M) {
    RankTestSpec s = make(Kind::Model, M.n);
    s.model = std::move(M);
    return s;
  }
  static RankTestSpec from_function(SetFunction w) {
    RankTestSpec s = make(Kind::Function, w.size());
    s.function = std::move(w);
    return s;
  }
  static RankTestSpec from_family(SetFamily F) {
    RankTestSpec s = make(Kind::Family, F.n);
    s.family = std::move(F);
    return s;
  }
  static RankTestSpec from_graph(Graph g, bool tubing) {
    RankTestSpec s = make(Kind::Graph, g.n);
    s.graph = std::move(g);
    s.tubing_variant = tubing;
    return s;
  }
};

inline std::unique_ptr<CompiledTest> compile(const RankTestSpec& spec,
                                             const EngineOptions& opt = {}) {
  using Kind = RankTestSpec::Kind;
  switch (spec.kind) {
    case Kind::Updown:
      return std::make_unique<detail::UpdownTest>(spec.n);
    case Kind::Runs:
      return std::make_unique<detail::RunsTest>(spec.n);
    case Kind::Sign: {
      if (spec.sign_pairs < 1) throw InvalidSpec("sign test needs m >= 1");
      int m = spec.sign_pairs;
      std::vector<Subset> members;
      for (int i = 0; i < m; ++i)
        members.push_back(with_element(with_element(0, i), m + i));
      return std::make_unique<detail::FamilyTest>(SetFamily(2 * m, members), opt);
    }
    case Kind::PosetList:
      return std::make_unique<detail::PosetListTest>(spec.posets, opt);
    case Kind::Model:
      if (!spec.model) throw InvalidSpec("missing model");
      return std::make_unique<detail::ModelTest>(*spec.model, opt);
    case Kind::Function:
      if (!spec.function) throw InvalidSpec("missing set function");
      return std::make_unique<detail::FunctionTest>(*spec.function, opt);
    case Kind::Family:
      if (!spec.family) throw InvalidSpec("missing set family");
      return std::make_unique<detail::FamilyTest>(*spec.family, opt);
    case Kind::Graph:
      if (!spec.graph) throw InvalidSpec("missing graph");
      return std::make_unique<detail::GraphTest>(*spec.graph, spec.tubing_variant,
                                                 opt);
  }
  throw InvalidSpec("unknown test kind");
}

}  // namespace ranktest
