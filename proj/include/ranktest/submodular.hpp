#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ranktest/ci.hpp"
#include "ranktest/errors.hpp"
#include "ranktest/numbers.hpp"
#include "ranktest/permutation.hpp"
#include "ranktest/subset.hpp"

namespace ranktest {

// A set function w : 2^[n] -> Q with w(empty) = 0, normalized at
// construction by subtracting w(empty). Exact rationals only.
class SetFunction {
 public:
  SetFunction(int n, std::vector<Rational> values)
      : n_(n), v_(std::move(values)) {
    if (n < 1 || n > kMaxGroundSet)
      throw InvalidSpec("ground set size out of range");
    if (v_.size() != (std::size_t{1} << n))
      throw InvalidSpec("set function needs a value for each of the 2^n subsets");
    Rational base = v_[0];
    if (base != 0)
      for (Rational& q : v_) q -= base;
  }

  static SetFunction zero(int n) {
    return SetFunction(n, std::vector<Rational>(std::size_t{1} << n, 0));
  }

  // w(I) = |I|; modular, one-class test.
  static SetFunction modular_rank(int n) {
    std::vector<Rational> v(std::size_t{1} << n);
    for (Subset I = 0; I < (Subset{1} << n); ++I) v[I] = set_size(I);
    return SetFunction(n, std::move(v));
  }

  // w_K(I) = 1 iff K meets I; the simplex on K.
  static SetFunction meets_indicator(int n, Subset K) {
    std::vector<Rational> v(std::size_t{1} << n);
    for (Subset I = 0; I < (Subset{1} << n); ++I) v[I] = (I & K) ? 1 : 0;
    return SetFunction(n, std::move(v));
  }

  // w(I) = |I|(2n-|I|): strictly submodular, all classes singletons.
  static SetFunction strictly_submodular(int n) {
    std::vector<Rational> v(std::size_t{1} << n);
    for (Subset I = 0; I < (Subset{1} << n); ++I) {
      int s = set_size(I);
      v[I] = s * (2 * n - s);
    }
    return SetFunction(n, std::move(v));
  }

  int size() const { return n_; }
  const Rational& operator()(Subset I) const { return v_[I]; }
  const std::vector<Rational>& values() const { return v_; }
  bool operator==(const SetFunction&) const = default;

 private:
  int n_;
  std::vector<Rational> v_;
};

// Elementary submodularity defect w(K+i) + w(K+j) - w(K+ij) - w(K); the
// inequality says this is >= 0.
inline Rational elementary_defect(const SetFunction& w, int i, int j, Subset K) {
  return w(with_element(K, i)) + w(with_element(K, j)) -
         w(with_element(with_element(K, i), j)) - w(K);
}

// First violated elementary inequality, if any.
inline std::optional<std::tuple<int, int, Subset>> find_submodular_violation(
    const SetFunction& w) {
  int n = w.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Subset rest = full_set(n) & ~with_element(with_element(0, i), j);
      std::optional<std::tuple<int, int, Subset>> bad;
      for_each_submask(rest, [&](Subset K) {
        if (!bad && elementary_defect(w, i, j, K) < 0) bad = {i, j, K};
      });
      if (bad) return bad;
    }
  return std::nullopt;
}

inline bool is_submodular(const SetFunction& w) {
  return !find_submodular_violation(w).has_value();
}

// Greedy vertex of the polytope of w for the cone of p: with delta the
// descent vector and S_k its prefix sets, x_{delta_k} = w(S_k) - w(S_{k-1}).
// The result maximizes u.x over the polytope for every u in p's cone.
inline std::vector<Rational> greedy_vertex(const SetFunction& w,
                                           const Permutation& p) {
  if (p.size() != w.size())
    throw InvalidSpec("permutation and set function sizes differ");
  if (!is_submodular(w))
    throw NotSubmodular("greedy vertex needs a submodular function");
  std::vector<int> delta = p.descent_vector();
  std::vector<Rational> x(w.size());
  Subset S = 0;
  Rational prev = 0;
  for (int e : delta) {
    S = with_element(S, e);
    x[e] = w(S) - prev;
    prev = w(S);
  }
  return x;
}

// Statements whose elementary inequality is tight; the missing-wall model of
// the normal fan of the polytope of w.
inline CIModel tight_model(const SetFunction& w) {
  if (!is_submodular(w))
    throw NotSubmodular("tight model needs a submodular function");
  int n = w.size();
  CIModel M(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Subset rest = full_set(n) & ~with_element(with_element(0, i), j);
      for_each_submask(rest, [&](Subset K) {
        if (elementary_defect(w, i, j, K) == 0) M.insert(CIStatement(i, j, K));
      });
    }
  return M;
}

// A family of distinct nonempty subsets of [n], kept sorted.
struct SetFamily {
  int n = 0;
  std::vector<Subset> members;

  SetFamily(int n_, std::vector<Subset> ms) : n(n_), members(std::move(ms)) {
    if (n < 1 || n > kMaxGroundSet)
      throw InvalidSpec("ground set size out of range");
    std::sort(members.begin(), members.end());
    for (std::size_t t = 0; t < members.size(); ++t) {
      if (members[t] == 0) throw InvalidSpec("family member is empty");
      if (members[t] & ~full_set(n))
        throw InvalidSpec("family member out of range");
      if (t && members[t] == members[t - 1])
        throw InvalidSpec("duplicate family member");
    }
  }

  std::size_t size() const { return members.size(); }
};

// w(I) = number of members meeting I; always submodular.
inline SetFunction family_function(const SetFamily& F) {
  std::vector<Rational> v(std::size_t{1} << F.n);
  for (Subset I = 0; I < (Subset{1} << F.n); ++I) {
    long c = 0;
    for (Subset K : F.members)
      if (K & I) ++c;
    v[I] = c;
  }
  return SetFunction(F.n, std::move(v));
}

// Coordinate i counts the members whose maximum rank under p sits at
// position i; equals the greedy vertex of the family function.
inline std::vector<long> mss_signature(const SetFamily& F, const Permutation& p) {
  if (p.size() != F.n)
    throw InvalidSpec("permutation and family sizes differ");
  std::vector<long> sig(F.n, 0);
  for (Subset K : F.members) {
    int best = -1;
    for (int e : set_elements(K))
      if (best == -1 || p.rank(e) > p.rank(best)) best = e;
    ++sig[best];
  }
  return sig;
}

}  // namespace ranktest
