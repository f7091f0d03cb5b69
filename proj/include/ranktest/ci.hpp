#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ranktest/errors.hpp"
#include "ranktest/subset.hpp"

namespace ranktest {

// A conditional independence statement i _|_ j | K, canonicalized to i < j.
struct CIStatement {
  int i = 0;
  int j = 0;
  Subset cond = 0;

  CIStatement(int a, int b, Subset K) {
    if (a == b) throw InvalidSpec("CI statement needs two distinct elements");
    i = a < b ? a : b;
    j = a < b ? b : a;
    cond = K;
    if (set_contains(cond, i) || set_contains(cond, j))
      throw InvalidSpec("conditioning set meets {i,j}");
  }

  auto operator<=>(const CIStatement&) const = default;

  std::string display() const {
    return std::to_string(i + 1) + "⊥" + std::to_string(j + 1) + "|" +
           set_to_string(cond);
  }
};

// A set of CI statements over [n]; candidate semigraphoid.
struct CIModel {
  int n = 0;
  std::set<CIStatement> statements;

  explicit CIModel(int n_) : n(n_) {
    if (n < 1 || n > kMaxGroundSet)
      throw InvalidSpec("ground set size out of range");
  }

  void insert(const CIStatement& s) {
    if (s.j >= n || (s.cond & ~full_set(n)))
      throw InvalidSpec("statement out of range for ground set");
    statements.insert(s);
  }

  bool contains(int a, int b, Subset K) const {
    return statements.count(CIStatement(a, b, K)) > 0;
  }

  std::size_t size() const { return statements.size(); }
  bool operator==(const CIModel&) const = default;
};

inline int statement_count(int n) {
  return n < 2 ? 0 : n * (n - 1) / 2 * (1 << (n - 2));
}

// Dense index: pairs (i<j) lexicographic, then the conditioning set
// compressed onto the n-2 positions of [n]\{i,j}.
inline int statement_index(int n, const CIStatement& s) {
  int pair_idx = 0;
  for (int a = 0; a < s.i; ++a) pair_idx += n - 1 - a;
  pair_idx += s.j - s.i - 1;
  int compressed = 0, bit = 0;
  for (int e = 0; e < n; ++e) {
    if (e == s.i || e == s.j) continue;
    if (set_contains(s.cond, e)) compressed |= 1 << bit;
    ++bit;
  }
  return pair_idx * (1 << (n - 2)) + compressed;
}

inline CIStatement statement_from_index(int n, int idx) {
  int block = 1 << (n - 2);
  int pair_idx = idx / block, compressed = idx % block;
  int i = 0;
  while (pair_idx >= n - 1 - i) pair_idx -= n - 1 - i, ++i;
  int j = i + 1 + pair_idx;
  Subset K = 0;
  int bit = 0;
  for (int e = 0; e < n; ++e) {
    if (e == i || e == j) continue;
    if (compressed & (1 << bit)) K = with_element(K, e);
    ++bit;
  }
  return CIStatement(i, j, K);
}

inline std::vector<CIStatement> statement_universe(int n) {
  std::vector<CIStatement> out;
  out.reserve(statement_count(n));
  for (int idx = 0; idx < statement_count(n); ++idx)
    out.push_back(statement_from_index(n, idx));
  return out;
}

inline CIModel full_model(int n) {
  CIModel M(n);
  for (const CIStatement& s : statement_universe(n)) M.insert(s);
  return M;
}

// One failed instance of the exchange axiom: both premises hold but a
// conclusion is missing.
struct SemigraphoidViolation {
  int i, j, l;
  Subset K;
  CIStatement missing;
};

// Exchange axiom: i_|_j|K+l and i_|_l|K imply i_|_j|K and i_|_l|K+j.
inline std::optional<SemigraphoidViolation> find_semigraphoid_violation(
    const CIModel& M) {
  int n = M.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        if (i == j || i == l || j == l) continue;
        Subset rest =
            full_set(n) & ~with_element(with_element(with_element(0, i), j), l);
        bool bad = false;
        SemigraphoidViolation v{i, j, l, 0, CIStatement(0, 1, 0)};
        for_each_submask(rest, [&](Subset K) {
          if (bad) return;
          if (!M.contains(i, j, with_element(K, l)) || !M.contains(i, l, K))
            return;
          if (!M.contains(i, j, K)) {
            v = {i, j, l, K, CIStatement(i, j, K)};
            bad = true;
          } else if (!M.contains(i, l, with_element(K, j))) {
            v = {i, j, l, K, CIStatement(i, l, with_element(K, j))};
            bad = true;
          }
        });
        if (bad) return v;
      }
  return std::nullopt;
}

inline bool is_semigraphoid(const CIModel& M) {
  return !find_semigraphoid_violation(M).has_value();
}

// Smallest semigraphoid containing M: add both conclusions whenever both
// premises are present, to a fixpoint.
inline CIModel semigraphoid_closure(CIModel M) {
  int n = M.n;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          if (i == j || i == l || j == l) continue;
          Subset rest = full_set(n) &
                        ~with_element(with_element(with_element(0, i), j), l);
          for_each_submask(rest, [&](Subset K) {
            if (!M.contains(i, j, with_element(K, l)) || !M.contains(i, l, K))
              return;
            if (!M.contains(i, j, K)) {
              M.insert(CIStatement(i, j, K));
              changed = true;
            }
            if (!M.contains(i, l, with_element(K, j))) {
              M.insert(CIStatement(i, l, with_element(K, j)));
              changed = true;
            }
          });
        }
  }
  return M;
}

// (i _|_ j | C)* = i _|_ j | [n]\(C u {i,j}); an involution on models.
inline CIModel dual_model(const CIModel& M) {
  CIModel out(M.n);
  for (const CIStatement& s : M.statements) {
    Subset co = full_set(M.n) & ~s.cond;
    co = without_element(without_element(co, s.i), s.j);
    out.insert(CIStatement(s.i, s.j, co));
  }
  return out;
}

}  // namespace ranktest
