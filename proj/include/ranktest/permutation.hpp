#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ranktest/errors.hpp"
#include "ranktest/numbers.hpp"
#include "ranktest/subset.hpp"

namespace ranktest {

// A permutation of {0,...,n-1} stored by its rank vector: rank(i) is the rank
// of position i, 0 the smallest. The descent vector (positions listed by
// decreasing rank) and the pair set {(i,j) : rank(i) < rank(j)} are derived
// views; values are immutable after construction.
class Permutation {
 public:
  explicit Permutation(std::vector<int> ranks) : rank_(std::move(ranks)) {
    int n = static_cast<int>(rank_.size());
    if (n < 1 || n > kMaxGroundSet)
      throw InvalidSpec("permutation size out of range: " + std::to_string(n));
    Subset seen = 0;
    for (int r : rank_) {
      if (r < 0 || r >= n || set_contains(seen, r))
        throw InvalidSpec("rank vector is not a bijection");
      seen = with_element(seen, r);
    }
  }

  static Permutation identity(int n) {
    std::vector<int> r(n);
    std::iota(r.begin(), r.end(), 0);
    return Permutation(std::move(r));
  }

  // Ranks of a data vector; ties are rejected, never broken.
  static Permutation from_data(const std::vector<double>& u) {
    int n = static_cast<int>(u.size());
    if (n < 1) throw EmptyInput("empty data vector");
    if (n > kMaxGroundSet)
      throw GroundSetTooLarge("data vector longer than " +
                              std::to_string(kMaxGroundSet));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return u[a] < u[b]; });
    for (int t = 0; t + 1 < n; ++t)
      if (u[order[t]] == u[order[t + 1]])
        throw DuplicateEntries("equal entries at positions " +
                               std::to_string(order[t] + 1) + " and " +
                               std::to_string(order[t + 1] + 1));
    std::vector<int> r(n);
    for (int t = 0; t < n; ++t) r[order[t]] = t;
    return Permutation(std::move(r));
  }

  // delta lists positions by decreasing rank.
  static Permutation from_descent(const std::vector<int>& delta) {
    int n = static_cast<int>(delta.size());
    std::vector<int> r(n, -1);
    for (int t = 0; t < n; ++t) {
      if (delta[t] < 0 || delta[t] >= n || r[delta[t]] != -1)
        throw InvalidSpec("descent vector is not a permutation");
      r[delta[t]] = n - 1 - t;
    }
    return Permutation(std::move(r));
  }

  int size() const { return static_cast<int>(rank_.size()); }
  int rank(int pos) const { return rank_[pos]; }
  const std::vector<int>& ranks() const { return rank_; }

  std::vector<int> descent_vector() const {
    int n = size();
    std::vector<int> delta(n);
    for (int pos = 0; pos < n; ++pos) delta[n - 1 - rank_[pos]] = pos;
    return delta;
  }

  // {(i,j) : rank(i) < rank(j)}, lexicographic.
  std::vector<std::pair<int, int>> pair_set() const {
    std::vector<std::pair<int, int>> out;
    int n = size();
    out.reserve(n * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rank_[i] < rank_[j]) out.emplace_back(i, j);
    return out;
  }

  // above(i) = positions ranked above i; the mask form of the pair set.
  std::vector<Subset> above_masks() const {
    int n = size();
    std::vector<Subset> above(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rank_[i] < rank_[j]) above[i] = with_element(above[i], j);
    return above;
  }

  // rank -> n-1-rank pointwise; an involution.
  Permutation reversed() const {
    int n = size();
    std::vector<int> r(n);
    for (int i = 0; i < n; ++i) r[i] = n - 1 - rank_[i];
    return Permutation(std::move(r));
  }

  // Lexicographic index of the rank vector among all n! of them.
  long lehmer_index() const {
    int n = size();
    long idx = 0;
    long base = factorial_long(n - 1);
    Subset used = 0;
    for (int i = 0; i < n; ++i) {
      int smaller = rank_[i] - set_size(used & ((Subset{1} << rank_[i]) - 1));
      idx += smaller * base;
      used = with_element(used, rank_[i]);
      if (i + 1 < n) base /= (n - 1 - i);
    }
    return idx;
  }

  static Permutation from_lehmer_index(int n, long idx) {
    std::vector<int> avail(n);
    std::iota(avail.begin(), avail.end(), 0);
    std::vector<int> r(n);
    long base = factorial_long(n - 1);
    for (int i = 0; i < n; ++i) {
      long q = idx / base;
      r[i] = avail[q];
      avail.erase(avail.begin() + q);
      idx %= base;
      if (i + 1 < n) base /= (n - 1 - i);
    }
    return Permutation(std::move(r));
  }

  bool operator==(const Permutation&) const = default;

  // "2,1,3": 1-based ranks.
  static Permutation parse_ranks(const std::string& text) {
    std::vector<int> r;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t used = 0;
      int v;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw InvalidSpec("bad rank entry: '" + tok + "'");
      }
      while (used < tok.size() &&
             std::isspace(static_cast<unsigned char>(tok[used])))
        ++used;
      if (used != tok.size())
        throw InvalidSpec("bad rank entry: '" + tok + "'");
      r.push_back(v - 1);
    }
    if (r.empty()) throw EmptyInput("empty rank vector");
    return Permutation(std::move(r));
  }

  std::string rank_string() const {
    std::string out;
    for (int i = 0; i < size(); ++i) {
      if (i) out += ',';
      out += std::to_string(rank_[i] + 1);
    }
    return out;
  }

  // Descent word, e.g. "312"; comma form beyond single digits.
  std::string descent_word() const {
    std::vector<int> d = descent_vector();
    std::string out;
    for (std::size_t t = 0; t < d.size(); ++t) {
      if (size() <= 9) {
        out += static_cast<char>('1' + d[t]);
      } else {
        if (t) out += ',';
        out += std::to_string(d[t] + 1);
      }
    }
    return out;
  }

 private:
  std::vector<int> rank_;
};

// Visits all n! permutations in lexicographic rank-vector order.
template <class F>
void for_each_permutation(int n, F&& visit) {
  std::vector<int> r(n);
  std::iota(r.begin(), r.end(), 0);
  do {
    visit(Permutation(r));
  } while (std::next_permutation(r.begin(), r.end()));
}

}  // namespace ranktest
