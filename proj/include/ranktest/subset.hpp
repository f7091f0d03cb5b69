#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ranktest {

// Ground-set elements are 0-based internally; every textual interface is
// 1-based. A Subset packs elements of {0,...,n-1} into a 32-bit word.
using Subset = std::uint32_t;

inline constexpr int kMaxGroundSet = 16;

constexpr Subset full_set(int n) { return (Subset{1} << n) - 1u; }
constexpr bool set_contains(Subset s, int e) { return (s >> e) & 1u; }
constexpr Subset with_element(Subset s, int e) { return s | (Subset{1} << e); }
constexpr Subset without_element(Subset s, int e) { return s & ~(Subset{1} << e); }
inline int set_size(Subset s) { return __builtin_popcount(s); }
inline int lowest_element(Subset s) { return __builtin_ctz(s); }

inline std::vector<int> set_elements(Subset s) {
  std::vector<int> out;
  for (Subset t = s; t; t &= t - 1) out.push_back(__builtin_ctz(t));
  return out;
}

// "{1,3}": 1-based, ascending; "{}" for the empty set.
inline std::string set_to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int e : set_elements(s)) {
    if (!first) out += ',';
    out += std::to_string(e + 1);
    first = false;
  }
  out += '}';
  return out;
}

inline Subset set_from_elements(const std::vector<int>& elems_1based, int n) {
  Subset s = 0;
  for (int e : elems_1based) {
    if (e < 1 || e > n)
      throw std::out_of_range("set element out of range: " + std::to_string(e));
    s = with_element(s, e - 1);
  }
  return s;
}

// Parses the output of set_to_string.
inline Subset set_from_string(const std::string& text, int n) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw std::invalid_argument("bad set literal: " + text);
  std::vector<int> elems;
  std::string body = text.substr(1, text.size() - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    elems.push_back(std::stoi(body.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return set_from_elements(elems, n);
}

// Visits every subset of `mask`, including the empty set, in decreasing
// numeric order of the submask.
template <class F>
void for_each_submask(Subset mask, F&& visit) {
  Subset t = mask;
  for (;;) {
    visit(t);
    if (t == 0) break;
    t = (t - 1) & mask;
  }
}

}  // namespace ranktest
