#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ranktest/numbers.hpp"

namespace ranktest {

// One linear condition on a vector of free variables.
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Rational rhs;
};

// Decides feasibility of {x : E x = e, G x >= g} over free (sign-unrestricted)
// variables by a phase-one simplex in exact rational arithmetic. Free
// variables are split into differences of nonnegative ones; Bland's
// smallest-index rule makes the pivoting finite. Returns a feasible point or
// nullopt.
inline std::optional<std::vector<Rational>> solve_feasibility(
    int nvars, const std::vector<LinearConstraint>& eqs,
    const std::vector<LinearConstraint>& ineqs) {
  const std::size_t m = eqs.size() + ineqs.size();
  const std::size_t n_split = 2 * static_cast<std::size_t>(nvars);
  const std::size_t n_slack = ineqs.size();
  const std::size_t ncols = n_split + n_slack + m;  // artificials last
  const std::size_t rhs_col = ncols;

  // tableau rows: [x+ | x- | slacks | artificials | rhs]
  std::vector<std::vector<Rational>> T(m, std::vector<Rational>(ncols + 1, 0));
  std::vector<std::size_t> basis(m);

  std::size_t r = 0;
  auto load_row = [&](const LinearConstraint& c, bool is_ineq, std::size_t slack) {
    for (int v = 0; v < nvars; ++v) {
      T[r][v] = c.coeffs[v];
      T[r][nvars + v] = -c.coeffs[v];
    }
    if (is_ineq) T[r][n_split + slack] = -1;  // G x - s = g
    T[r][rhs_col] = c.rhs;
    if (T[r][rhs_col] < 0)
      for (auto& q : T[r]) q = -q;
    T[r][n_split + n_slack + r] = 1;  // artificial
    basis[r] = n_split + n_slack + r;
    ++r;
  };
  for (const auto& c : eqs) load_row(c, false, 0);
  for (std::size_t k = 0; k < ineqs.size(); ++k) load_row(ineqs[k], true, k);

  // Phase-one reduced costs: with every artificial basic, the cost row is the
  // column sum over all rows (artificial columns excluded from entering).
  std::vector<Rational> cost(ncols + 1, 0);
  for (std::size_t row = 0; row < m; ++row)
    for (std::size_t c = 0; c <= ncols; ++c) cost[c] += T[row][c];

  const std::size_t enterable = n_split + n_slack;
  for (;;) {
    std::size_t enter = ncols;
    for (std::size_t c = 0; c < enterable; ++c)
      if (cost[c] > 0) {
        enter = c;
        break;
      }
    if (enter == ncols) break;

    std::size_t leave = m;
    Rational best;
    for (std::size_t row = 0; row < m; ++row) {
      if (T[row][enter] <= 0) continue;
      Rational ratio = T[row][rhs_col] / T[row][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[row] < basis[leave]))
        leave = row, best = ratio;
    }
    if (leave == m) return std::nullopt;  // unbounded phase one: cannot happen

    Rational pivot = T[leave][enter];
    for (auto& q : T[leave]) q /= pivot;
    for (std::size_t row = 0; row < m; ++row) {
      if (row == leave || T[row][enter] == 0) continue;
      Rational f = T[row][enter];
      for (std::size_t c = 0; c <= ncols; ++c) T[row][c] -= f * T[leave][c];
    }
    if (cost[enter] != 0) {
      Rational f = cost[enter];
      for (std::size_t c = 0; c <= ncols; ++c) cost[c] -= f * T[leave][c];
    }
    basis[leave] = enter;
  }

  if (cost[rhs_col] != 0) return std::nullopt;  // artificials stuck above zero

  std::vector<Rational> split(n_split, 0);
  for (std::size_t row = 0; row < m; ++row)
    if (basis[row] < n_split) split[basis[row]] = T[row][rhs_col];
  std::vector<Rational> x(nvars);
  for (int v = 0; v < nvars; ++v) x[v] = split[v] - split[nvars + v];
  return x;
}

}  // namespace ranktest
