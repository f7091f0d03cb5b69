#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ranktest/ci.hpp"
#include "ranktest/errors.hpp"
#include "ranktest/simplex.hpp"
#include "ranktest/submodular.hpp"

namespace ranktest {

inline constexpr int kStructuralBound = 5;

// Decides whether a semigraphoid is structural: is there a submodular w whose
// elementary equalities are exactly the statements of M? Strictness on the
// complement is encoded as defect >= 1, which is equivalent up to scaling.
// Variables are the values w(S) for |S| >= 2; the modular gauge pins
// w(empty) = w({i}) = 0. Returns a witness function on success.
inline std::optional<SetFunction> is_structural(const CIModel& M,
                                                int bound = kStructuralBound) {
  int n = M.n;
  if (n > bound)
    throw DimensionTooLarge("structurality LP limited to n <= " +
                            std::to_string(bound));
  if (!is_semigraphoid(M))
    throw NotASemigraphoid("structurality is defined for semigraphoids only");

  std::vector<int> var_of(std::size_t{1} << n, -1);
  std::vector<Subset> coord;
  for (Subset S = 0; S < (Subset{1} << n); ++S)
    if (set_size(S) >= 2) {
      var_of[S] = static_cast<int>(coord.size());
      coord.push_back(S);
    }
  int nvars = static_cast<int>(coord.size());

  std::vector<LinearConstraint> eqs, ineqs;
  for (const CIStatement& s : statement_universe(n)) {
    LinearConstraint c;
    c.coeffs.assign(nvars, 0);
    auto add = [&](Subset S, int sign) {
      if (var_of[S] >= 0) c.coeffs[var_of[S]] += sign;
    };
    add(with_element(s.cond, s.i), +1);
    add(with_element(s.cond, s.j), +1);
    add(with_element(with_element(s.cond, s.i), s.j), -1);
    add(s.cond, -1);
    if (M.statements.count(s)) {
      c.rhs = 0;
      eqs.push_back(std::move(c));
    } else {
      c.rhs = 1;
      ineqs.push_back(std::move(c));
    }
  }

  auto sol = solve_feasibility(nvars, eqs, ineqs);
  if (!sol) return std::nullopt;

  std::vector<Rational> values(std::size_t{1} << n, 0);
  for (int v = 0; v < nvars; ++v) values[coord[v]] = (*sol)[v];
  SetFunction w(n, std::move(values));
  if (!is_submodular(w) || tight_model(w) != M)
    throw Error("structurality witness failed verification");
  return w;
}

}  // namespace ranktest
