#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "ranktest/permutohedron.hpp"
#include "ranktest/simplex.hpp"
#include "ranktest/structural.hpp"
#include "ranktest/submodular.hpp"

using namespace ranktest;

namespace {

Permutation perm(std::vector<int> ranks_1based) {
  for (int& r : ranks_1based) --r;
  return Permutation(std::move(ranks_1based));
}

CIStatement st(int i, int j, std::vector<int> K_1based, int n) {
  return CIStatement(i - 1, j - 1, set_from_elements(K_1based, n));
}

SetFamily path3_family() {
  // connected sets of the path 1-2-3
  return SetFamily(3, {0b001, 0b010, 0b100, 0b011, 0b110, 0b111});
}

SetFunction random_submodular(int n, std::mt19937& rng) {
  // random family function plus a random modular shift stays submodular
  std::vector<Subset> members;
  for (Subset S = 1; S < (Subset{1} << n); ++S)
    if (rng() % 3 == 0) members.push_back(S);
  SetFunction base = members.empty() ? SetFunction::zero(n)
                                     : family_function(SetFamily(n, members));
  std::vector<Rational> v(base.values());
  std::vector<Rational> shift(n);
  for (int e = 0; e < n; ++e)
    shift[e] = Rational(static_cast<long>(rng() % 7) - 3);
  for (Subset I = 0; I < (Subset{1} << n); ++I)
    for (int e : set_elements(I)) v[I] += shift[e];
  return SetFunction(n, std::move(v));
}

CIModel four_statement_model() {
  CIModel M(4);
  M.insert(st(2, 3, {1, 4}, 4));
  M.insert(st(1, 4, {2, 3}, 4));
  M.insert(st(1, 2, {}, 4));
  M.insert(st(3, 4, {}, 4));
  return M;
}

}  // namespace

TEST_CASE("submodularity recognition") {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    Subset K = 1 + static_cast<Subset>(rng() % full_set(n));
    CHECK(is_submodular(SetFunction::meets_indicator(n, K)));
  }
  CHECK(is_submodular(SetFunction::modular_rank(4)));
  CHECK(is_submodular(SetFunction::strictly_submodular(4)));

  std::vector<Rational> sq(16);
  for (Subset I = 0; I < 16; ++I) sq[I] = set_size(I) * set_size(I);
  SetFunction squared(4, std::move(sq));
  CHECK_FALSE(is_submodular(squared));
  CHECK(find_submodular_violation(squared).has_value());
}

TEST_CASE("greedy vertex") {
  for_each_permutation(3, [&](const Permutation& p) {
    std::vector<Rational> ones(3, 1);
    CHECK(greedy_vertex(SetFunction::modular_rank(3), p) == ones);
  });

  // the simplex on {1,3}: maximization picks the top-ranked element of K
  SetFunction w13 = SetFunction::meets_indicator(3, 0b101);
  std::vector<Rational> e3{0, 0, 1};
  CHECK(greedy_vertex(w13, Permutation::from_descent({2, 0, 1})) == e3);

  // singletons 2, pairs 3, full 3
  SetFunction w(3, {0, 2, 2, 3, 2, 3, 3, 3});
  REQUIRE(is_submodular(w));
  std::vector<Rational> want{2, 1, 0};
  CHECK(greedy_vertex(w, Permutation::from_descent({0, 1, 2})) == want);

  // oracle: the greedy point beats every other greedy point for an interior u
  std::vector<std::vector<Rational>> vertices;
  for_each_permutation(3, [&](const Permutation& p) {
    vertices.push_back(greedy_vertex(w, p));
  });
  for_each_permutation(3, [&](const Permutation& p) {
    std::vector<Rational> x = greedy_vertex(w, p);
    std::vector<Rational> u(3);
    for (int i = 0; i < 3; ++i) u[i] = p.rank(i) + 1;
    Rational best = 0;
    for (int i = 0; i < 3; ++i) best += u[i] * x[i];
    for (const auto& y : vertices) {
      Rational val = 0;
      for (int i = 0; i < 3; ++i) val += u[i] * y[i];
      CHECK(val <= best);
    }
  });

  CHECK_THROWS_AS(
      greedy_vertex(SetFunction(2, {0, 0, 0, 1}), Permutation::identity(2)),
      NotSubmodular);
}

TEST_CASE("tight model") {
  CHECK(tight_model(SetFunction::strictly_submodular(3)).size() == 0);
  CHECK(tight_model(SetFunction::modular_rank(3)) == full_model(3));

  CIModel path = tight_model(family_function(path3_family()));
  CIModel want(3);
  want.insert(st(1, 3, {2}, 3));
  CHECK(path == want);

  std::mt19937 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    SetFunction w = random_submodular(2 + static_cast<int>(rng() % 4), rng);
    CHECK(is_semigraphoid(tight_model(w)));
  }
}

TEST_CASE("family function") {
  CHECK(family_function(SetFamily(3, {0b001, 0b010, 0b100})) ==
        SetFunction::modular_rank(3));
  CHECK(family_function(SetFamily(3, {0b101})) ==
        SetFunction::meets_indicator(3, 0b101));

  SetFunction w = family_function(path3_family());
  CHECK(w(0b000) == 0);
  CHECK(w(0b001) == 3);
  CHECK(w(0b010) == 4);
  CHECK(w(0b100) == 3);
  CHECK(w(0b011) == 5);
  CHECK(w(0b101) == 5);
  CHECK(w(0b110) == 5);
  CHECK(w(0b111) == 6);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    std::vector<Subset> members;
    for (Subset S = 1; S < (Subset{1} << n); ++S)
      if (rng() % 2) members.push_back(S);
    if (members.empty()) continue;
    CHECK(is_submodular(family_function(SetFamily(n, members))));
  }
}

TEST_CASE("mss signatures") {
  SetFamily singles(3, {0b001, 0b010, 0b100});
  for_each_permutation(3, [&](const Permutation& p) {
    CHECK(mss_signature(singles, p) == std::vector<long>{1, 1, 1});
  });

  CHECK(mss_signature(path3_family(), perm({2, 1, 3})) ==
        std::vector<long>{2, 1, 3});

  SetFamily pairs(4, {0b0101, 0b1010});  // {{1,3},{2,4}}
  CHECK(mss_signature(pairs, perm({1, 3, 2, 4})) ==
        std::vector<long>{0, 0, 1, 1});
}

TEST_CASE("mss signature equals the greedy vertex") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    std::vector<Subset> members;
    for (Subset S = 1; S < (Subset{1} << n); ++S)
      if (rng() % 3 == 0) members.push_back(S);
    if (members.empty()) members.push_back(full_set(n));
    SetFamily F(n, members);
    SetFunction w = family_function(F);
    Permutation p = Permutation::from_lehmer_index(
        n, static_cast<long>(rng() % factorial_long(n)));
    std::vector<long> sig = mss_signature(F, p);
    std::vector<Rational> x = greedy_vertex(w, p);
    for (int i = 0; i < n; ++i) CHECK(Rational(sig[i]) == x[i]);
  }
}

TEST_CASE("greedy vertices group permutations like the tight model") {
  std::mt19937 rng(123);
  for (int trial = 0; trial < 18; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);  // up to 5
    SetFunction w = random_submodular(n, rng);
    RankTestPartition t = partition_from_model(tight_model(w));
    std::map<std::vector<Rational>, std::set<long>> by_vertex;
    for_each_permutation(n, [&](const Permutation& p) {
      by_vertex[greedy_vertex(w, p)].insert(p.lehmer_index());
    });
    CHECK(by_vertex.size() == t.class_count());
    for (auto& [vertex, ids] : by_vertex) {
      int cls = t.class_of[*ids.begin()];
      for (long id : ids) CHECK(t.class_of[id] == cls);
      CHECK(ids.size() == t.classes[cls].size());
    }
  }
}

TEST_CASE("rational simplex feasibility") {
  // x >= 1 and -x >= 0: infeasible
  CHECK_FALSE(solve_feasibility(1, {},
                                {{{Rational(1)}, Rational(1)},
                                 {{Rational(-1)}, Rational(0)}}));
  // x + y = 1, x - y >= 3
  auto sol = solve_feasibility(2, {{{Rational(1), Rational(1)}, Rational(1)}},
                               {{{Rational(1), Rational(-1)}, Rational(3)}});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] + (*sol)[1] == 1);
  CHECK((*sol)[0] - (*sol)[1] >= 3);
  // equality-only system with negative rhs
  auto sol2 = solve_feasibility(2,
                                {{{Rational(2), Rational(0)}, Rational(-4)},
                                 {{Rational(1), Rational(1)}, Rational(0)}},
                                {});
  REQUIRE(sol2.has_value());
  CHECK((*sol2)[0] == -2);
  CHECK((*sol2)[1] == 2);
}

TEST_CASE("structurality") {
  auto empty = is_structural(CIModel(3));
  REQUIRE(empty.has_value());
  CHECK(tight_model(*empty).size() == 0);

  auto full = is_structural(full_model(3));
  REQUIRE(full.has_value());
  CHECK(tight_model(*full) == full_model(3));

  CIModel bad = four_statement_model();
  REQUIRE(is_semigraphoid(bad));
  CHECK_FALSE(is_structural(bad).has_value());

  CIModel not_sg(3);
  not_sg.insert(st(1, 2, {3}, 3));
  not_sg.insert(st(1, 3, {}, 3));
  CHECK_THROWS_AS(is_structural(not_sg), NotASemigraphoid);
  CHECK_THROWS_AS(is_structural(CIModel(6)), DimensionTooLarge);
}

TEST_CASE("structural witnesses for tight models of random functions") {
  std::mt19937 rng(512);
  for (int trial = 0; trial < 10; ++trial) {
    SetFunction w = random_submodular(4, rng);
    CIModel M = tight_model(w);
    auto witness = is_structural(M);
    REQUIRE(witness.has_value());
    CHECK(is_submodular(*witness));
    CHECK(tight_model(*witness) == M);
  }
}

TEST_CASE("mss census at n=3") {
  std::set<std::set<CIStatement>> models;
  for (std::uint32_t fam = 0; fam < 128; ++fam) {
    std::vector<Subset> members;
    for (int t = 0; t < 7; ++t)
      if (fam & (1u << t)) members.push_back(static_cast<Subset>(t + 1));
    SetFunction w = members.empty() ? SetFunction::zero(3)
                                    : family_function(SetFamily(3, members));
    models.insert(tight_model(w).statements);
  }
  CHECK(models.size() == 15);

  // every MSS model is structural: its family function is a witness
  for (const auto& stmts : models) {
    CIModel M(3);
    for (const CIStatement& s : stmts) M.insert(s);
    auto witness = is_structural(M);
    REQUIRE(witness.has_value());
    CHECK(tight_model(*witness) == M);
  }
}

TEST_CASE("structurality at n=5") {
  std::mt19937 rng(64);
  for (int trial = 0; trial < 3; ++trial) {
    SetFunction w = random_submodular(5, rng);
    CIModel M = tight_model(w);
    auto witness = is_structural(M);
    REQUIRE(witness.has_value());
    CHECK(tight_model(*witness) == M);
  }
  CHECK(is_structural(CIModel(5)).has_value());
  CHECK(is_structural(full_model(5)).has_value());
}
