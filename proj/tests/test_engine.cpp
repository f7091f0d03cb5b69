#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "ranktest/engine.hpp"
#include "ranktest/json_io.hpp"

using namespace ranktest;

namespace {

Permutation perm(std::vector<int> ranks_1based) {
  for (int& r : ranks_1based) --r;
  return Permutation(std::move(ranks_1based));
}

Permutation word(const char* s) {
  std::vector<int> d;
  for (; *s; ++s) d.push_back(*s - '1');
  return Permutation::from_descent(d);
}

// Brute-force agreement of the compiled strategy with preimage counting.
void check_strategy(const CompiledTest& test) {
  int n = test.ground_set_size();
  std::map<std::string, long> counts;
  for_each_permutation(n, [&](const Permutation& p) {
    ++counts[test.signature(p)];
  });
  for_each_permutation(n, [&](const Permutation& p) {
    CHECK(test.class_size(p) == counts[test.signature(p)]);
  });
  BigInt total = 0;
  for (const ClassSummary& c : test.enumerate_classes()) {
    total += c.size;
    CHECK(test.signature(c.representative) == c.token);
    CHECK(test.class_size(c.representative) == c.size);
  }
  CHECK(total == factorial(n));
  CHECK(test.enumerate_classes().size() == counts.size());
}

Rational rat(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

int sign_test_statistic(const Permutation& p, int m) {
  int positives = 0;
  for (int i = 0; i < m; ++i)
    if (p.rank(i) > p.rank(m + i)) ++positives;
  return positives;
}

}  // namespace

TEST_CASE("up-down test") {
  auto t3 = compile(RankTestSpec::updown(3));
  CHECK(t3->enumerate_classes().size() == 4);
  CHECK(t3->strategy() == "descent");

  auto t4 = compile(RankTestSpec::updown(4));
  CHECK(t4->signature(word("3142")) == "(-,+,-)");
  CHECK(t4->class_size(word("3142")) == 5);
  std::multiset<long> sizes;
  for (const ClassSummary& c : t4->enumerate_classes())
    sizes.insert(c.size.get_si());
  CHECK(sizes == std::multiset<long>{1, 3, 5, 3, 3, 5, 3, 1});

  // representative and fence poset round out each class
  for (const ClassSummary& c : t4->enumerate_classes()) {
    CHECK(t4->signature(c.representative) == c.token);
    REQUIRE(c.poset.has_value());
    CHECK(count_linear_extensions(*c.poset) == c.size);
  }
}

TEST_CASE("p-values") {
  auto t4 = compile(RankTestSpec::updown(4));
  CHECK(t4->p_value(word("3142")) == rat(14, 24));
  CHECK(t4->p_value(Permutation::identity(4)) == 0);
  CHECK(t4->p_value(word("3142"), TailRule::WithTies) == 1);

  auto singletons = compile(RankTestSpec::from_model(CIModel(3)));
  for_each_permutation(3, [&](const Permutation& p) {
    CHECK(singletons->class_size(p) == 1);
    CHECK(singletons->p_value(p) == 0);
  });

  // monotone in class size
  std::vector<std::pair<BigInt, Rational>> rows;
  for_each_permutation(4, [&](const Permutation& p) {
    rows.emplace_back(t4->class_size(p), t4->p_value(p));
  });
  for (const auto& [sa, pa] : rows)
    for (const auto& [sb, pb] : rows)
      if (sa <= sb) CHECK(pa <= pb);
}

TEST_CASE("runs test") {
  CHECK(runs_statistic(Permutation::identity(5)) == 1);
  CHECK(runs_statistic(word("3412"))== 3);  // pattern (-,+,-)
  CHECK(runs_statistic(perm({2, 1, 3, 5, 4})) == 3);
  CHECK(runs_statistic(perm({1, 3, 2, 5, 4})) == 4);

  auto runs5 = compile(RankTestSpec::runs(5));
  check_strategy(*runs5);

  // the runs test coarsens the up-down test
  auto ud5 = compile(RankTestSpec::updown(5));
  std::map<std::string, int> run_of_pattern;
  for_each_permutation(5, [&](const Permutation& p) {
    std::string pattern = ud5->signature(p);
    int r = runs_statistic(p);
    auto [it, fresh] = run_of_pattern.emplace(pattern, r);
    CHECK(it->second == r);
  });
}

TEST_CASE("sign test") {
  auto sign2 = compile(RankTestSpec::sign(2));
  CHECK(sign2->ground_set_size() == 4);
  CHECK(sign2->signature(perm({1, 3, 2, 4})) == "mss:(0,0,1,1)");
  auto classes = sign2->enumerate_classes();
  CHECK(classes.size() == 4);
  for (const ClassSummary& c : classes) CHECK(c.size == 6);
  for_each_permutation(4, [&](const Permutation& p) {
    CHECK(sign2->p_value(p) == 0);  // all classes tie
  });

  // the positive-difference count is constant on sign-test classes
  std::map<std::string, int> stat_of_class;
  for_each_permutation(4, [&](const Permutation& p) {
    auto [it, fresh] =
        stat_of_class.emplace(sign2->signature(p), sign_test_statistic(p, 2));
    CHECK(it->second == sign_test_statistic(p, 2));
  });
}

TEST_CASE("graph tests") {
  auto tubing4 = compile(RankTestSpec::from_graph(Graph::path(4), true));
  CHECK(tubing4->enumerate_classes().size() == 14);
  CHECK(tubing4->strategy() == "gtree");
  check_strategy(*tubing4);

  auto graphical3 = compile(RankTestSpec::from_graph(Graph::path(3), false));
  CHECK(graphical3->signature(perm({1, 3, 2})) == "gtree:2(1,3)");
  CHECK(graphical3->class_size(perm({1, 3, 2})) == 2);

  auto tubing3 = compile(RankTestSpec::from_graph(Graph::path(3), true));
  CHECK(tubing3->signature(perm({2, 1, 3})) == "tubing:2(1,3)");
  CHECK(tubing3->class_size(perm({2, 1, 3})) == 2);
  CHECK(tubing3->class_size(perm({3, 1, 2})) == 2);
  CHECK(tubing3->class_size(perm({1, 3, 2})) == 1);

  // class posets generate the classes on both variants
  for (auto* test : {tubing4.get(), graphical3.get(), tubing3.get()}) {
    for (const ClassSummary& c : test->enumerate_classes()) {
      REQUIRE(c.poset.has_value());
      CHECK(count_linear_extensions(*c.poset) == c.size);
      CHECK(test->signature(c.representative) == c.token);
    }
  }
}

TEST_CASE("poset-list tests") {
  // the eight fences of the n=4 up-down test, fed as explicit posets
  auto ud4 = compile(RankTestSpec::updown(4));
  std::vector<Poset> fences;
  for (const ClassSummary& c : ud4->enumerate_classes())
    fences.push_back(*c.poset);
  auto t = compile(RankTestSpec::from_posets(fences));
  CHECK(t->strategy() == "lattice");
  check_strategy(*t);
  for_each_permutation(4, [&](const Permutation& p) {
    CHECK(t->class_size(p) == ud4->class_size(p));
    CHECK(t->p_value(p) == ud4->p_value(p));
  });

  // overlapping extension sets must be rejected
  std::vector<Poset> overlap{chain_poset(3), Poset(3)};
  CHECK_THROWS_AS(compile(RankTestSpec::from_posets(overlap)), CoverageFailure);
  // a single chain misses everything else
  std::vector<Poset> missing{chain_poset(3)};
  CHECK_THROWS_AS(compile(RankTestSpec::from_posets(missing)), CoverageFailure);
}

TEST_CASE("model and function tests") {
  CIModel ud3(3);
  ud3.insert(CIStatement(0, 2, 0));
  ud3.insert(CIStatement(0, 2, with_element(0u, 1)));
  auto t = compile(RankTestSpec::from_model(ud3));
  CHECK(t->enumerate_classes().size() == 4);
  check_strategy(*t);

  CIModel bad(3);
  bad.insert(CIStatement(0, 1, with_element(0u, 2)));
  bad.insert(CIStatement(0, 2, 0));
  CHECK_THROWS_AS(compile(RankTestSpec::from_model(bad)), NotASemigraphoid);

  auto modular = compile(RankTestSpec::from_function(SetFunction::modular_rank(3)));
  CHECK(modular->enumerate_classes().size() == 1);

  auto strict = compile(
      RankTestSpec::from_function(SetFunction::strictly_submodular(4)));
  CHECK(strict->enumerate_classes().size() == 24);
  check_strategy(*strict);

  std::vector<Rational> sq(16);
  for (Subset I = 0; I < 16; ++I) sq[I] = set_size(I) * set_size(I);
  CHECK_THROWS_AS(compile(RankTestSpec::from_function(SetFunction(4, sq))),
                  NotSubmodular);
}

TEST_CASE("family test matches the function test") {
  SetFamily F = connected_family(Graph::path(4));
  auto by_family = compile(RankTestSpec::from_family(F));
  auto by_function = compile(RankTestSpec::from_function(family_function(F)));
  auto by_graph = compile(RankTestSpec::from_graph(Graph::path(4), false));
  check_strategy(*by_family);
  for_each_permutation(4, [&](const Permutation& p) {
    CHECK(by_family->class_size(p) == by_function->class_size(p));
    CHECK(by_family->class_size(p) == by_graph->class_size(p));
  });
}

TEST_CASE("strategy agreement across spec kinds") {
  check_strategy(*compile(RankTestSpec::updown(5)));
  check_strategy(*compile(RankTestSpec::updown(6)));
  check_strategy(*compile(RankTestSpec::runs(6)));
  check_strategy(*compile(RankTestSpec::sign(2)));
  check_strategy(*compile(RankTestSpec::sign(3)));
  check_strategy(*compile(RankTestSpec::from_graph(Graph::cycle(4), true)));
  check_strategy(*compile(RankTestSpec::from_graph(Graph::cycle(4), false)));
  check_strategy(*compile(RankTestSpec::from_graph(Graph::path(6), true)));
  check_strategy(*compile(RankTestSpec::from_graph(Graph::cycle(6), false)));

  std::mt19937 rng(1234);
  std::vector<Subset> members;
  for (Subset S = 1; S < 32; ++S)
    if (rng() % 3 == 0) members.push_back(S);
  check_strategy(*compile(RankTestSpec::from_family(SetFamily(5, members))));
}

TEST_CASE("bounds and degraded modes") {
  // signatures and class sizes still work past the enumeration bound
  auto big = compile(RankTestSpec::from_graph(Graph::path(9), true));
  Permutation p = Permutation::from_data({9, 1, 8, 2, 7, 3, 6, 4, 5});
  CHECK(big->class_size(p) == 384);
  CHECK_THROWS_AS(big->enumerate_classes(), GroundSetTooLarge);
  CHECK_THROWS_AS(big->p_value(p), ClassEnumerationUnavailable);

  // scan-backed tests refuse to compile past the bound
  std::vector<Subset> members{1};
  CHECK_THROWS_AS(compile(RankTestSpec::from_family(SetFamily(9, members))),
                  GroundSetTooLarge);

  // general graphs past the bound cannot be counted
  Graph g = Graph::path(9);
  g.add_edge(0, 4);
  CHECK_THROWS_AS(class_count(g), GroundSetTooLarge);

  CHECK_THROWS_AS(
      RankTestPartition::from_classes(11, {{Permutation::identity(11)}}),
      GroundSetTooLarge);
}

TEST_CASE("statement display") {
  CIStatement s(0, 2, with_element(0u, 1));
  CHECK(s.display() == "1⊥3|{2}");
  CHECK(CIStatement(2, 0, 0).display() == "1⊥3|{}");
}

TEST_CASE("lattice json export") {
  Poset fence = Poset::from_pairs(4, {{1, 0}, {1, 2}, {3, 2}});
  json j = lattice_to_json(ideal_lattice(fence));
  CHECK(j["node_count"] == 8);
  CHECK(j["covers"].size() == 10);
  CHECK(j["bottom"] == 0);
  CHECK(j["top"] == 7);
  CHECK(j["nodes"][0] == json::array());
  CHECK(j["nodes"][7] == json({1, 2, 3, 4}));
}

TEST_CASE("spec json round trips") {
  json j = {{"type", "graph"}, {"graph", "path4"}, {"variant", "tubing"}};
  RankTestSpec spec = spec_from_json(j);
  CHECK(spec.kind == RankTestSpec::Kind::Graph);
  CHECK(spec.tubing_variant);
  CHECK(compile(spec)->enumerate_classes().size() == 14);

  json jf = {{"type", "family"},
             {"family", {{"n", 4}, {"members", {{1, 3}, {2, 4}}}}}};
  CHECK(compile(spec_from_json(jf))->enumerate_classes().size() == 4);

  CIModel ud3(3);
  ud3.insert(CIStatement(0, 2, 0));
  ud3.insert(CIStatement(0, 2, with_element(0u, 1)));
  json jm = {{"type", "model"}, {"model", model_to_json(ud3)}};
  CHECK(model_from_json(model_to_json(ud3)) == ud3);
  CHECK(compile(spec_from_json(jm))->enumerate_classes().size() == 4);

  SetFunction w = family_function(connected_family(Graph::path(3)));
  CHECK(function_from_json(function_to_json(w)) == w);

  Poset fence = Poset::from_pairs(4, {{1, 0}, {1, 2}, {3, 2}});
  CHECK(poset_from_json(poset_to_json(fence)) == fence);

  Graph g = Graph::cycle(5);
  Graph back = graph_from_json(graph_to_json(g));
  CHECK(back.edges() == g.edges());
}
