#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "ranktest/ci.hpp"
#include "ranktest/engine.hpp"
#include "ranktest/errors.hpp"
#include "ranktest/graph.hpp"
#include "ranktest/poset.hpp"
#include "ranktest/submodular.hpp"

namespace ranktest {

using nlohmann::json;

// All JSON is 1-based on the ground set; rationals travel as "p/q" strings.

inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a + 1, b + 1});
  return json{{"n", g.n}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
  Graph g(j.at("n").get<int>());
  for (const auto& e : j.at("edges"))
    g.add_edge(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
  return g;
}

inline json family_to_json(const SetFamily& F) {
  json members = json::array();
  for (Subset K : F.members) {
    json elems = json::array();
    for (int e : set_elements(K)) elems.push_back(e + 1);
    members.push_back(elems);
  }
  return json{{"n", F.n}, {"members", members}};
}

inline SetFamily family_from_json(const json& j) {
  int n = j.at("n").get<int>();
  std::vector<Subset> members;
  for (const auto& m : j.at("members"))
    members.push_back(set_from_elements(m.get<std::vector<int>>(), n));
  return SetFamily(n, std::move(members));
}

inline json function_to_json(const SetFunction& w) {
  json values = json::object();
  for (Subset I = 0; I < (Subset{1} << w.size()); ++I)
    values[set_to_string(I)] = rational_to_string(w(I));
  return json{{"n", w.size()}, {"values", values}};
}

inline SetFunction function_from_json(const json& j) {
  int n = j.at("n").get<int>();
  std::vector<Rational> v(std::size_t{1} << n);
  const json& values = j.at("values");
  for (Subset I = 0; I < (Subset{1} << n); ++I) {
    std::string key = set_to_string(I);
    if (!values.contains(key))
      throw InvalidSpec("set function is missing a value for " + key);
    const json& cell = values.at(key);
    if (cell.is_string())
      v[I] = rational_from_string(cell.get<std::string>());
    else if (cell.is_number_integer())
      v[I] = Rational(cell.get<long>());
    else
      throw InvalidSpec("set function values must be integers or \"p/q\" strings");
  }
  return SetFunction(n, std::move(v));
}

inline json statement_to_json(const CIStatement& s) {
  json K = json::array();
  for (int e : set_elements(s.cond)) K.push_back(e + 1);
  return json{{"i", s.i + 1}, {"j", s.j + 1}, {"K", K}};
}

inline json model_to_json(const CIModel& M) {
  json stmts = json::array();
  for (const CIStatement& s : M.statements) stmts.push_back(statement_to_json(s));
  return json{{"n", M.n}, {"statements", stmts}};
}

inline CIModel model_from_json(const json& j) {
  CIModel M(j.at("n").get<int>());
  for (const auto& s : j.at("statements"))
    M.insert(CIStatement(
        s.at("i").get<int>() - 1, s.at("j").get<int>() - 1,
        set_from_elements(s.at("K").get<std::vector<int>>(), M.n)));
  return M;
}

inline json poset_to_json(const Poset& P) {
  json pairs = json::array();
  for (auto [a, b] : P.relation_pairs()) pairs.push_back({a + 1, b + 1});
  return json{{"n", P.size()}, {"pairs", pairs}};
}

inline Poset poset_from_json(const json& j) {
  int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : j.at("pairs"))
    pairs.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
  return Poset::from_pairs(n, pairs);
}

inline json lattice_to_json(const DistributiveLattice& L) {
  json nodes = json::array();
  for (Subset O : L.ideals) {
    json elems = json::array();
    for (int e : set_elements(O)) elems.push_back(e + 1);
    nodes.push_back(elems);
  }
  json covers = json::array();
  for (auto [a, b] : L.covers) covers.push_back({a, b});
  return json{{"node_count", L.ideals.size()},
              {"nodes", nodes},
              {"covers", covers},
              {"bottom", L.bottom()},
              {"top", L.top()}};
}

// Typed test description, the file-based half of the CLI's --test option.
inline RankTestSpec spec_from_json(const json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "updown") return RankTestSpec::updown(j.value("n", 0));
  if (type == "runs") return RankTestSpec::runs(j.value("n", 0));
  if (type == "sign") return RankTestSpec::sign(j.at("m").get<int>());
  if (type == "model") return RankTestSpec::from_model(model_from_json(j.at("model")));
  if (type == "function")
    return RankTestSpec::from_function(function_from_json(j.at("function")));
  if (type == "family")
    return RankTestSpec::from_family(family_from_json(j.at("family")));
  if (type == "graph") {
    const json& g = j.at("graph");
    Graph graph = g.is_string()
                      ? Graph::from_name(g.get<std::string>())
                            .value_or(Graph(1))
                      : graph_from_json(g);
    if (g.is_string() && !Graph::from_name(g.get<std::string>()))
      throw InvalidSpec("unknown graph name: " + g.get<std::string>());
    return RankTestSpec::from_graph(std::move(graph),
                                    j.value("variant", "graphical") == "tubing");
  }
  if (type == "posets") {
    int n = j.at("n").get<int>();
    std::vector<Poset> posets;
    for (const auto& p : j.at("posets")) {
      json withn = p;
      withn["n"] = n;
      posets.push_back(poset_from_json(withn));
    }
    return RankTestSpec::from_posets(std::move(posets));
  }
  throw InvalidSpec("unknown test type: " + type);
}

}  // namespace ranktest
