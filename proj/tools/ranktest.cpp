// Command-line front end: analyze data vectors against a rank test, export
// class lattices, run the censuses, check object properties, enumerate
// classes, and compute the submodular cone.
//
// Exit codes: 0 ok, 2 parse error, 3 spec invariant failure, 4 lattice cap
// exceeded, 5 census self-check mismatch.

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "ranktest/census.hpp"
#include "ranktest/engine.hpp"
#include "ranktest/json_io.hpp"
#include "ranktest/structural.hpp"

using namespace ranktest;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitSpec = 3;
constexpr int kExitLattice = 4;
constexpr int kExitCensus = 5;

struct GlobalOpts {
  int n_cap = kBruteForceBound;
  std::size_t lattice_cap = kLatticeCap;
  std::string format = "json";
  std::string tail = "strict";
  int jobs = 1;

  EngineOptions engine() const { return EngineOptions{n_cap, lattice_cap}; }
  TailRule tail_rule() const {
    return tail == "leq" ? TailRule::WithTies : TailRule::Strict;
  }
};

struct ParseFailure : Error {
  using Error::Error;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseFailure("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseFailure(path + ": " + e.what());
  }
  return j;
}

json set_as_array(Subset s) {
  json out = json::array();
  for (int e : set_elements(s)) out.push_back(e + 1);
  return out;
}

// --test forms: updown | runs | sign:<m> | graph:<name-or-json-path> |
// model:<path> | function:<path> | family:<path> | posets:<path> |
// spec:<path>. Builtins pick up n from the data when it is not known yet.
RankTestSpec parse_test_option(const std::string& text,
                               const std::string& variant, int n_hint) {
  auto payload = [&](const char* prefix) {
    return text.substr(std::string(prefix).size());
  };
  if (text == "updown") return RankTestSpec::updown(n_hint);
  if (text == "runs") return RankTestSpec::runs(n_hint);
  if (text.rfind("sign:", 0) == 0) {
    try {
      return RankTestSpec::sign(std::stoi(payload("sign:")));
    } catch (const std::exception&) {
      throw ParseFailure("bad sign test: " + text);
    }
  }
  if (text.rfind("graph:", 0) == 0) {
    std::string arg = payload("graph:");
    std::optional<Graph> named = Graph::from_name(arg);
    Graph g = named ? *named : graph_from_json(read_json_file(arg));
    return RankTestSpec::from_graph(std::move(g), variant == "tubing");
  }
  if (text.rfind("model:", 0) == 0)
    return RankTestSpec::from_model(
        model_from_json(read_json_file(payload("model:"))));
  if (text.rfind("function:", 0) == 0)
    return RankTestSpec::from_function(
        function_from_json(read_json_file(payload("function:"))));
  if (text.rfind("family:", 0) == 0)
    return RankTestSpec::from_family(
        family_from_json(read_json_file(payload("family:"))));
  if (text.rfind("posets:", 0) == 0) {
    json j = read_json_file(payload("posets:"));
    j["type"] = "posets";
    return spec_from_json(j);
  }
  if (text.rfind("spec:", 0) == 0)
    return spec_from_json(read_json_file(payload("spec:")));
  throw ParseFailure("unknown --test value: " + text);
}

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ParseFailure("not a number: '" + tok + "'");
    }
    while (used < tok.size() &&
           std::isspace(static_cast<unsigned char>(tok[used])))
      ++used;
    if (used != tok.size()) throw ParseFailure("not a number: '" + tok + "'");
    row.push_back(v);
  }
  if (row.empty()) throw ParseFailure("empty data row");
  return row;
}

struct DataRow {
  int line = 0;  // 1-based source line
  std::vector<double> values;
};

// One vector per CSV row; a non-numeric first line is treated as a header.
std::vector<DataRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseFailure("cannot open " + path);
  std::vector<DataRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty()) continue;
    try {
      rows.push_back(DataRow{lineno, parse_row(line)});
    } catch (const ParseFailure&) {
      if (lineno == 1 && rows.empty()) continue;  // header
      throw ParseFailure(path + ":" + std::to_string(lineno) + ": bad row");
    }
  }
  if (rows.empty()) throw ParseFailure(path + ": no data rows");
  return rows;
}

json result_json(const CompiledTest& test, const Permutation& p,
                 TailRule tail) {
  json out;
  out["signature"] = test.signature(p);
  out["class_size"] = test.class_size(p).get_str();
  try {
    out["p_value"] = rational_to_string(test.p_value(p, tail));
  } catch (const ClassEnumerationUnavailable&) {
    out["p_value"] = nullptr;
  }
  out["strategy"] = test.strategy();
  return out;
}

void print_results_table(std::ostream& os, const json& rows) {
  os << "row\tsignature\tclass_size\tp_value\tstrategy\n";
  for (const json& r : rows) {
    os << r.value("row", 0) << "\t";
    if (r.contains("error")) {
      os << "error: " << r["error"].get<std::string>() << "\n";
      continue;
    }
    os << r["signature"].get<std::string>() << "\t"
       << r["class_size"].get<std::string>() << "\t"
       << (r["p_value"].is_null() ? std::string("-")
                                  : r["p_value"].get<std::string>())
       << "\t" << r["strategy"].get<std::string>() << "\n";
  }
}

int run_analyze(const GlobalOpts& g, const std::string& test_opt,
                const std::string& variant, const std::string& data,
                const std::string& csv) {
  std::vector<DataRow> rows;
  if (!data.empty() && !csv.empty())
    throw ParseFailure("--data and --csv are mutually exclusive");
  if (!data.empty())
    rows.push_back(DataRow{1, parse_row(data)});
  else if (!csv.empty())
    rows = read_csv(csv);
  else
    throw ParseFailure("analyze needs --data or --csv");

  int n = static_cast<int>(rows.front().values.size());
  RankTestSpec spec = parse_test_option(test_opt, variant, n);
  if (spec.n == 0) spec.n = n;
  std::unique_ptr<CompiledTest> test = compile(spec, g.engine());

  const bool single = !data.empty();
  std::vector<json> cells(rows.size());
  auto work = [&](std::size_t t) {
    const DataRow& row = rows[t];
    json cell;
    cell["row"] = row.line;
    try {
      if (static_cast<int>(row.values.size()) != test->ground_set_size())
        throw InvalidSpec("row length differs from the test's ground set");
      Permutation p = Permutation::from_data(row.values);
      cell.update(result_json(*test, p, g.tail_rule()));
      cell["permutation"] = p.rank_string();
      cell["descent_word"] = p.descent_word();
    } catch (const Error& e) {
      cell["error"] = e.what();
    }
    cells[t] = std::move(cell);
  };
  if (g.jobs > 1 && rows.size() > 1) {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> futures;
    for (int j = 0; j < g.jobs; ++j)
      futures.push_back(std::async(std::launch::async, [&] {
        for (std::size_t t = next++; t < rows.size(); t = next++) work(t);
      }));
    for (auto& f : futures) f.get();
  } else {
    for (std::size_t t = 0; t < rows.size(); ++t) work(t);
  }

  json results = json::array();
  int failures = 0;
  for (json& cell : cells) {
    if (cell.contains("error")) ++failures;
    results.push_back(std::move(cell));
  }
  if (single && failures > 0) {
    std::cerr << "error: " << results[0]["error"].get<std::string>() << "\n";
    return kExitParse;
  }
  if (g.format == "table")
    print_results_table(std::cout, results);
  else
    std::cout << results.dump(2) << "\n";
  return failures == static_cast<int>(rows.size()) ? kExitParse : 0;
}

int run_lattice(const GlobalOpts& g, const std::string& test_opt,
                const std::string& variant, const std::string& data,
                const std::string& output) {
  DataRow row{1, parse_row(data)};
  RankTestSpec spec = parse_test_option(test_opt, variant,
                                        static_cast<int>(row.values.size()));
  if (spec.n == 0) spec.n = static_cast<int>(row.values.size());
  std::unique_ptr<CompiledTest> test = compile(spec, g.engine());
  Permutation p = Permutation::from_data(row.values);
  std::optional<Poset> P = test->class_poset(p);
  if (!P) throw InvalidSpec("this test does not attach a poset to its classes");

  DistributiveLattice L;
  try {
    L = ideal_lattice(*P, g.lattice_cap);
  } catch (const LatticeTooLarge& e) {
    std::cerr << "error: " << e.what() << " (reached " << e.ideals_reached
              << " ideals)\n";
    return kExitLattice;
  }
  std::string text = g.format == "json" ? lattice_to_json(L).dump(2) + "\n"
                                        : export_lattice_text(L);
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw ParseFailure("cannot write " + output);
    out << text;
  }
  return 0;
}

int finish_census(const GlobalOpts& g, const json& report, bool self_check,
                  bool ok) {
  if (g.format == "table") {
    for (auto& [key, value] : report.items())
      std::cout << key << ": "
                << (value.is_string() ? value.get<std::string>() : value.dump())
                << "\n";
  } else {
    std::cout << report.dump(2) << "\n";
  }
  if (self_check && !ok) {
    std::cerr << "self-check FAILED\n";
    return kExitCensus;
  }
  if (self_check) std::cerr << "self-check ok\n";
  return 0;
}

int run_census(const GlobalOpts& g, const std::string& level, int n,
               bool self_check, bool n5_rays) {
  if (level == "partitions") {
    if (n != 3) throw UnsupportedN("the partition census enumerates S_3 only");
    PartitionCensus c = partition_census_s3();
    long mss = mss_census(3);
    json report{{"partitions", c.total},
                {"preconvex", c.preconvex},
                {"convex", c.convex},
                {"structural", c.structural},
                {"mss_models", mss},
                {"n", 3}};
    bool ok = c.total == expected::kPartitionsS3 &&
              c.preconvex == expected::kPreconvexS3 &&
              c.convex == expected::kConvexS3 &&
              c.structural == expected::kStructuralS3 &&
              mss == expected::kMssModelsN3;
    return finish_census(g, report, self_check, ok);
  }
  if (level == "mss") {
    long count = mss_census(n);
    json report{{"n", n}, {"mss_models", count}};
    bool ok = (n == 2 && count == 2) ||
              (n == 3 && count == expected::kMssModelsN3) ||
              (n == 4 && count == expected::kMssModelsN4);
    return finish_census(g, report, self_check, ok);
  }
  if (level == "cone") {
    if (n == 5 && !n5_rays)
      throw UnsupportedN(
          "the n=5 ray census runs long; pass --n5-rays to launch it");
    if (n == 5) {
      ConeDescription cone = elementary_facets(5);
      auto progress = [](int done, int total, std::size_t rays) {
        std::cerr << "facet " << done << "/" << total << ", rays so far "
                  << rays << "\n";
      };
      auto rays = extreme_rays(cone, progress);
      std::cerr << "counting orbits of " << rays.size() << " rays\n";
      std::vector<long> orbits = ray_orbit_sizes(cone, rays);
      json report{{"n", 5},
                  {"ray_count", rays.size()},
                  {"orbit_count", orbits.size()}};
      bool ok = static_cast<long>(rays.size()) == expected::kRaysN5 &&
                static_cast<long>(orbits.size()) == expected::kRayOrbitsN5;
      return finish_census(g, report, self_check, ok);
    }
    ConeCensus c = cone_census(n, true, true);
    json report{{"n", n},
                {"ray_count", c.rays.size()},
                {"face_count", c.face_count},
                {"f_vector", c.f_vector},
                {"orbit_count", c.orbit_sizes.size()}};
    bool ok = true;
    if (n == 3)
      ok = static_cast<long>(c.rays.size()) == expected::kRaysN3 &&
           c.face_count == expected::kFacesN3 &&
           c.f_vector == expected::kFVectorN3;
    if (n == 4)
      ok = static_cast<long>(c.rays.size()) == expected::kRaysN4 &&
           c.face_count == expected::kFacesN4 &&
           c.f_vector == expected::kFVectorN4;
    return finish_census(g, report, self_check, ok);
  }
  if (level == "gcatalan") {
    json rows = json::array();
    bool ok = true;
    for (int k = 3; k <= 7; ++k) {
      BigInt count = class_count(Graph::path(k));
      ok = ok && count == expected::kPathClassCounts[k - 3];
      rows.push_back(
          {{"shape", "path"}, {"n", k}, {"classes", count.get_str()}});
    }
    for (int k = 3; k <= 6; ++k) {
      BigInt count = class_count(Graph::cycle(k));
      ok = ok && count == expected::kCycleClassCounts[k - 3];
      rows.push_back(
          {{"shape", "cycle"}, {"n", k}, {"classes", count.get_str()}});
    }
    return finish_census(g, json{{"gcatalan", rows}}, self_check, ok);
  }
  throw ParseFailure("unknown census level: " + level);
}

int run_check(const std::string& type, const std::string& input) {
  json j = read_json_file(input);
  json verdict;
  if (type == "model") {
    CIModel M = model_from_json(j);
    auto violation = find_semigraphoid_violation(M);
    verdict["semigraphoid"] = !violation.has_value();
    if (violation) {
      verdict["violation"] = {{"i", violation->i + 1},
                              {"j", violation->j + 1},
                              {"l", violation->l + 1},
                              {"K", set_as_array(violation->K)},
                              {"missing", statement_to_json(violation->missing)}};
    } else if (M.n <= kStructuralBound) {
      auto witness = is_structural(M);
      verdict["structural"] = witness.has_value();
      if (witness) verdict["witness"] = function_to_json(*witness);
    } else {
      verdict["structural"] = nullptr;
    }
  } else if (type == "function") {
    SetFunction w = function_from_json(j);
    auto violation = find_submodular_violation(w);
    verdict["submodular"] = !violation.has_value();
    if (violation) {
      auto [i, jj, K] = *violation;
      verdict["violation"] = {
          {"i", i + 1},
          {"j", jj + 1},
          {"K", set_as_array(K)},
          {"defect", rational_to_string(elementary_defect(w, i, jj, K))}};
    } else {
      verdict["tight_model"] = model_to_json(tight_model(w));
    }
  } else if (type == "family") {
    SetFamily F = family_from_json(j);
    verdict["submodular"] = true;  // sums of meet indicators always are
    verdict["model"] = model_to_json(family_model(F));
  } else if (type == "tubing") {
    const json& gj = j.at("graph");
    std::optional<Graph> named =
        gj.is_string() ? Graph::from_name(gj.get<std::string>()) : std::nullopt;
    if (gj.is_string() && !named)
      throw ParseFailure("unknown graph name: " + gj.get<std::string>());
    Graph graph = named ? *named : graph_from_json(gj);
    std::vector<Subset> tubes;
    for (const auto& t : j.at("tubes"))
      tubes.push_back(set_from_elements(t.get<std::vector<int>>(), graph.n));
    bool ok = is_tubing(graph, tubes);
    verdict["tubing"] = ok;
    if (!ok) {
      for (std::size_t a = 0; a < tubes.size(); ++a) {
        if (!is_tube(graph, tubes[a]))
          verdict["violation"] = {{"member", set_to_string(tubes[a])}};
        for (std::size_t b = a + 1; b < tubes.size(); ++b)
          if (!tubes_compatible(graph, tubes[a], tubes[b]))
            verdict["violation"] = {
                {"pair", {set_to_string(tubes[a]), set_to_string(tubes[b])}}};
      }
    }
  } else {
    throw ParseFailure("unknown check type: " + type);
  }
  std::cout << verdict.dump(2) << "\n";
  return 0;
}

int run_enumerate(const GlobalOpts& g, const std::string& test_opt,
                  const std::string& variant, int n) {
  RankTestSpec spec = parse_test_option(test_opt, variant, n);
  if (spec.n == 0) {
    if (n == 0) throw ParseFailure("builtin tests need --n here");
    spec.n = n;
  }
  std::unique_ptr<CompiledTest> test = compile(spec, g.engine());
  json rows = json::array();
  for (const ClassSummary& c : test->enumerate_classes()) {
    json row{{"signature", c.token},
             {"class_size", c.size.get_str()},
             {"representative", c.representative.rank_string()}};
    if (c.poset) row["poset"] = poset_to_json(*c.poset);
    rows.push_back(std::move(row));
  }
  if (g.format == "table") {
    std::cout << "signature\tclass_size\trepresentative\n";
    for (const json& r : rows)
      std::cout << r["signature"].get<std::string>() << "\t"
                << r["class_size"].get<std::string>() << "\t"
                << r["representative"].get<std::string>() << "\n";
  } else {
    std::cout << rows.dump(2) << "\n";
  }
  return 0;
}

int run_cone(const GlobalOpts& g, int n, bool with_faces, bool with_orbits,
             bool allow_long) {
  if (n == 5 && !allow_long)
    throw UnsupportedN("pass --allow-long to run the n=5 double description");
  ConeDescription cone = elementary_facets(n);
  ConeProgress progress;
  if (n == 5)
    progress = [](int done, int total, std::size_t rays) {
      std::cerr << "facet " << done << "/" << total << ", rays so far " << rays
                << "\n";
    };
  auto rays = extreme_rays(cone, progress);
  json out{{"n", n}, {"dim", cone.dim}, {"ray_count", rays.size()}};
  json rj = json::array();
  for (const auto& r : rays) rj.push_back(r);
  out["rays"] = rj;
  json coords = json::array();
  for (Subset S : cone.coords) coords.push_back(set_to_string(S));
  out["coordinates"] = coords;
  if (with_faces && n <= 4) {
    FaceCensus census = face_lattice(cone);
    out["face_count"] = census.faces.size();
    out["f_vector"] = census.f_vector;
  }
  if (with_orbits) {
    std::vector<long> orbits = ray_orbit_sizes(cone, rays);
    out["orbit_count"] = orbits.size();
    out["orbit_sizes"] = orbits;
  }
  if (g.format == "table") {
    std::cout << "n " << n << ", dimension " << cone.dim << ", rays "
              << rays.size() << "\n";
    if (out.contains("face_count")) {
      std::cout << "faces " << out["face_count"] << ", f-vector";
      for (const auto& v : out["f_vector"]) std::cout << " " << v;
      std::cout << "\n";
    }
    if (out.contains("orbit_count"))
      std::cout << "orbits " << out["orbit_count"] << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank tests on permutations"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--n-cap", g.n_cap, "bound for brute-force enumeration");
  app.add_option("--lattice-cap", g.lattice_cap, "ideal-count cap for lattices");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_option("--tail", g.tail, "p-value tail rule")
      ->check(CLI::IsMember({"strict", "leq"}));
  app.add_option("--jobs", g.jobs, "worker threads for batch analysis")
      ->check(CLI::PositiveNumber);

  std::string test_opt, variant = "graphical", data, csv, output, input;
  std::string level = "partitions", check_type = "model";
  int n = 0;
  bool self_check = false, n5_rays = false, with_orbits = false,
       allow_long = false;
  bool with_faces = true;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "signatures, class sizes and p-values for data rows");
  analyze->add_option("--test", test_opt, "test description")->required();
  analyze->add_option("--variant", variant, "graphical or tubing")
      ->check(CLI::IsMember({"graphical", "tubing"}));
  analyze->add_option("--data", data, "one comma-separated data vector");
  analyze->add_option("--csv", csv, "CSV file, one data vector per row");

  CLI::App* lattice = app.add_subcommand(
      "lattice", "order-ideal lattice of the class of a data vector");
  lattice->add_option("--test", test_opt)->required();
  lattice->add_option("--variant", variant)
      ->check(CLI::IsMember({"graphical", "tubing"}));
  lattice->add_option("--data", data)->required();
  lattice->add_option("--output", output, "file path, or - for stdout");

  CLI::App* census =
      app.add_subcommand("census", "reproduce the exact class counts");
  census->add_option("--level", level)
      ->check(CLI::IsMember({"partitions", "mss", "cone", "gcatalan"}));
  census->add_option("--n", n, "ground-set size");
  census->add_flag("--self-check", self_check, "exit 5 on any count mismatch");
  census->add_flag("--n5-rays", n5_rays, "run the long n=5 ray census");

  CLI::App* check = app.add_subcommand(
      "check", "verdicts for models, functions, families, tubings");
  check->add_option("--type", check_type)
      ->check(CLI::IsMember({"model", "function", "family", "tubing"}));
  check->add_option("--input", input, "JSON input file")->required();

  CLI::App* enumerate =
      app.add_subcommand("enumerate", "list all classes of a test");
  enumerate->add_option("--test", test_opt)->required();
  enumerate->add_option("--variant", variant)
      ->check(CLI::IsMember({"graphical", "tubing"}));
  enumerate->add_option("--n", n, "ground-set size for builtins");

  CLI::App* cone = app.add_subcommand(
      "cone", "extreme rays and faces of the submodular cone");
  cone->add_option("--n", n)->required();
  cone->add_flag("--faces,!--no-faces", with_faces, "include the face census");
  cone->add_flag("--orbits", with_orbits, "include ray orbit counts");
  cone->add_flag("--allow-long", allow_long, "permit the n=5 run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (analyze->parsed()) return run_analyze(g, test_opt, variant, data, csv);
    if (lattice->parsed())
      return run_lattice(g, test_opt, variant, data, output);
    if (census->parsed()) return run_census(g, level, n, self_check, n5_rays);
    if (check->parsed()) return run_check(check_type, input);
    if (enumerate->parsed()) return run_enumerate(g, test_opt, variant, n);
    if (cone->parsed())
      return run_cone(g, n, with_faces, with_orbits, allow_long);
  } catch (const ParseFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DuplicateEntries& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const LatticeTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLattice;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpec;
  }
  return 0;
}
